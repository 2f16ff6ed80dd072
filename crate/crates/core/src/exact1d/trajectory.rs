//! Wall trajectories of a 1+1-dimensional cavity.

use crate::error::{Error, Result};
use crate::signal::Waveform;

/// One wall: `x(t) = rest + motion(t)`.
#[derive(Debug, Clone)]
pub struct Wall {
    rest: f64,
    motion: Waveform,
}

impl Wall {
    pub fn new(rest: f64, motion: Waveform) -> Self {
        Self { rest, motion }
    }

    pub fn rest(&self) -> f64 {
        self.rest
    }

    pub fn motion(&self) -> &Waveform {
        &self.motion
    }

    pub fn position(&self, t: f64) -> f64 {
        self.rest + self.motion.value(t)
    }

    pub fn velocity(&self, t: f64) -> f64 {
        self.motion.derivative(t)
    }
}

/// Positions and velocities of both walls at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WallState {
    pub x_minus: f64,
    pub x_plus: f64,
    /// `dx₋/dt` (not the outward normal velocity, which is `−v_minus`).
    pub v_minus: f64,
    /// `dx₊/dt`.
    pub v_plus: f64,
}

impl WallState {
    /// A static interval `[−L/2, L/2]`.
    pub fn at_rest(length: f64) -> Self {
        Self { x_minus: -0.5 * length, x_plus: 0.5 * length, v_minus: 0.0, v_plus: 0.0 }
    }

    pub fn length(&self) -> f64 {
        self.x_plus - self.x_minus
    }

    /// `true` if both walls are at rest.
    pub fn is_static(&self) -> bool {
        self.v_minus == 0.0 && self.v_plus == 0.0
    }

    /// Both velocities multiplied by `lambda` (used for continuation from
    /// the static problem).
    pub fn with_scaled_velocities(&self, lambda: f64) -> Self {
        Self { v_minus: lambda * self.v_minus, v_plus: lambda * self.v_plus, ..*self }
    }

    /// Checks ordering, finiteness and timelike motion.
    pub fn validate(&self, t: f64) -> Result<()> {
        let vals = [self.x_minus, self.x_plus, self.v_minus, self.v_plus];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidTrajectory { t, reason: "non-finite wall position or velocity".into() });
        }
        if self.x_plus <= self.x_minus {
            return Err(Error::InvalidTrajectory {
                t,
                reason: format!("walls crossed: x₋ = {} ≥ x₊ = {}", self.x_minus, self.x_plus),
            });
        }
        if self.v_minus.abs() >= 1.0 || self.v_plus.abs() >= 1.0 {
            return Err(Error::InvalidTrajectory {
                t,
                reason: format!("wall speed reaches light speed (v₋ = {}, v₊ = {})", self.v_minus, self.v_plus),
            });
        }
        Ok(())
    }
}

/// Positions `x₋(t) < x₊(t)` of the two walls of a 1+1-dimensional cavity.
#[derive(Debug, Clone)]
pub struct BoundaryTrajectory {
    minus: Wall,
    plus: Wall,
}

impl BoundaryTrajectory {
    /// Walls at `rest_minus + motion_minus(t)` and `rest_plus + motion_plus(t)`.
    pub fn new(minus: Wall, plus: Wall) -> Result<Self> {
        if !(minus.rest.is_finite() && plus.rest.is_finite() && plus.rest > minus.rest) {
            return Err(Error::InvalidArgument(format!(
                "rest positions must satisfy x₋ < x₊, got {} and {}",
                minus.rest, plus.rest
            )));
        }
        Ok(Self { minus, plus })
    }

    /// Walls at rest at `±L/2`.
    pub fn static_interval(length: f64) -> Result<Self> {
        Self::new(Wall::new(-0.5 * length, Waveform::zero()), Wall::new(0.5 * length, Waveform::zero()))
    }

    pub fn minus(&self) -> &Wall {
        &self.minus
    }

    pub fn plus(&self) -> &Wall {
        &self.plus
    }

    /// Rest length `x₊ − x₋` of the unperturbed walls.
    pub fn rest_length(&self) -> f64 {
        self.plus.rest - self.minus.rest
    }

    /// Positions and velocities at `t`, validated.
    pub fn state(&self, t: f64) -> Result<WallState> {
        let s = WallState {
            x_minus: self.minus.position(t),
            x_plus: self.plus.position(t),
            v_minus: self.minus.velocity(t),
            v_plus: self.plus.velocity(t),
        };
        s.validate(t)?;
        Ok(s)
    }
}
