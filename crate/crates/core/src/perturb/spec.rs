//! First-order description of a metric and/or boundary perturbation.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::signal::Waveform;
use crate::staticmodes::Face;

/// Spatial profile `g(x⃗)` of a separable term `w(t) g(x⃗)`.
pub type SpatialFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Separable multiplicative potential `p(t, x⃗) = w(t) g(x⃗)` in `ΔÔ`.
#[derive(Clone)]
pub struct PotentialTerm {
    pub waveform: Waveform,
    pub profile: SpatialFn,
}

impl fmt::Debug for PotentialTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PotentialTerm").field("waveform", &self.waveform).finish_non_exhaustive()
    }
}

/// Outward displacement of one face, `Δx(t, x⃗) = w(t) g(x⃗)`.
///
/// The profile defaults to `g ≡ 1` (a rigidly translating face).
#[derive(Clone)]
pub struct FaceDisplacement {
    pub face: Face,
    pub waveform: Waveform,
    pub profile: Option<SpatialFn>,
}

impl fmt::Debug for FaceDisplacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FaceDisplacement")
            .field("face", &self.face)
            .field("waveform", &self.waveform)
            .field("uniform", &self.profile.is_none())
            .finish()
    }
}

/// The first-order data `ε, ΔÔ, Δr, ΔR̄, Δx` of a perturbation.
///
/// `ΔÔ = Σ_i c_i(t) ∂_i² + Σ_k w_k(t) g_k(x⃗)`; `Δx` is given per boundary face
/// and measured along the outward normal.  The first-order change of the
/// positivity shift `F` is always zero.
#[derive(Debug, Clone)]
pub struct PerturbationSpec {
    epsilon: f64,
    second_derivative: Vec<(usize, Waveform)>,
    potentials: Vec<PotentialTerm>,
    delta_r: Waveform,
    delta_r_bar: Waveform,
    displacements: Vec<FaceDisplacement>,
    base_frequency: Option<f64>,
}

impl PerturbationSpec {
    /// An empty perturbation of amplitude `ε > 0`.
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::InvalidArgument(format!("ε must be positive and finite, got {epsilon}")));
        }
        Ok(Self {
            epsilon,
            second_derivative: Vec::new(),
            potentials: Vec::new(),
            delta_r: Waveform::zero(),
            delta_r_bar: Waveform::zero(),
            displacements: Vec::new(),
            base_frequency: None,
        })
    }

    /// Adds `c(t) ∂_axis²` to `ΔÔ`.
    pub fn with_second_derivative(mut self, axis: usize, coefficient: Waveform) -> Self {
        self.second_derivative.push((axis, coefficient));
        self
    }

    /// Adds `w(t) g(x⃗)` to `ΔÔ`.
    pub fn with_potential(
        mut self,
        waveform: Waveform,
        profile: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.potentials.push(PotentialTerm { waveform, profile: Arc::new(profile) });
        self
    }

    /// Sets `Δr(t)`.
    pub fn with_delta_r(mut self, delta_r: Waveform) -> Self {
        self.delta_r = delta_r;
        self
    }

    /// Sets `ΔR̄(t)`.
    pub fn with_delta_r_bar(mut self, delta_r_bar: Waveform) -> Self {
        self.delta_r_bar = delta_r_bar;
        self
    }

    /// Adds a rigid outward displacement `Δx = w(t)` of a face.
    pub fn with_displacement(mut self, face: Face, waveform: Waveform) -> Self {
        self.displacements.push(FaceDisplacement { face, waveform, profile: None });
        self
    }

    /// Adds a non-uniform outward displacement `Δx = w(t) g(x⃗)` of a face.
    pub fn with_displacement_profile(
        mut self,
        face: Face,
        waveform: Waveform,
        profile: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.displacements.push(FaceDisplacement { face, waveform, profile: Some(Arc::new(profile)) });
        self
    }

    /// Declares the perturbation monochromatic with frequency `Ω > 0`.
    pub fn with_base_frequency(mut self, omega: f64) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::InvalidArgument(format!("base frequency must be positive, got {omega}")));
        }
        self.base_frequency = Some(omega);
        Ok(self)
    }

    /// Rejects a first-order change of `F`: it never contributes to the
    /// resonances and is fixed to zero.  A zero waveform is accepted.
    pub fn with_delta_f(self, delta_f: Waveform) -> Result<Self> {
        if delta_f.is_zero() {
            Ok(self)
        } else {
            Err(Error::UnsupportedSpec(
                "a first-order change of F does not contribute to resonances and is fixed to zero".into(),
            ))
        }
    }

    /// Sum of two perturbations with the same `ε` (terms are concatenated).
    pub fn combined(&self, other: &PerturbationSpec) -> Result<Self> {
        if (self.epsilon - other.epsilon).abs() > 1e-15 * self.epsilon {
            return Err(Error::InvalidArgument("combined perturbations must share ε".into()));
        }
        let add = |a: &Waveform, b: &Waveform| -> Result<Waveform> {
            match (a, b) {
                (x, y) if y.is_zero() => Ok(x.clone()),
                (x, y) if x.is_zero() => Ok(y.clone()),
                (Waveform::Harmonic(x), Waveform::Harmonic(y)) => Ok(Waveform::Harmonic(x.try_add(y)?)),
                (x, y) => {
                    let (x, y) = (x.clone(), y.clone());
                    Ok(Waveform::custom("sum", 1e-5, move |t| x.value(t) + y.value(t)))
                }
            }
        };
        let mut out = self.clone();
        out.second_derivative.extend(other.second_derivative.iter().cloned());
        out.potentials.extend(other.potentials.iter().cloned());
        out.delta_r = add(&self.delta_r, &other.delta_r)?;
        out.delta_r_bar = add(&self.delta_r_bar, &other.delta_r_bar)?;
        out.displacements.extend(other.displacements.iter().cloned());
        out.base_frequency = match (self.base_frequency, other.base_frequency) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        };
        Ok(out)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn second_derivative_terms(&self) -> &[(usize, Waveform)] {
        &self.second_derivative
    }

    pub fn potentials(&self) -> &[PotentialTerm] {
        &self.potentials
    }

    pub fn delta_r(&self) -> &Waveform {
        &self.delta_r
    }

    pub fn delta_r_bar(&self) -> &Waveform {
        &self.delta_r_bar
    }

    pub fn displacements(&self) -> &[FaceDisplacement] {
        &self.displacements
    }

    pub fn base_frequency(&self) -> Option<f64> {
        self.base_frequency
    }

    /// Outward displacement of `face` at time `t` and face point `x⃗`.
    pub fn displacement(&self, face: Face, t: f64, point: &[f64]) -> f64 {
        self.displacements
            .iter()
            .filter(|d| d.face == face)
            .map(|d| d.waveform.value(t) * d.profile.as_ref().map_or(1.0, |g| g(point)))
            .sum()
    }

    /// `true` if every term vanishes identically.
    pub fn is_null(&self) -> bool {
        self.second_derivative.iter().all(|(_, w)| w.is_zero())
            && self.potentials.iter().all(|p| p.waveform.is_zero())
            && self.delta_r.is_zero()
            && self.delta_r_bar.is_zero()
            && self.displacements.iter().all(|d| d.waveform.is_zero())
    }
}
