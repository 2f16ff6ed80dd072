//! Orthonormalised static eigenmodes of the unperturbed cavity.
//!
//! Two families are provided: the interval `[−L/2, L/2]` and the rectangular
//! box `[−Lx/2, Lx/2] × [−Ly/2, Ly/2] × [−Lz/2, Lz/2]`, both centred at the
//! origin with flat metric.  Modes are products of per-axis sines (Dirichlet)
//! or cosines (Neumann) normalised so that `∫ Ψ_n Ψ_m dV = δ_nm / (2ω_n)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{BoundaryCondition, FieldParams};
use crate::quadrature::{GaussLegendre, DEFAULT_POINTS};

/// Cavity shape, centred at the coordinate origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CavityGeometry {
    /// `[−L/2, L/2]`.
    Interval { length: f64 },
    /// `[−Lx/2, Lx/2] × [−Ly/2, Ly/2] × [−Lz/2, Lz/2]`.
    Box { lx: f64, ly: f64, lz: f64 },
}

impl CavityGeometry {
    /// Validates that every length is finite and positive.
    pub fn validate(&self) -> Result<()> {
        if self.lengths().iter().all(|&l| l.is_finite() && l > 0.0) {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("cavity lengths must be positive, got {:?}", self.lengths())))
        }
    }

    /// Side lengths per axis.
    pub fn lengths(&self) -> Vec<f64> {
        match *self {
            CavityGeometry::Interval { length } => vec![length],
            CavityGeometry::Box { lx, ly, lz } => vec![lx, ly, lz],
        }
    }

    /// Number of spatial dimensions.
    pub fn dim(&self) -> usize {
        match self {
            CavityGeometry::Interval { .. } => 1,
            CavityGeometry::Box { .. } => 3,
        }
    }

    /// Volume (length in one dimension).
    pub fn volume(&self) -> f64 {
        self.lengths().iter().product()
    }

    /// Boundary faces (two per axis).
    pub fn faces(&self) -> Vec<Face> {
        (0..self.dim())
            .flat_map(|axis| [Face { axis, side: Side::Minus }, Face { axis, side: Side::Plus }])
            .collect()
    }

    /// `true` if `point` lies in the closed cavity (relative slack 1e-12).
    pub fn contains(&self, point: &[f64]) -> bool {
        point.len() == self.dim()
            && self
                .lengths()
                .iter()
                .zip(point)
                .all(|(&l, &x)| x.abs() <= 0.5 * l * (1.0 + 1e-12))
    }
}

/// Which end of an axis a face sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Minus,
    Plus,
}

impl Side {
    /// Sign of the outward normal along the axis.
    pub fn sign(self) -> f64 {
        match self {
            Side::Minus => -1.0,
            Side::Plus => 1.0,
        }
    }
}

/// A boundary face `x_axis = ±L_axis/2` with outward normal `±e_axis`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Face {
    pub axis: usize,
    pub side: Side,
}

/// Per-axis profile of a separable mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityForm {
    /// `sin(k(x + L/2))`.
    Sine,
    /// `cos(k(x + L/2))`.
    Cosine,
}

/// One static eigenmode `Ψ⁰ = N Π_i f_i(k_i (x_i + L_i/2))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StaticMode {
    index: Vec<usize>,
    wavenumbers: Vec<f64>,
    lengths: Vec<f64>,
    frequency: f64,
    normalization: f64,
    parity_form: ParityForm,
}

impl StaticMode {
    fn new(index: Vec<usize>, lengths: &[f64], mass: f64, bc: BoundaryCondition) -> Self {
        let wavenumbers: Vec<f64> = index
            .iter()
            .zip(lengths)
            .map(|(&n, &l)| std::f64::consts::PI * n as f64 / l)
            .collect();
        let frequency = (wavenumbers.iter().map(|k| k * k).sum::<f64>() + mass * mass).sqrt();
        // √2 per axis with a nonzero index, 1 per zero index (Neumann only).
        let eta: f64 = index.iter().map(|&n| if n == 0 { 1.0 } else { std::f64::consts::SQRT_2 }).product();
        let volume: f64 = lengths.iter().product();
        let normalization = eta / (2.0 * volume * frequency).sqrt();
        let parity_form = match bc {
            BoundaryCondition::Dirichlet => ParityForm::Sine,
            BoundaryCondition::Neumann => ParityForm::Cosine,
        };
        Self { index, wavenumbers, lengths: lengths.to_vec(), frequency, normalization, parity_form }
    }

    /// Multi-index `(n)` or `(n, m, ℓ)`.
    pub fn index(&self) -> &[usize] {
        &self.index
    }

    /// Wavenumbers `k_i = π n_i / L_i`.
    pub fn wavenumbers(&self) -> &[f64] {
        &self.wavenumbers
    }

    /// `ω⁰ = √(Σ k_i² + m²)`.
    pub fn frequency(&self) -> f64 {
        self.frequency
    }

    /// Prefactor `N`.
    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    /// Sine (Dirichlet) or cosine (Neumann) on every axis.
    pub fn parity_form(&self) -> ParityForm {
        self.parity_form
    }

    /// Number of spatial dimensions.
    pub fn dim(&self) -> usize {
        self.index.len()
    }

    /// `(f, f')` of the per-axis profile (without the prefactor).
    pub fn axis_profile(&self, axis: usize, x: f64) -> (f64, f64) {
        let k = self.wavenumbers[axis];
        let (s, c) = (k * (x + 0.5 * self.lengths[axis])).sin_cos();
        match self.parity_form {
            ParityForm::Sine => (s, k * c),
            ParityForm::Cosine => (c, -k * s),
        }
    }

    /// Closed-form value without the domain check.
    pub fn value(&self, point: &[f64]) -> f64 {
        let mut v = self.normalization;
        for (axis, &x) in point.iter().enumerate() {
            v *= self.axis_profile(axis, x).0;
        }
        v
    }

    /// Closed-form gradient.
    pub fn gradient(&self, point: &[f64]) -> Vec<f64> {
        let profiles: Vec<(f64, f64)> =
            point.iter().enumerate().map(|(a, &x)| self.axis_profile(a, x)).collect();
        (0..point.len())
            .map(|d| {
                let mut g = self.normalization;
                for (a, &(f, df)) in profiles.iter().enumerate() {
                    g *= if a == d { df } else { f };
                }
                g
            })
            .collect()
    }

    /// Outward normal derivative on a face at a point of that face.
    pub fn normal_derivative(&self, face: Face, point: &[f64]) -> f64 {
        face.side.sign() * self.gradient(point)[face.axis]
    }

    /// `∂_axis² Ψ = −k_axis² Ψ`.
    pub fn second_derivative(&self, axis: usize, point: &[f64]) -> f64 {
        -self.wavenumbers[axis].powi(2) * self.value(point)
    }
}

/// Ordered static eigenbasis of one cavity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StaticBasis {
    geometry: CavityGeometry,
    bc: BoundaryCondition,
    params: FieldParams,
    modes: Vec<StaticMode>,
}

impl StaticBasis {
    pub fn geometry(&self) -> CavityGeometry {
        self.geometry
    }

    pub fn bc(&self) -> BoundaryCondition {
        self.bc
    }

    pub fn params(&self) -> FieldParams {
        self.params
    }

    /// Modes in ascending frequency, ties broken lexicographically by index.
    pub fn modes(&self) -> &[StaticMode] {
        &self.modes
    }

    /// Truncation size `N`.
    pub fn len(&self) -> usize {
        self.modes.len()
    }

    /// `true` if the basis holds no modes (never the case for a built basis).
    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Mode at storage position `i`.
    pub fn mode(&self, i: usize) -> Result<&StaticMode> {
        self.modes.get(i).ok_or_else(|| {
            Error::InvalidArgument(format!("mode position {i} outside truncation of {}", self.modes.len()))
        })
    }

    /// Storage position of a multi-index, if retained.
    pub fn position(&self, index: &[usize]) -> Option<usize> {
        self.modes.iter().position(|m| m.index == index)
    }

    /// Frequencies in storage order.
    pub fn frequencies(&self) -> Vec<f64> {
        self.modes.iter().map(|m| m.frequency).collect()
    }

    /// Keeps only the first `count` modes.
    pub fn truncated(&self, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::EmptyBasis("truncation to zero modes".into()));
        }
        let mut b = self.clone();
        b.modes.truncate(count);
        Ok(b)
    }
}

/// Static modes of the interval `[−L/2, L/2]`: `k_n = πn/L`, the first
/// `count` modes in ascending frequency.
///
/// Dirichlet indices start at 1.  Neumann indices start at 0 for a massive
/// field; the massless `n = 0` mode has zero frequency and is skipped.
pub fn solve_interval_modes(
    length: f64,
    params: &FieldParams,
    bc: BoundaryCondition,
    count: usize,
) -> Result<StaticBasis> {
    let geometry = CavityGeometry::Interval { length };
    geometry.validate()?;
    if count == 0 {
        return Err(Error::InvalidArgument("mode count must be at least 1".into()));
    }
    let first = match bc {
        BoundaryCondition::Dirichlet => 1,
        BoundaryCondition::Neumann if params.mass() > 0.0 => 0,
        BoundaryCondition::Neumann => 1,
    };
    let modes = (first..first + count)
        .map(|n| StaticMode::new(vec![n], &[length], params.mass(), bc))
        .collect();
    Ok(StaticBasis { geometry, bc, params: *params, modes })
}

/// Static modes of the rectangular box with `ω⁰ ≤ frequency_cutoff`.
///
/// Dirichlet indices start at 1 on every axis; Neumann indices may be zero
/// (the all-zero index is skipped for a massless field).  Degenerate modes are
/// kept as distinct entries.
pub fn solve_box_modes(
    lengths: [f64; 3],
    params: &FieldParams,
    bc: BoundaryCondition,
    frequency_cutoff: f64,
) -> Result<StaticBasis> {
    let geometry = CavityGeometry::Box { lx: lengths[0], ly: lengths[1], lz: lengths[2] };
    geometry.validate()?;
    if !frequency_cutoff.is_finite() {
        return Err(Error::InvalidArgument(format!("frequency cutoff must be finite, got {frequency_cutoff}")));
    }
    let first = match bc {
        BoundaryCondition::Dirichlet => 1,
        BoundaryCondition::Neumann => 0,
    };
    let slack = frequency_cutoff * (1.0 + 1e-12);
    let m2 = params.mass().powi(2);
    let max_index = |l: f64| {
        let kmax2 = slack * slack - m2;
        if kmax2 < 0.0 {
            0
        } else {
            (kmax2.sqrt() * l / std::f64::consts::PI).floor() as usize
        }
    };
    let (nx, ny, nz) = (max_index(lengths[0]), max_index(lengths[1]), max_index(lengths[2]));
    let mut modes = Vec::new();
    for i in first..=nx {
        for j in first..=ny {
            for k in first..=nz {
                if i == 0 && j == 0 && k == 0 && params.mass() == 0.0 {
                    continue;
                }
                let mode = StaticMode::new(vec![i, j, k], &lengths, params.mass(), bc);
                if mode.frequency <= slack {
                    modes.push(mode);
                }
            }
        }
    }
    if modes.is_empty() {
        return Err(Error::EmptyBasis(format!(
            "no mode has frequency below the cutoff {frequency_cutoff}"
        )));
    }
    modes.sort_by(compare_modes);
    Ok(StaticBasis { geometry, bc, params: *params, modes })
}

/// Ascending frequency; frequencies equal to within rounding (degenerate
/// modes whose squared wavenumbers were summed in a different order) are
/// ordered lexicographically by index.
fn compare_modes(a: &StaticMode, b: &StaticMode) -> std::cmp::Ordering {
    let tol = 1e-13 * a.frequency.max(b.frequency);
    if (a.frequency - b.frequency).abs() <= tol {
        a.index.cmp(&b.index)
    } else {
        a.frequency.partial_cmp(&b.frequency).expect("finite frequencies")
    }
}

/// Basis with an explicit list of multi-indices (in the given order).
///
/// Useful for addressing a fixed block of indices irrespective of a cutoff.
pub fn basis_from_indices(
    geometry: CavityGeometry,
    params: &FieldParams,
    bc: BoundaryCondition,
    indices: &[Vec<usize>],
) -> Result<StaticBasis> {
    geometry.validate()?;
    let lengths = geometry.lengths();
    let mut modes = Vec::with_capacity(indices.len());
    for idx in indices {
        if idx.len() != lengths.len() {
            return Err(Error::InvalidArgument(format!("index {idx:?} has wrong dimension")));
        }
        if bc == BoundaryCondition::Dirichlet && idx.contains(&0) {
            return Err(Error::InvalidArgument(format!("Dirichlet index {idx:?} contains a zero")));
        }
        if idx.iter().all(|&n| n == 0) && params.mass() == 0.0 {
            return Err(Error::InvalidArgument("the massless Neumann zero mode has no normalisation".into()));
        }
        modes.push(StaticMode::new(idx.clone(), &lengths, params.mass(), bc));
    }
    if modes.is_empty() {
        return Err(Error::EmptyBasis("no indices given".into()));
    }
    Ok(StaticBasis { geometry, bc, params: *params, modes })
}

/// Closed-form value of a mode at a point of the closed cavity.
pub fn eval_mode(mode: &StaticMode, point: &[f64]) -> Result<f64> {
    let inside = point.len() == mode.dim()
        && mode.lengths.iter().zip(point).all(|(&l, &x)| x.abs() <= 0.5 * l * (1.0 + 1e-12));
    if !inside {
        return Err(Error::Domain { point: point.to_vec() });
    }
    Ok(mode.value(point))
}

/// `∫ Ψ_n Ψ_m dV` by Gauss-Legendre with `points` nodes per axis.
///
/// Modes are separable, so the tensor-product rule factorises into one
/// one-dimensional rule per axis.
pub fn overlap(a: &StaticMode, b: &StaticMode, rule: &GaussLegendre) -> f64 {
    let mut acc = a.normalization * b.normalization;
    for axis in 0..a.dim() {
        let l = a.lengths[axis];
        acc *= rule.integrate(-0.5 * l, 0.5 * l, |x| a.axis_profile(axis, x).0 * b.axis_profile(axis, x).0);
    }
    acc
}

/// `max_{n,m} |∫ Ψ_n Ψ_m dV − δ_nm/(2ω_n)|` with the default 64-point rule.
pub fn orthonormality_residual(basis: &StaticBasis) -> Result<f64> {
    orthonormality_residual_with(basis, DEFAULT_POINTS)
}

/// [`orthonormality_residual`] with a configurable number of nodes per axis.
pub fn orthonormality_residual_with(basis: &StaticBasis, points: usize) -> Result<f64> {
    if basis.is_empty() {
        return Err(Error::EmptyBasis("orthonormality of an empty basis".into()));
    }
    let rule = GaussLegendre::new(points)?;
    let mut worst: f64 = 0.0;
    for (i, a) in basis.modes.iter().enumerate() {
        for b in &basis.modes[i..] {
            let expected = if a.index == b.index { 0.5 / a.frequency } else { 0.0 };
            worst = worst.max((overlap(a, b, &rule) - expected).abs());
        }
    }
    Ok(worst)
}
