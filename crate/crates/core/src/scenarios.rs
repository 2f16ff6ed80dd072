//! Built-in worked examples: an interval with oscillating walls (dynamical
//! Casimir effect) and a rigid box crossed by a plane gravitational wave.
//!
//! Each builder returns the first-order [`PerturbationSpec`], the exact wall
//! trajectory where one exists, and a closed-form predictor of the coupling
//! functions `Δα̂_nm(t)`, `Δβ̂_nm(t)`.  Predictors hold the
//! resonance-substituted forms, so they agree with the quadrature pipeline run
//! with [`CouplingOptions::resonant`](crate::perturb::CouplingOptions::resonant).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact1d::{BoundaryTrajectory, Wall};
use crate::field::{BoundaryCondition, FieldParams};
use crate::perturb::{CouplingEvaluator, CouplingKind, CouplingMatrix, CouplingOptions, PerturbationSpec};
use crate::signal::{Envelope, Harmonic, HarmonicSum, Waveform};
use crate::staticmodes::{solve_box_modes, Face, Side, StaticBasis};

/// Drive amplitudes above this value trigger a warning.
pub const EPSILON_WARNING: f64 = 0.1;

/// Closed-form coupling functions indexed by mode multi-indices.
pub trait CouplingPredictor {
    /// `Δα̂` between the modes with multi-indices `a` and `b`.
    fn alpha(&self, a: &[usize], b: &[usize]) -> Result<HarmonicSum>;
    /// `Δβ̂` between the modes with multi-indices `a` and `b`.
    fn beta(&self, a: &[usize], b: &[usize]) -> Result<HarmonicSum>;
}

/// The predictor evaluated on every pair of a basis.
pub fn predicted_matrix<P: CouplingPredictor + ?Sized>(predictor: &P, basis: &StaticBasis) -> Result<CouplingMatrix> {
    let size = basis.len();
    let mut alpha = Vec::with_capacity(size * size);
    let mut beta = Vec::with_capacity(size * size);
    for a in basis.modes() {
        for b in basis.modes() {
            alpha.push(predictor.alpha(a.index(), b.index())?);
            beta.push(predictor.beta(a.index(), b.index())?);
        }
    }
    CouplingMatrix::from_entries(size, alpha, beta)
}

/// A predictor with every coupling multiplied by −1 (used to check that the
/// regression detects a sign error).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Negated<P>(pub P);

impl<P: CouplingPredictor> CouplingPredictor for Negated<P> {
    fn alpha(&self, a: &[usize], b: &[usize]) -> Result<HarmonicSum> {
        Ok(self.0.alpha(a, b)?.scaled(Complex64::new(-1.0, 0.0)))
    }

    fn beta(&self, a: &[usize], b: &[usize]) -> Result<HarmonicSum> {
        Ok(self.0.beta(a, b)?.scaled(Complex64::new(-1.0, 0.0)))
    }
}

/// Agreement between the quadrature pipeline and a closed-form predictor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegressionReport {
    /// Number of `(n, m)` entries compared (α and β counted separately).
    pub entries_compared: usize,
    /// Largest `max_j |q_j − p_j| / max_j |p_j|` over entries the predictor
    /// says are nonzero (`j` runs over harmonics).
    pub max_relative_error: f64,
    /// Largest quadrature amplitude, relative to the largest predicted
    /// amplitude, among entries the predictor says vanish.
    pub max_zero_residual: f64,
    /// Largest diagonal `|Δβ̂_nn|` from quadrature (absolute).
    pub max_diagonal_beta: f64,
}

/// Compares resonance-substituted quadrature couplings with `predictor` on
/// every pair of `basis`.
///
/// Off-diagonal entries and all of `Δβ̂` are compared with the full
/// coupling; diagonal `Δα̂` entries with the wall contribution only, because
/// the bulk part of a diagonal coupling is a frequency shift that the closed
/// forms leave out.
pub fn regress_couplings(
    spec: &PerturbationSpec,
    basis: &StaticBasis,
    predictor: &dyn CouplingPredictor,
) -> Result<RegressionReport> {
    let eval = CouplingEvaluator::new(spec, basis, CouplingOptions::resonant())?;
    let mut pairs = Vec::new();
    for (n, a) in basis.modes().iter().enumerate() {
        for (m, b) in basis.modes().iter().enumerate() {
            let alpha = eval.parts(CouplingKind::Alpha, n, m)?;
            let q_alpha = if n == m { alpha.surface } else { alpha.total()? };
            pairs.push((q_alpha, predictor.alpha(a.index(), b.index())?));
            pairs.push((eval.coupling(CouplingKind::Beta, n, m)?, predictor.beta(a.index(), b.index())?));
        }
    }
    let scale = pairs.iter().map(|(_, p)| p.max_amplitude()).fold(0.0, f64::max);
    let mut report = RegressionReport {
        entries_compared: pairs.len(),
        max_relative_error: 0.0,
        max_zero_residual: 0.0,
        max_diagonal_beta: 0.0,
    };
    let size = basis.len();
    for (k, (q, p)) in pairs.iter().enumerate() {
        let diff = q.try_add(&p.scaled(Complex64::new(-1.0, 0.0)))?.max_amplitude();
        let p_amp = p.max_amplitude();
        if p_amp > 1e-14 * scale {
            report.max_relative_error = report.max_relative_error.max(diff / p_amp);
        } else if scale > 0.0 {
            report.max_zero_residual = report.max_zero_residual.max(q.max_amplitude() / scale);
        }
        let (pair, is_beta) = (k / 2, k % 2 == 1);
        if is_beta && pair / size == pair % size {
            report.max_diagonal_beta = report.max_diagonal_beta.max(q.max_amplitude());
        }
    }
    Ok(report)
}

fn parity(n: usize, m: usize) -> f64 {
    if (n + m) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `i·c·w(t)·sin(Ωt)`, or the zero sum when `c = 0`.
fn i_sine(c: f64, omega: f64, envelope: Envelope) -> HarmonicSum {
    let mut h = HarmonicSum::with_envelope(envelope);
    if c != 0.0 {
        h.push(Harmonic::sin(Complex64::new(0.0, c), omega));
    }
    h
}

fn check_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must be positive and finite, got {value}")))
    }
}

fn epsilon_warnings(epsilon: f64) -> Vec<String> {
    if epsilon > EPSILON_WARNING {
        let msg = format!("ε = {epsilon} exceeds {EPSILON_WARNING}; first-order results are unreliable");
        log::warn!("{msg}");
        vec![msg]
    } else {
        Vec::new()
    }
}

/// Names by which the scenarios are addressed from configuration files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScenarioKind {
    #[serde(rename = "dce-i")]
    DceRightOnly,
    #[serde(rename = "dce-ii")]
    DceBreathing,
    #[serde(rename = "dce-iii")]
    DceShaking,
    #[serde(rename = "gw-rigid")]
    GwRigid,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 4] =
        [ScenarioKind::DceRightOnly, ScenarioKind::DceBreathing, ScenarioKind::DceShaking, ScenarioKind::GwRigid];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::DceRightOnly => "dce-i",
            ScenarioKind::DceBreathing => "dce-ii",
            ScenarioKind::DceShaking => "dce-iii",
            ScenarioKind::GwRigid => "gw-rigid",
        }
    }

    /// The wall-motion variant of a moving-mirror scenario.
    pub fn dce_variant(self) -> Option<DceVariant> {
        match self {
            ScenarioKind::DceRightOnly => Some(DceVariant::RightOnly),
            ScenarioKind::DceBreathing => Some(DceVariant::Breathing),
            ScenarioKind::DceShaking => Some(DceVariant::Shaking),
            ScenarioKind::GwRigid => None,
        }
    }

    /// Number of spatial dimensions.
    pub fn dim(self) -> usize {
        if self == ScenarioKind::GwRigid {
            3
        } else {
            1
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScenarioKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            Error::InvalidArgument(format!("unknown scenario '{s}' (expected dce-i, dce-ii, dce-iii or gw-rigid)"))
        })
    }
}

/// How the two walls of the interval oscillate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DceVariant {
    /// Left wall fixed, right wall at `L(1 + ε sin Ωt)/2`.
    RightOnly,
    /// Both walls move outwards together: `x± = ±L(1 + ε sin Ωt)/2`.
    Breathing,
    /// Rigid translation: `x± = ±L(1 ± ε sin Ωt)/2`.
    Shaking,
}

impl DceVariant {
    /// `C_nm` multiplying every coupling between bands `n` and `m`.
    pub fn c_factor(self, n: usize, m: usize) -> f64 {
        let p = parity(n, m);
        match self {
            DceVariant::RightOnly => p,
            DceVariant::Breathing => p + 1.0,
            DceVariant::Shaking => p - 1.0,
        }
    }

    /// Outward displacement amplitudes `(left, right)` in units of `L/2`.
    fn outward_amplitudes(self) -> (f64, f64) {
        match self {
            DceVariant::RightOnly => (0.0, 1.0),
            DceVariant::Breathing => (1.0, 1.0),
            DceVariant::Shaking => (-1.0, 1.0),
        }
    }

    pub fn kind(self) -> ScenarioKind {
        match self {
            DceVariant::RightOnly => ScenarioKind::DceRightOnly,
            DceVariant::Breathing => ScenarioKind::DceBreathing,
            DceVariant::Shaking => ScenarioKind::DceShaking,
        }
    }
}

/// Parameters of an oscillating-wall interval `[−L/2, L/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DceConfig {
    pub variant: DceVariant,
    pub length: f64,
    pub mass: f64,
    pub bc: BoundaryCondition,
    pub epsilon: f64,
    pub omega_drive: f64,
    /// Switching window of the drive (constant by default).
    #[serde(default)]
    pub envelope: Envelope,
}

impl DceConfig {
    pub fn new(variant: DceVariant, length: f64, mass: f64, bc: BoundaryCondition, epsilon: f64, omega_drive: f64) -> Self {
        Self { variant, length, mass, bc, epsilon, omega_drive, envelope: Envelope::Constant }
    }

    pub fn with_envelope(mut self, envelope: Envelope) -> Self {
        self.envelope = envelope;
        self
    }

    fn validate(&self) -> Result<()> {
        check_positive("length", self.length)?;
        check_positive("epsilon", self.epsilon)?;
        check_positive("drive frequency", self.omega_drive)?;
        FieldParams::minimal(self.mass)?;
        self.envelope.validate()
    }
}

/// Closed-form couplings of the oscillating-wall interval:
///
/// * Neumann:   `Δα̂_nm = −Δβ̂_nm = i C_nm η (Ω² − k_n² − k_m²) / (4√(ω_nω_m)) · sin Ωt`,
/// * Dirichlet: `Δα̂_nm = −Δβ̂_nm = −i C_nm k_n k_m / (2√(ω_nω_m)) · sin Ωt`,
///
/// with `k_n = πn/L`.  The factor `η` is 1 for nonzero indices and `1/√2` for
/// each zero index (the Neumann `n = 0` mode of a massive field is
/// normalised without the `√2` of the others).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DcePredictor {
    pub variant: DceVariant,
    pub length: f64,
    pub mass: f64,
    pub bc: BoundaryCondition,
    pub omega_drive: f64,
    pub envelope: Envelope,
}

impl DcePredictor {
    fn wavenumber(&self, n: usize) -> f64 {
        std::f64::consts::PI * n as f64 / self.length
    }

    fn frequency(&self, n: usize) -> f64 {
        let k = self.wavenumber(n);
        (k * k + self.mass * self.mass).sqrt()
    }

    fn label(&self, idx: &[usize]) -> Result<usize> {
        match idx {
            [n] => {
                let n = *n;
                let valid = match self.bc {
                    BoundaryCondition::Dirichlet => n >= 1,
                    BoundaryCondition::Neumann => n >= 1 || self.mass > 0.0,
                };
                if valid {
                    Ok(n)
                } else {
                    Err(Error::InvalidArgument(format!("index {n} is not a {} mode of this interval", self.bc.name())))
                }
            }
            _ => Err(Error::InvalidArgument(format!("interval modes have one index, got {idx:?}"))),
        }
    }

    /// Real coefficient `c` in `Δα̂_nm = i c sin Ωt`.
    pub fn alpha_coefficient(&self, n: usize, m: usize) -> f64 {
        let c = self.variant.c_factor(n, m);
        let (kn, km) = (self.wavenumber(n), self.wavenumber(m));
        let root = (self.frequency(n) * self.frequency(m)).sqrt();
        match self.bc {
            BoundaryCondition::Neumann => {
                let eta: f64 = [n, m].iter().map(|&i| if i == 0 { std::f64::consts::FRAC_1_SQRT_2 } else { 1.0 }).product();
                c * eta * (self.omega_drive.powi(2) - kn * kn - km * km) / (4.0 * root)
            }
            BoundaryCondition::Dirichlet => -c * kn * km / (2.0 * root),
        }
    }
}

impl CouplingPredictor for DcePredictor {
    fn alpha(&self, a: &[usize], b: &[usize]) -> Result<HarmonicSum> {
        let (n, m) = (self.label(a)?, self.label(b)?);
        Ok(i_sine(self.alpha_coefficient(n, m), self.omega_drive, self.envelope))
    }

    fn beta(&self, a: &[usize], b: &[usize]) -> Result<HarmonicSum> {
        let (n, m) = (self.label(a)?, self.label(b)?);
        Ok(i_sine(-self.alpha_coefficient(n, m), self.omega_drive, self.envelope))
    }
}

/// Output of [`build_dce`].
#[derive(Debug, Clone)]
pub struct DceScenario {
    pub config: DceConfig,
    pub spec: PerturbationSpec,
    /// The exact (not linearised) wall motion.
    pub trajectory: BoundaryTrajectory,
    pub predictor: DcePredictor,
    /// Minimally coupled field of the configured mass.
    pub params: FieldParams,
    pub warnings: Vec<String>,
}

/// Oscillating-wall interval: outward displacements `Δx = ±(L/2) sin Ωt` on
/// the moving walls and no bulk perturbation.
pub fn build_dce(config: &DceConfig) -> Result<DceScenario> {
    config.validate()?;
    let params = FieldParams::minimal(config.mass)?;
    let half = 0.5 * config.length;
    let (left, right) = config.variant.outward_amplitudes();
    let unit = |amp: f64| Waveform::sine(amp * half, config.omega_drive, config.envelope);
    let mut spec = PerturbationSpec::new(config.epsilon)?;
    if left != 0.0 {
        spec = spec.with_displacement(Face { axis: 0, side: Side::Minus }, unit(left));
    }
    spec = spec.with_displacement(Face { axis: 0, side: Side::Plus }, unit(right));
    // Outward displacement of the left wall moves it towards −x.
    let motion = |amp: f64| {
        if amp == 0.0 {
            Waveform::zero()
        } else {
            Waveform::sine(amp * config.epsilon * half, config.omega_drive, config.envelope)
        }
    };
    let trajectory = BoundaryTrajectory::new(Wall::new(-half, motion(-left)), Wall::new(half, motion(right)))?;
    let predictor = DcePredictor {
        variant: config.variant,
        length: config.length,
        mass: config.mass,
        bc: config.bc,
        omega_drive: config.omega_drive,
        envelope: config.envelope,
    };
    Ok(DceScenario { config: *config, spec, trajectory, predictor, params, warnings: epsilon_warnings(config.epsilon) })
}

/// Parameters of the rigid box under the wave metric
/// `[1 + ε sin Ωt]dx² + [1 − ε sin Ωt]dy² + dz²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GwConfig {
    pub lengths: [f64; 3],
    pub mass: f64,
    pub bc: BoundaryCondition,
    pub epsilon: f64,
    pub omega_drive: f64,
    /// Static modes with `ω⁰ ≤ frequency_cutoff` form the basis.
    pub frequency_cutoff: f64,
    #[serde(default)]
    pub envelope: Envelope,
}

impl GwConfig {
    pub fn new(lengths: [f64; 3], bc: BoundaryCondition, epsilon: f64, omega_drive: f64, frequency_cutoff: f64) -> Self {
        Self { lengths, mass: 0.0, bc, epsilon, omega_drive, frequency_cutoff, envelope: Envelope::Constant }
    }

    pub fn with_mass(mut self, mass: f64) -> Self {
        self.mass = mass;
        self
    }

    pub fn with_envelope(mut self, envelope: Envelope) -> Self {
        self.envelope = envelope;
        self
    }

    fn validate(&self) -> Result<()> {
        for (name, l) in ["Lx", "Ly", "Lz"].iter().zip(self.lengths) {
            check_positive(name, l)?;
        }
        check_positive("epsilon", self.epsilon)?;
        check_positive("drive frequency", self.omega_drive)?;
        check_positive("frequency cutoff", self.frequency_cutoff)?;
        FieldParams::minimal(self.mass)?;
        self.envelope.validate()
    }
}

/// Closed-form couplings of the rigid box, for multi-indices `(n, m, ℓ)` and
/// `(n', m', ℓ')` with nonzero entries:
///
/// * Dirichlet: `Δα̂ = i sin Ωt/(4√(ωω')) δ_ℓℓ' {[(−1)^{n+n'} + 1] kˣ_n kˣ_{n'} δ_mm'
///   − [(−1)^{m+m'} + 1] kʸ_m kʸ_{m'} δ_nn'}`;
/// * Neumann: `Δα̂ = i sin Ωt/(8√(ωω')) δ_ℓℓ' {[(−1)^{m+m'} + 1][Ω² − (kʸ_m)² − (kʸ_{m'})²] δ_nn'
///   − [(−1)^{n+n'} + 1][Ω² − (kˣ_n)² − (kˣ_{n'})²] δ_mm'}`;
/// * both: `Δβ̂ = i sin Ωt/(2ω) [(kˣ_n)² − (kʸ_m)²] δ − Δα̂`.
///
/// The first term of `Δβ̂` is the contribution of the metric alone, available
/// separately through [`beta_metric_only`](Self::beta_metric_only).  On the
/// diagonal, `Δα̂` is the wall contribution only: the bulk part there is a
/// frequency shift that does not drive any resonance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GwPredictor {
    pub lengths: [f64; 3],
    pub mass: f64,
    pub bc: BoundaryCondition,
    pub omega_drive: f64,
    pub envelope: Envelope,
}

impl GwPredictor {
    fn check(&self, idx: &[usize]) -> Result<[usize; 3]> {
        match idx {
            [n, m, l] if *n > 0 && *m > 0 && *l > 0 => Ok([*n, *m, *l]),
            [_, _, _] => Err(Error::InvalidArgument(format!(
                "the closed forms hold for nonzero indices only, got {idx:?}"
            ))),
            _ => Err(Error::InvalidArgument(format!("box modes have three indices, got {idx:?}"))),
        }
    }

    fn k(&self, axis: usize, n: usize) -> f64 {
        std::f64::consts::PI * n as f64 / self.lengths[axis]
    }

    fn frequency(&self, i: [usize; 3]) -> f64 {
        ((0..3).map(|a| self.k(a, i[a]).powi(2)).sum::<f64>() + self.mass * self.mass).sqrt()
    }

    fn alpha_coefficient(&self, a: [usize; 3], b: [usize; 3]) -> f64 {
        if a[2] != b[2] {
            return 0.0;
        }
        let root = (self.frequency(a) * self.frequency(b)).sqrt();
        let (n, m, n2, m2) = (a[0], a[1], b[0], b[1]);
        let (kx, kx2, ky, ky2) = (self.k(0, n), self.k(0, n2), self.k(1, m), self.k(1, m2));
        let w2 = self.omega_drive.powi(2);
        let d = |x: usize, y: usize| if x == y { 1.0 } else { 0.0 };
        match self.bc {
            BoundaryCondition::Dirichlet => {
                ((parity(n, n2) + 1.0) * kx * kx2 * d(m, m2) - (parity(m, m2) + 1.0) * ky * ky2 * d(n, n2)) / (4.0 * root)
            }
            BoundaryCondition::Neumann => {
                ((parity(m, m2) + 1.0) * (w2 - ky * ky - ky2 * ky2) * d(n, n2)
                    - (parity(n, n2) + 1.0) * (w2 - kx * kx - kx2 * kx2) * d(m, m2))
                    / (8.0 * root)
            }
        }
    }

    fn metric_coefficient(&self, a: [usize; 3], b: [usize; 3]) -> f64 {
        if a != b {
            return 0.0;
        }
        (self.k(0, a[0]).powi(2) - self.k(1, a[1]).powi(2)) / (2.0 * self.frequency(a))
    }

    /// The metric-only part of `Δβ̂`, `i sin Ωt/(2ω) [(kˣ_n)² − (kʸ_m)²] δ`.
    pub fn beta_metric_only(&self, a: &[usize], b: &[usize]) -> Result<HarmonicSum> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(i_sine(self.metric_coefficient(a, b), self.omega_drive, self.envelope))
    }
}

impl CouplingPredictor for GwPredictor {
    fn alpha(&self, a: &[usize], b: &[usize]) -> Result<HarmonicSum> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(i_sine(self.alpha_coefficient(a, b), self.omega_drive, self.envelope))
    }

    fn beta(&self, a: &[usize], b: &[usize]) -> Result<HarmonicSum> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(i_sine(self.metric_coefficient(a, b) - self.alpha_coefficient(a, b), self.omega_drive, self.envelope))
    }
}

/// Output of [`build_gw`].
#[derive(Debug, Clone)]
pub struct GwScenario {
    pub config: GwConfig,
    pub spec: PerturbationSpec,
    /// Static modes below the frequency cutoff.
    pub basis: StaticBasis,
    pub predictor: GwPredictor,
    pub warnings: Vec<String>,
}

/// Rigid box under a plane wave travelling along `z`, in the long-wavelength
/// limit `sin Ω(t − z) ≈ sin Ωt`.
///
/// The perturbation holds `ΔÔ = sin Ωt (∂_x² − ∂_y²)` and the wall displacements
/// `Δx = −L_x sin Ωt/4` on the x-faces and `+L_y sin Ωt/4` on the y-faces,
/// which keep the proper lengths fixed to first order.
pub fn build_gw(config: &GwConfig) -> Result<GwScenario> {
    config.validate()?;
    let s = Waveform::sine(1.0, config.omega_drive, config.envelope);
    let [lx, ly, _] = config.lengths;
    let mut spec = PerturbationSpec::new(config.epsilon)?
        .with_second_derivative(0, s.clone())
        .with_second_derivative(1, s.scaled(-1.0));
    for side in [Side::Minus, Side::Plus] {
        spec = spec
            .with_displacement(Face { axis: 0, side }, s.scaled(-0.25 * lx))
            .with_displacement(Face { axis: 1, side }, s.scaled(0.25 * ly));
    }
    let params = FieldParams::minimal(config.mass)?;
    let basis = solve_box_modes(config.lengths, &params, config.bc, config.frequency_cutoff)?;
    let predictor = GwPredictor {
        lengths: config.lengths,
        mass: config.mass,
        bc: config.bc,
        omega_drive: config.omega_drive,
        envelope: config.envelope,
    };
    Ok(GwScenario { config: *config, spec, basis, predictor, warnings: epsilon_warnings(config.epsilon) })
}

/// Exact rigid-wall positions `x± = ±L_x/(2√(1 + ε sin Ωt))`,
/// `y± = ±L_y/(2√(1 − ε sin Ωt))` of the box at time `t`, as `[x+, y+]`.
pub fn gw_wall_positions(config: &GwConfig, t: f64) -> [f64; 2] {
    let s = config.epsilon * config.envelope.value(t) * (config.omega_drive * t).sin();
    [0.5 * config.lengths[0] / (1.0 + s).sqrt(), 0.5 * config.lengths[1] / (1.0 - s).sqrt()]
}

#[cfg(test)]
mod tests;
