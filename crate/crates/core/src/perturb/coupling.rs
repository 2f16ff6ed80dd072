//! First-order coupling functions `Δα̂_nm(t)`, `Δβ̂_nm(t)` and the pointwise
//! superoperator `±_mΔ̂ Ψ⁰_n`.
//!
//! Every time dependence of a [`PerturbationSpec`] is decomposed into
//! harmonics, so a coupling is returned as a [`HarmonicSum`] whose amplitudes
//! carry the spatial integrals.  Volume integrals use a tensor Gauss-Legendre
//! rule (factorised per axis whenever the integrand is separable); surface
//! integrals use the same rule on each face, and reduce to endpoint
//! evaluations on an interval.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::BoundaryCondition;
use crate::quadrature::{GaussLegendre, DEFAULT_POINTS};
use crate::signal::{Harmonic, HarmonicSum, Waveform};
use crate::staticmodes::{Face, StaticBasis, StaticMode};

use super::spec::{PerturbationSpec, SpatialFn};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Which of the two coupling functions is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CouplingKind {
    /// `Δα̂_nm` (mode mixing, superoperator sign `−`).
    Alpha,
    /// `Δβ̂_nm` (pair creation, superoperator sign `+`).
    Beta,
}

impl CouplingKind {
    fn sign(self) -> f64 {
        match self {
            CouplingKind::Alpha => -1.0,
            CouplingKind::Beta => 1.0,
        }
    }
}

/// Projection of non-harmonic waveforms onto a Fourier series over a window.
///
/// A custom waveform `w` is replaced on `[t0, tf]` by
/// `a₀ + Σ_{k=1}^{K} [a_k cos(ω_k t) + b_k sin(ω_k t)]` with
/// `ω_k = 2πk/(tf − t0)`; outside the window the projection is periodic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingFallback {
    t0: f64,
    tf: f64,
    harmonics: usize,
}

impl SamplingFallback {
    pub fn new(t0: f64, tf: f64, harmonics: usize) -> Result<Self> {
        if !(t0.is_finite() && tf.is_finite() && tf > t0) {
            return Err(Error::InvalidArgument(format!("sampling window must satisfy t0 < tf, got [{t0}, {tf}]")));
        }
        if harmonics == 0 {
            return Err(Error::InvalidArgument("sampling fallback needs at least one harmonic".into()));
        }
        Ok(Self { t0, tf, harmonics })
    }

    /// Fourier-series projection of a waveform on the window.
    pub fn project(&self, waveform: &Waveform) -> Result<HarmonicSum> {
        let period = self.tf - self.t0;
        let rule = GaussLegendre::new(32)?;
        // Enough panels to resolve the highest retained harmonic.
        let panels = (self.harmonics + 1).max(4);
        let step = period / panels as f64;
        let mut samples = Vec::with_capacity(panels * rule.len());
        for p in 0..panels {
            let lo = self.t0 + p as f64 * step;
            let (xs, ws) = rule.mapped(lo, lo + step);
            for (x, w) in xs.into_iter().zip(ws) {
                samples.push((x, w, waveform.try_value(x)?));
            }
        }
        let mut sum = HarmonicSum::zero();
        let mean: f64 = samples.iter().map(|&(_, w, f)| w * f).sum::<f64>() / period;
        sum.push(Harmonic::cos(Complex64::new(mean, 0.0), 0.0));
        for k in 1..=self.harmonics {
            let omega = 2.0 * std::f64::consts::PI * k as f64 / period;
            let (mut a, mut b) = (0.0, 0.0);
            for &(x, w, f) in &samples {
                let (s, c) = (omega * x).sin_cos();
                a += w * f * c;
                b += w * f * s;
            }
            sum.push(Harmonic::cos(Complex64::new(2.0 * a / period, 0.0), omega));
            sum.push(Harmonic::sin(Complex64::new(2.0 * b / period, 0.0), omega));
        }
        Ok(sum)
    }
}

/// Evaluation options for the coupling functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingOptions {
    /// Gauss-Legendre points per axis (raised automatically for high modes).
    pub points: usize,
    /// Replace `|ω⁰_n ± ω⁰_m|` by each harmonic's frequency, which extracts
    /// the resonant amplitude; the literal form is kept when `false`.
    pub resonant: bool,
    /// Fourier projection used for custom waveforms; without it such specs
    /// are rejected.
    pub sampling: Option<SamplingFallback>,
    /// Scalar curvature `R^{h⁰}` of the static spatial metric (zero for the
    /// flat cavities shipped here).
    pub background_curvature: f64,
}

impl Default for CouplingOptions {
    fn default() -> Self {
        Self { points: DEFAULT_POINTS, resonant: false, sampling: None, background_curvature: 0.0 }
    }
}

impl CouplingOptions {
    /// Default options with resonance-targeted substitution enabled.
    pub fn resonant() -> Self {
        Self { resonant: true, ..Self::default() }
    }
}

/// A coupling split into its volume and surface contributions.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingParts {
    /// `±i∫dV⁰ [∓_mΔ̂Ψ⁰_n]Ψ⁰_m` — the contribution of the metric perturbation.
    pub volume: HarmonicSum,
    /// The boundary-displacement contribution.
    pub surface: HarmonicSum,
}

impl CouplingParts {
    /// `volume + surface`.
    pub fn total(&self) -> Result<HarmonicSum> {
        self.volume.try_add(&self.surface)
    }
}

/// The pointwise action `[ΔÔ(t) + ω⁰_n(ω⁰_n ± ω⁰_m)Δr(t) + ξΔR̄(t)]Ψ⁰_n`.
#[derive(Clone)]
pub struct SuperoperatorAction {
    mode: StaticMode,
    second_derivative: Vec<(usize, f64)>,
    potentials: Vec<(f64, SpatialFn)>,
    multiplier: f64,
}

impl SuperoperatorAction {
    /// Value at a point of the static cavity.
    pub fn eval(&self, point: &[f64]) -> f64 {
        let psi = self.mode.value(point);
        let mut v = self.multiplier * psi;
        for &(axis, c) in &self.second_derivative {
            v += c * self.mode.second_derivative(axis, point);
        }
        for (w, g) in &self.potentials {
            v += w * g(point) * psi;
        }
        v
    }

    /// `true` if the action vanishes identically at this time.
    pub fn is_zero(&self) -> bool {
        self.multiplier == 0.0
            && self.second_derivative.iter().all(|&(_, c)| c == 0.0)
            && self.potentials.iter().all(|&(w, _)| w == 0.0)
    }
}

impl std::fmt::Debug for SuperoperatorAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SuperoperatorAction")
            .field("mode", &self.mode.index())
            .field("second_derivative", &self.second_derivative)
            .field("potentials", &self.potentials.len())
            .field("multiplier", &self.multiplier)
            .finish()
    }
}

/// Pointwise action of the superoperator `±_mΔ̂(t)` on `Ψ⁰_n`
/// (`plus = true` selects the `+` sign used by `Δβ̂`).
pub fn superoperator_apply(
    spec: &PerturbationSpec,
    basis: &StaticBasis,
    n: usize,
    m: usize,
    plus: bool,
    t: f64,
) -> Result<SuperoperatorAction> {
    let mode_n = basis.mode(n)?;
    let mode_m = basis.mode(m)?;
    let (wn, wm) = (mode_n.frequency(), mode_m.frequency());
    let sign = if plus { 1.0 } else { -1.0 };
    let xi = basis.params().coupling_xi();
    let multiplier = wn * (wn + sign * wm) * spec.delta_r().try_value(t)? + xi * spec.delta_r_bar().try_value(t)?;
    let mut second_derivative = Vec::new();
    for (axis, c) in spec.second_derivative_terms() {
        check_axis(*axis, mode_n.dim())?;
        second_derivative.push((*axis, c.try_value(t)?));
    }
    let mut potentials = Vec::new();
    for p in spec.potentials() {
        potentials.push((p.waveform.try_value(t)?, p.profile.clone()));
    }
    Ok(SuperoperatorAction { mode: mode_n.clone(), second_derivative, potentials, multiplier })
}

fn check_axis(axis: usize, dim: usize) -> Result<()> {
    if axis >= dim {
        return Err(Error::InvalidArgument(format!("axis {axis} out of range for a {dim}-dimensional cavity")));
    }
    Ok(())
}

/// Shared quadrature state for repeated coupling evaluations on one basis.
#[derive(Debug, Clone)]
pub struct CouplingEvaluator<'a> {
    spec: &'a PerturbationSpec,
    basis: &'a StaticBasis,
    options: CouplingOptions,
    rule: GaussLegendre,
    lengths: Vec<f64>,
    // Harmonic decompositions of every time dependence, in spec order.
    second_derivative: Vec<(usize, HarmonicSum)>,
    potentials: Vec<HarmonicSum>,
    delta_r: HarmonicSum,
    delta_r_bar: HarmonicSum,
    displacements: Vec<HarmonicSum>,
}

/// Per-axis one-dimensional integrals of a mode pair.
struct PairAxes {
    /// `∫ f_n f_m dx_a`.
    i00: Vec<f64>,
    /// `∫ f_n' f_m' dx_a`.
    i11: Vec<f64>,
    prefactor: f64,
}

impl<'a> CouplingEvaluator<'a> {
    /// Validates the perturbation against the basis and decomposes its waveforms.
    pub fn new(spec: &'a PerturbationSpec, basis: &'a StaticBasis, options: CouplingOptions) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::EmptyBasis("coupling evaluation needs at least one mode".into()));
        }
        let geometry = basis.geometry();
        let dim = geometry.dim();
        let max_index = basis.modes().iter().flat_map(|m| m.index().iter().copied()).max().unwrap_or(0);
        let rule = GaussLegendre::new(options.points.max(2 * max_index + 16))?;
        let harmonic = |w: &Waveform| -> Result<HarmonicSum> {
            match w {
                Waveform::Harmonic(h) => Ok(h.clone()),
                Waveform::Custom { label, .. } => match &options.sampling {
                    Some(s) => s.project(w),
                    None => Err(Error::UnsupportedSpec(format!(
                        "waveform `{label}` is not a finite harmonic sum; enable the sampling fallback"
                    ))),
                },
            }
        };
        let mut second_derivative = Vec::new();
        for (axis, c) in spec.second_derivative_terms() {
            check_axis(*axis, dim)?;
            second_derivative.push((*axis, harmonic(c)?));
        }
        let potentials = spec.potentials().iter().map(|p| harmonic(&p.waveform)).collect::<Result<_>>()?;
        let mut displacements = Vec::new();
        for d in spec.displacements() {
            check_axis(d.face.axis, dim)?;
            displacements.push(harmonic(&d.waveform)?);
        }
        Ok(Self {
            spec,
            basis,
            options,
            rule,
            lengths: geometry.lengths(),
            second_derivative,
            potentials,
            delta_r: harmonic(spec.delta_r())?,
            delta_r_bar: harmonic(spec.delta_r_bar())?,
            displacements,
        })
    }

    /// The basis the evaluator was built on.
    pub fn basis(&self) -> &StaticBasis {
        self.basis
    }

    fn pair_axes(&self, a: &StaticMode, b: &StaticMode) -> PairAxes {
        let mut i00 = Vec::with_capacity(self.lengths.len());
        let mut i11 = Vec::with_capacity(self.lengths.len());
        for (axis, &l) in self.lengths.iter().enumerate() {
            let (mut s00, mut s11) = (0.0, 0.0);
            let (xs, ws) = self.rule.mapped(-0.5 * l, 0.5 * l);
            for (&x, &w) in xs.iter().zip(&ws) {
                let (fa, da) = a.axis_profile(axis, x);
                let (fb, db) = b.axis_profile(axis, x);
                s00 += w * fa * fb;
                s11 += w * da * db;
            }
            i00.push(s00);
            i11.push(s11);
        }
        PairAxes { i00, i11, prefactor: a.normalization() * b.normalization() }
    }

    /// `(∮ g Ψ_nΨ_m, ∮ g ∇Ψ_n·∇Ψ_m, ∮ g ∂_νΨ_n ∂_νΨ_m)` over one face.
    fn face_integrals(
        &self,
        a: &StaticMode,
        b: &StaticMode,
        axes: &PairAxes,
        face: Face,
        profile: Option<&SpatialFn>,
    ) -> (f64, f64, f64) {
        let dim = self.lengths.len();
        let x_face = face.side.sign() * 0.5 * self.lengths[face.axis];
        match profile {
            None => {
                let (fa, da) = a.axis_profile(face.axis, x_face);
                let (fb, db) = b.axis_profile(face.axis, x_face);
                let others = |skip: Option<usize>| -> f64 {
                    (0..dim).filter(|&d| d != face.axis && Some(d) != skip).map(|d| axes.i00[d]).product()
                };
                let base = others(None);
                let s0 = axes.prefactor * fa * fb * base;
                let snn = axes.prefactor * da * db * base;
                let tangential: f64 =
                    (0..dim).filter(|&d| d != face.axis).map(|d| axes.i11[d] * others(Some(d))).sum();
                let sgrad = snn + axes.prefactor * fa * fb * tangential;
                (s0, sgrad, snn)
            }
            Some(g) => {
                let free: Vec<usize> = (0..dim).filter(|&d| d != face.axis).collect();
                let lo: Vec<f64> = free.iter().map(|&d| -0.5 * self.lengths[d]).collect();
                let hi: Vec<f64> = free.iter().map(|&d| 0.5 * self.lengths[d]).collect();
                let mut point = vec![0.0; dim];
                point[face.axis] = x_face;
                let mut eval = |coords: &[f64], which: u8| -> f64 {
                    for (k, &d) in free.iter().enumerate() {
                        point[d] = coords[k];
                    }
                    let w = g(&point);
                    match which {
                        0 => w * a.value(&point) * b.value(&point),
                        1 => {
                            let (ga, gb) = (a.gradient(&point), b.gradient(&point));
                            w * ga.iter().zip(&gb).map(|(x, y)| x * y).sum::<f64>()
                        }
                        _ => w * a.gradient(&point)[face.axis] * b.gradient(&point)[face.axis],
                    }
                };
                if free.is_empty() {
                    (eval(&[], 0), eval(&[], 1), eval(&[], 2))
                } else {
                    let s0 = self.rule.integrate_box(&lo, &hi, |c| eval(c, 0));
                    let s1 = self.rule.integrate_box(&lo, &hi, |c| eval(c, 1));
                    let s2 = self.rule.integrate_box(&lo, &hi, |c| eval(c, 2));
                    (s0, s1, s2)
                }
            }
        }
    }

    /// Volume and surface contributions of `Δα̂_nm` or `Δβ̂_nm`.
    pub fn parts(&self, kind: CouplingKind, n: usize, m: usize) -> Result<CouplingParts> {
        let mode_n = self.basis.mode(n)?;
        let mode_m = self.basis.mode(m)?;
        let (wn, wm) = (mode_n.frequency(), mode_m.frequency());
        let sign = kind.sign();
        let resonant = self.options.resonant;
        // Overall prefactor: +i for α, −i for β.
        let pre = -sign * I;
        let axes = self.pair_axes(mode_n, mode_m);
        let overlap = axes.prefactor * axes.i00.iter().product::<f64>();

        let mut volume = HarmonicSum::zero();
        for (axis, c) in &self.second_derivative {
            let k2 = mode_n.wavenumbers()[*axis].powi(2);
            accumulate(&mut volume, c, |_| pre * (-k2 * overlap))?;
        }
        for (p, w) in self.spec.potentials().iter().zip(&self.potentials) {
            if w.is_zero() {
                continue;
            }
            let l = &self.lengths;
            let lo: Vec<f64> = l.iter().map(|x| -0.5 * x).collect();
            let hi: Vec<f64> = l.iter().map(|x| 0.5 * x).collect();
            let integral = self
                .rule
                .integrate_box(&lo, &hi, |x| (p.profile)(x) * mode_n.value(x) * mode_m.value(x));
            accumulate(&mut volume, w, |_| pre * integral)?;
        }
        if overlap != 0.0 {
            let literal = wn * (wn + sign * wm);
            accumulate(&mut volume, &self.delta_r, |omega| {
                let factor = if !resonant {
                    literal
                } else {
                    match kind {
                        CouplingKind::Beta => wn * omega,
                        CouplingKind::Alpha if wn == wm => literal,
                        CouplingKind::Alpha => wn * (wn - wm).signum() * omega,
                    }
                };
                pre * factor * overlap
            })?;
            let xi = self.basis.params().coupling_xi();
            accumulate(&mut volume, &self.delta_r_bar, |_| pre * xi * overlap)?;
        }

        let mut surface = HarmonicSum::zero();
        let bc = self.basis.bc();
        let mass2 = self.basis.params().mass().powi(2);
        let curv = self.basis.params().coupling_xi() * self.options.background_curvature;
        for (d, w) in self.spec.displacements().iter().zip(&self.displacements) {
            if w.is_zero() {
                continue;
            }
            let (s0, sgrad, snn) = self.face_integrals(mode_n, mode_m, &axes, d.face, d.profile.as_ref());
            match bc {
                BoundaryCondition::Neumann => {
                    accumulate(&mut surface, w, |omega| {
                        // ω⁰_nω⁰_m, or its on-resonance equivalent.
                        let product = if !resonant {
                            wn * wm
                        } else {
                            match kind {
                                CouplingKind::Alpha => 0.5 * (wn * wn + wm * wm - omega * omega),
                                CouplingKind::Beta => 0.5 * (omega * omega - wn * wn - wm * wm),
                            }
                        };
                        pre * (sgrad + (curv + mass2 + sign * product) * s0)
                    })?;
                }
                BoundaryCondition::Dirichlet => {
                    // −i∮Δx ∂_νΨ_n∂_νΨ_m for α, +i for β.
                    accumulate(&mut surface, w, |_| -pre * snn)?;
                }
            }
        }
        Ok(CouplingParts { volume, surface })
    }

    /// `Δα̂_nm` or `Δβ̂_nm` as a harmonic sum.
    pub fn coupling(&self, kind: CouplingKind, n: usize, m: usize) -> Result<HarmonicSum> {
        self.parts(kind, n, m)?.total()
    }
}

/// Adds `coef(Ω_j) · a_j` for every harmonic `a_j` of `w` to `acc`.
fn accumulate(acc: &mut HarmonicSum, w: &HarmonicSum, coef: impl Fn(f64) -> Complex64) -> Result<()> {
    if w.is_zero() {
        return Ok(());
    }
    let mut part = HarmonicSum::with_envelope(w.envelope());
    for h in w.terms() {
        let amplitude = h.amplitude * coef(h.frequency);
        if amplitude != Complex64::new(0.0, 0.0) {
            part.push(Harmonic { amplitude, ..*h });
        }
    }
    if !part.terms().is_empty() {
        *acc = acc.try_add(&part)?;
    }
    Ok(())
}

fn check_bc(basis: &StaticBasis, bc: BoundaryCondition) -> Result<()> {
    if basis.bc() != bc {
        return Err(Error::InvalidArgument(format!(
            "boundary condition {bc} does not match the {} basis",
            basis.bc()
        )));
    }
    Ok(())
}

/// `Δα̂_nm(t)` for basis positions `n`, `m`.
pub fn coupling_alpha(
    spec: &PerturbationSpec,
    basis: &StaticBasis,
    n: usize,
    m: usize,
    bc: BoundaryCondition,
    options: &CouplingOptions,
) -> Result<HarmonicSum> {
    check_bc(basis, bc)?;
    CouplingEvaluator::new(spec, basis, *options)?.coupling(CouplingKind::Alpha, n, m)
}

/// `Δβ̂_nm(t)` for basis positions `n`, `m`.
pub fn coupling_beta(
    spec: &PerturbationSpec,
    basis: &StaticBasis,
    n: usize,
    m: usize,
    bc: BoundaryCondition,
    options: &CouplingOptions,
) -> Result<HarmonicSum> {
    check_bc(basis, bc)?;
    CouplingEvaluator::new(spec, basis, *options)?.coupling(CouplingKind::Beta, n, m)
}

/// All couplings `Δα̂_nm`, `Δβ̂_nm` on a truncated basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix {
    size: usize,
    alpha: Vec<HarmonicSum>,
    beta: Vec<HarmonicSum>,
}

impl CouplingMatrix {
    /// Evaluates every entry on `basis`.
    pub fn build(spec: &PerturbationSpec, basis: &StaticBasis, options: &CouplingOptions) -> Result<Self> {
        let eval = CouplingEvaluator::new(spec, basis, *options)?;
        let size = basis.len();
        let mut alpha = Vec::with_capacity(size * size);
        let mut beta = Vec::with_capacity(size * size);
        for n in 0..size {
            for m in 0..size {
                alpha.push(eval.coupling(CouplingKind::Alpha, n, m)?);
                beta.push(eval.coupling(CouplingKind::Beta, n, m)?);
            }
        }
        Ok(Self { size, alpha, beta })
    }

    /// Builds a matrix from explicit entries (row-major, `size²` each).
    pub fn from_entries(size: usize, alpha: Vec<HarmonicSum>, beta: Vec<HarmonicSum>) -> Result<Self> {
        if alpha.len() != size * size || beta.len() != size * size {
            return Err(Error::InvalidArgument(format!("expected {} entries per block", size * size)));
        }
        Ok(Self { size, alpha, beta })
    }

    /// Number of modes.
    pub fn size(&self) -> usize {
        self.size
    }

    /// `Δα̂_nm`.
    pub fn alpha(&self, n: usize, m: usize) -> &HarmonicSum {
        &self.alpha[n * self.size + m]
    }

    /// `Δβ̂_nm`.
    pub fn beta(&self, n: usize, m: usize) -> &HarmonicSum {
        &self.beta[n * self.size + m]
    }

    /// Entrywise sum.
    pub fn try_add(&self, other: &CouplingMatrix) -> Result<CouplingMatrix> {
        if self.size != other.size {
            return Err(Error::InvalidArgument("coupling matrices differ in size".into()));
        }
        let add = |a: &[HarmonicSum], b: &[HarmonicSum]| -> Result<Vec<HarmonicSum>> {
            a.iter().zip(b).map(|(x, y)| x.try_add(y)).collect()
        };
        Ok(Self { size: self.size, alpha: add(&self.alpha, &other.alpha)?, beta: add(&self.beta, &other.beta)? })
    }

    /// Largest harmonic frequency in any entry.
    pub fn max_frequency(&self) -> f64 {
        self.alpha.iter().chain(&self.beta).map(HarmonicSum::max_frequency).fold(0.0, f64::max)
    }
}
