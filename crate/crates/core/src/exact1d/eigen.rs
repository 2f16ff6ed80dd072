//! Instantaneous eigenproblem of the interval with moving walls.
//!
//! At a fixed instant the mode functions solve `−Ψ'' + m_eff² Ψ = ω² Ψ` on
//! `[x₋, x₊]` with the velocity-dependent boundary conditions
//!
//! * Neumann:   `n·∇Ψ = −ω v_B Ψ`,
//! * Dirichlet: `ω Ψ = −v_B n·∇Ψ`,
//!
//! where `v_B` is the outward normal velocity of the wall.  With
//! `s = x − x₋` the solution is `Ψ = A cos(ks) + B sin(ks)/k`,
//! `k² = ω² − m_eff²`; the left condition fixes `(A, B)` and the right one
//! gives a scalar characteristic function of `ω` whose roots are the
//! eigenvalues.  Because the boundary conditions depend on `ω`, the positive
//! and negative branches are solved separately.
//!
//! Bands are labelled by the static mode they continue into as the wall
//! velocities are switched off; this is how the solver picks "the first N"
//! roots of each branch.  Roots with no static counterpart (a small
//! velocity-induced root near `ω ≈ ±Δv/L`) are not part of any band.

use crate::error::{Error, Result};
use crate::field::{BoundaryCondition, FieldParams};
use crate::metric::F_EPSILON;
use crate::quadrature::GaussLegendre;

use super::trajectory::{BoundaryTrajectory, WallState};

/// Relative tolerance of the root refinement.
pub const ROOT_TOLERANCE: f64 = 1e-13;

/// Number of velocity-continuation steps used for a cold solve.
const HOMOTOPY_STEPS: usize = 8;

/// Maximum number of step halvings of the velocity continuation.
const HOMOTOPY_MAX_REFINE: usize = 6;

/// `m_eff² = m² + F`; `F` regularises the massless case.
pub fn effective_mass_squared(params: &FieldParams) -> f64 {
    let m2 = params.mass() * params.mass();
    if m2 > 0.0 {
        m2
    } else {
        F_EPSILON
    }
}

/// `(cos(ks), sin(ks)/k)` for `k² = k2`, analytic through `k² = 0` and into
/// the evanescent region `k² < 0`.
pub(crate) fn trig_pair(k2: f64, s: f64) -> (f64, f64) {
    let z = k2 * s * s;
    if z.abs() < 1e-4 {
        let c = 1.0 - z / 2.0 + z * z / 24.0 - z * z * z / 720.0;
        let sn = s * (1.0 - z / 6.0 + z * z / 120.0 - z * z * z / 5040.0);
        (c, sn)
    } else if k2 > 0.0 {
        let k = k2.sqrt();
        let (sin, cos) = (k * s).sin_cos();
        (cos, sin / k)
    } else {
        let kappa = (-k2).sqrt();
        ((kappa * s).cosh(), (kappa * s).sinh() / kappa)
    }
}

/// The instantaneous problem with the walls frozen at one state.
#[derive(Debug, Clone, Copy)]
pub(crate) struct FrozenProblem {
    pub length: f64,
    pub v_minus: f64,
    pub v_plus: f64,
    pub m_eff2: f64,
    pub bc: BoundaryCondition,
}

impl FrozenProblem {
    pub fn new(state: &WallState, m_eff2: f64, bc: BoundaryCondition) -> Self {
        Self { length: state.length(), v_minus: state.v_minus, v_plus: state.v_plus, m_eff2, bc }
    }

    /// Unnormalised `(A, B)` satisfying the left boundary condition.
    pub fn left_coefficients(&self, omega: f64) -> (f64, f64) {
        match self.bc {
            BoundaryCondition::Neumann => (1.0, -omega * self.v_minus),
            BoundaryCondition::Dirichlet if self.v_minus == 0.0 => (0.0, 1.0),
            BoundaryCondition::Dirichlet => (-self.v_minus, omega),
        }
    }

    /// Residual of the right boundary condition for the left-satisfying
    /// solution; its zeros are the eigenvalues.
    pub fn characteristic(&self, omega: f64) -> f64 {
        let k2 = omega * omega - self.m_eff2;
        let (c, sn) = trig_pair(k2, self.length);
        let (a, b) = self.left_coefficients(omega);
        let psi = a * c + b * sn;
        let dpsi = -k2 * a * sn + b * c;
        match self.bc {
            BoundaryCondition::Neumann => dpsi + omega * self.v_plus * psi,
            BoundaryCondition::Dirichlet => omega * psi + self.v_plus * dpsi,
        }
    }
}

/// Brent's method on a bracket with `f(a)·f(b) ≤ 0`.
pub(crate) fn brent<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, rel_tol: f64) -> Option<f64> {
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return None;
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * rel_tol * b.abs().max(f64::MIN_POSITIVE);
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol || fb == 0.0 {
            return Some(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(xm) };
        fb = f(b);
    }
    Some(b)
}

/// Roots of `f` on `[lo, hi]` located by sign changes on a uniform grid of
/// `samples` intervals and refined to [`ROOT_TOLERANCE`].
pub(crate) fn scan_sign_changes<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    let samples = samples.max(1);
    let h = (hi - lo) / samples as f64;
    let mut roots = Vec::new();
    let mut x0 = lo;
    let mut f0 = f(x0);
    for i in 1..=samples {
        let x1 = lo + h * i as f64;
        let f1 = f(x1);
        if f0 == 0.0 {
            roots.push(x0);
        } else if f0.signum() != f1.signum() && f1 != 0.0 {
            if let Some(r) = brent(&f, x0, x1, ROOT_TOLERANCE) {
                roots.push(r);
            }
        }
        x0 = x1;
        f0 = f1;
    }
    if f0 == 0.0 {
        roots.push(x0);
    }
    roots
}

/// One signed eigenpair of the instantaneous problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstantaneousMode {
    /// Band label: the static index this branch continues.
    pub label: usize,
    /// Signed eigenvalue `ω`.
    pub omega: f64,
    /// `k² = ω² − m_eff²`.
    pub k2: f64,
    /// Normalised coefficient of `cos(k(x − x₋))`.
    pub a: f64,
    /// Normalised coefficient of `sin(k(x − x₋))/k`.
    pub b: f64,
}

impl InstantaneousMode {
    /// `ω² < m_eff²`: the profile is built from `cosh`/`sinh`.
    pub fn is_evanescent(&self) -> bool {
        self.k2 < 0.0
    }

    /// `(Ψ, Ψ')` at offset `s = x − x₋`.
    pub fn eval_offset(&self, s: f64) -> (f64, f64) {
        let (c, sn) = trig_pair(self.k2, s);
        (self.a * c + self.b * sn, -self.k2 * self.a * sn + self.b * c)
    }
}

/// All `2N` eigenpairs at one instant, ordered as the positive branch
/// (bands ascending) followed by the negative branch (bands ascending).
#[derive(Debug, Clone, PartialEq)]
pub struct InstantaneousBasis {
    time: f64,
    state: WallState,
    bc: BoundaryCondition,
    m_eff2: f64,
    modes: Vec<InstantaneousMode>,
}

impl InstantaneousBasis {
    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn state(&self) -> WallState {
        self.state
    }

    pub fn bc(&self) -> BoundaryCondition {
        self.bc
    }

    /// `m_eff² = m² + F`.
    pub fn effective_mass_squared(&self) -> f64 {
        self.m_eff2
    }

    /// Number of bands `N` (the basis holds `2N` entries).
    pub fn bands(&self) -> usize {
        self.modes.len() / 2
    }

    /// `2N`.
    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn modes(&self) -> &[InstantaneousMode] {
        &self.modes
    }

    /// Band labels of the positive branch.
    pub fn labels(&self) -> Vec<usize> {
        self.modes[..self.bands()].iter().map(|m| m.label).collect()
    }

    /// `+1` for positive-branch entries, `−1` for negative ones.
    pub fn branch_sign(&self, i: usize) -> f64 {
        if i < self.bands() {
            1.0
        } else {
            -1.0
        }
    }

    /// Signed eigenvalues in basis order.
    pub fn signed_frequencies(&self) -> Vec<f64> {
        self.modes.iter().map(|m| m.omega).collect()
    }

    /// `(Ψ_i(x), Ψ_i'(x))`.
    pub fn eval(&self, i: usize, x: f64) -> (f64, f64) {
        self.modes[i].eval_offset(x - self.state.x_minus)
    }

    /// `∫[(m_eff² + ω_i ω_j)Ψ_iΨ_j + Ψ_i'Ψ_j'] dx`.
    pub fn custom_inner(&self, i: usize, j: usize, rule: &GaussLegendre) -> f64 {
        custom_inner(&self.modes[i], &self.modes[j], self.m_eff2, self.state.length(), rule)
    }

    /// `max_ij |⟨Ψ_i, Ψ_j⟩ − |ω_i| δ_ij|` for the custom inner product.
    pub fn orthonormality_residual(&self, points: usize) -> Result<f64> {
        let rule = GaussLegendre::new(points)?;
        let mut worst: f64 = 0.0;
        for i in 0..self.len() {
            for j in 0..self.len() {
                let target = if i == j { self.modes[i].omega.abs() } else { 0.0 };
                worst = worst.max((self.custom_inner(i, j, &rule) - target).abs());
            }
        }
        Ok(worst)
    }
}

fn custom_inner(a: &InstantaneousMode, b: &InstantaneousMode, m_eff2: f64, length: f64, rule: &GaussLegendre) -> f64 {
    let w = a.omega * b.omega;
    rule.integrate(0.0, length, |s| {
        let (pa, da) = a.eval_offset(s);
        let (pb, db) = b.eval_offset(s);
        (m_eff2 + w) * pa * pb + da * db
    })
}

/// Band labels of the first `bands` static modes.
pub fn band_labels(params: &FieldParams, bc: BoundaryCondition, bands: usize) -> Vec<usize> {
    let first = match bc {
        BoundaryCondition::Dirichlet => 1,
        BoundaryCondition::Neumann if params.mass() > 0.0 => 0,
        BoundaryCondition::Neumann => 1,
    };
    (first..first + bands).collect()
}

/// Static eigenvalue of band `label` on an interval of length `length`.
fn static_frequency(label: usize, length: f64, m_eff2: f64) -> f64 {
    let k = std::f64::consts::PI * label as f64 / length;
    (k * k + m_eff2).sqrt()
}

/// Refines each guess (all of one sign, ascending in magnitude) to a root of
/// `problem`, searching inside a window that cannot reach the neighbouring
/// guesses.
fn track(problem: &FrozenProblem, guesses: &[f64], t: f64) -> Result<Vec<f64>> {
    let f = |w: f64| problem.characteristic(w);
    let mut out = Vec::with_capacity(guesses.len());
    for (i, &g) in guesses.iter().enumerate() {
        let below = if i == 0 { g.abs() } else { (g - guesses[i - 1]).abs() };
        let above = if i + 1 < guesses.len() { (guesses[i + 1] - g).abs() } else { below };
        let half = 0.45 * below.min(above);
        let fg = f(g);
        if fg == 0.0 {
            out.push(g);
            continue;
        }
        let steps = 24;
        let h = half / steps as f64;
        let mut found = None;
        for j in 1..=steps {
            // Alternate sides so the root nearest to the guess wins.
            let (lo_l, hi_l) = (g - h * j as f64, g - h * (j - 1) as f64);
            let (lo_r, hi_r) = (g + h * (j - 1) as f64, g + h * j as f64);
            let (fl, fr) = (f(lo_l), f(hi_r));
            let fl_hi = f(hi_l);
            let fr_lo = f(lo_r);
            if fl.signum() != fl_hi.signum() || fl == 0.0 {
                found = brent(f, lo_l, hi_l, ROOT_TOLERANCE);
                break;
            }
            if fr.signum() != fr_lo.signum() || fr == 0.0 {
                found = brent(f, lo_r, hi_r, ROOT_TOLERANCE);
                break;
            }
        }
        match found {
            Some(r) if r != 0.0 => out.push(r),
            _ => {
                return Err(Error::Solver {
                    t,
                    reason: format!(
                        "no sign change of the characteristic function in [{:.6e}, {:.6e}] around guess {g:.6e} \
                         (L = {:.6e}, v₋ = {:.6e}, v₊ = {:.6e})",
                        g - half,
                        g + half,
                        problem.length,
                        problem.v_minus,
                        problem.v_plus
                    ),
                })
            }
        }
    }
    Ok(out)
}

/// Both branches at full velocity, reached from the static spectrum by
/// switching on the wall velocities in steps.
fn solve_roots_cold(state: &WallState, m_eff2: f64, bc: BoundaryCondition, labels: &[usize], t: f64) -> Result<Vec<f64>> {
    let length = state.length();
    let statics: Vec<f64> = labels.iter().map(|&n| static_frequency(n, length, m_eff2)).collect();
    if state.is_static() {
        // The static roots are known in closed form.
        let mut out = statics.clone();
        out.extend(statics.iter().map(|w| -w));
        return Ok(out);
    }
    let mut last_err = None;
    for refine in 0..=HOMOTOPY_MAX_REFINE {
        let steps = HOMOTOPY_STEPS << refine;
        let mut plus = statics.clone();
        let mut minus: Vec<f64> = statics.iter().map(|w| -w).collect();
        let mut ok = true;
        for s in 1..=steps {
            let lambda = s as f64 / steps as f64;
            let problem = FrozenProblem::new(&state.with_scaled_velocities(lambda), m_eff2, bc);
            match (track(&problem, &plus, t), track(&problem, &minus, t)) {
                (Ok(p), Ok(m)) => {
                    plus = p;
                    minus = m;
                }
                (Err(e), _) | (_, Err(e)) => {
                    last_err = Some(e);
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            plus.extend(minus);
            return Ok(plus);
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Solver { t, reason: "velocity continuation failed".into() }))
}

/// Builds normalised, sign-fixed modes from the roots.
fn build_modes(
    state: &WallState,
    m_eff2: f64,
    bc: BoundaryCondition,
    labels: &[usize],
    roots: &[f64],
    t: f64,
) -> Result<Vec<InstantaneousMode>> {
    let problem = FrozenProblem::new(state, m_eff2, bc);
    let length = state.length();
    let max_label = labels.iter().copied().max().unwrap_or(0);
    let rule = GaussLegendre::new(2 * max_label + 48)?;
    let bands = labels.len();
    let mut modes = Vec::with_capacity(roots.len());
    for (i, &omega) in roots.iter().enumerate() {
        let label = labels[i % bands];
        let (a, b) = problem.left_coefficients(omega);
        let mut mode = InstantaneousMode { label, omega, k2: omega * omega - m_eff2, a, b };
        let q = custom_inner(&mode, &mode, m_eff2, length, &rule);
        if !(q.is_finite() && q > 0.0) {
            return Err(Error::Solver {
                t,
                reason: format!("non-positive custom norm {q:.6e} for band {label} at ω = {omega:.6e}"),
            });
        }
        let scale = (omega.abs() / q).sqrt();
        mode.a *= scale;
        mode.b *= scale;
        // Sign: positive overlap with the static profile of the same band on
        // the current interval.
        let kn = std::f64::consts::PI * label as f64 / length;
        let overlap = rule.integrate(0.0, length, |s| {
            let r = match bc {
                BoundaryCondition::Dirichlet => (kn * s).sin(),
                BoundaryCondition::Neumann => (kn * s).cos(),
            };
            mode.eval_offset(s).0 * r
        });
        if overlap < 0.0 {
            mode.a = -mode.a;
            mode.b = -mode.b;
        }
        modes.push(mode);
    }
    Ok(modes)
}

fn assemble(
    state: WallState,
    params: &FieldParams,
    bc: BoundaryCondition,
    labels: &[usize],
    roots: Vec<f64>,
    t: f64,
) -> Result<InstantaneousBasis> {
    let m_eff2 = effective_mass_squared(params);
    let modes = build_modes(&state, m_eff2, bc, labels, &roots, t)?;
    Ok(InstantaneousBasis { time: t, state, bc, m_eff2, modes })
}

/// Solves the eigenproblem for the walls frozen at `state`.
pub fn solve_state(
    state: WallState,
    params: &FieldParams,
    bc: BoundaryCondition,
    bands: usize,
    t: f64,
) -> Result<InstantaneousBasis> {
    if bands == 0 {
        return Err(Error::InvalidArgument("at least one band is required".into()));
    }
    state.validate(t)?;
    let labels = band_labels(params, bc, bands);
    let m_eff2 = effective_mass_squared(params);
    let roots = solve_roots_cold(&state, m_eff2, bc, &labels, t)?;
    assemble(state, params, bc, &labels, roots, t)
}

/// First `bands` eigenpairs of each branch at time `t`.
pub fn solve_instantaneous_basis(
    traj: &BoundaryTrajectory,
    params: &FieldParams,
    bc: BoundaryCondition,
    t: f64,
    bands: usize,
) -> Result<InstantaneousBasis> {
    let state = traj.state(t)?;
    solve_state(state, params, bc, bands, t)
}

/// Solves at a nearby state using the eigenvalues of `previous` as guesses;
/// falls back to a cold solve when tracking fails.
pub fn continue_basis(
    previous: &InstantaneousBasis,
    state: WallState,
    params: &FieldParams,
    t: f64,
) -> Result<InstantaneousBasis> {
    state.validate(t)?;
    let bands = previous.bands();
    let labels = previous.labels();
    let problem = FrozenProblem::new(&state, previous.m_eff2, previous.bc);
    let freqs = previous.signed_frequencies();
    let tracked = track(&problem, &freqs[..bands], t).and_then(|mut p| {
        p.extend(track(&problem, &freqs[bands..], t)?);
        Ok(p)
    });
    let roots = match tracked {
        Ok(r) => r,
        Err(_) => solve_roots_cold(&state, previous.m_eff2, previous.bc, &labels, t)?,
    };
    assemble(state, params, previous.bc, &labels, roots, t)
}

/// The characteristic function at a frozen wall state (exposed for root
/// scans and diagnostics).
pub fn characteristic(state: &WallState, params: &FieldParams, bc: BoundaryCondition, omega: f64) -> f64 {
    FrozenProblem::new(state, effective_mass_squared(params), bc).characteristic(omega)
}

/// All roots of the characteristic function in `[lo, hi]`, located by sign
/// changes on a grid of `samples` intervals.
pub fn scan_roots(
    state: &WallState,
    params: &FieldParams,
    bc: BoundaryCondition,
    lo: f64,
    hi: f64,
    samples: usize,
) -> Vec<f64> {
    let problem = FrozenProblem::new(state, effective_mass_squared(params), bc);
    scan_sign_changes(|w| problem.characteristic(w), lo, hi, samples)
}
