//! Fixed-step RK4 integration of `dU/dt = M V̂(t) M* U`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{BoundaryCondition, FieldParams};
use crate::perturb::identity_residual;

use super::eigen::{continue_basis, solve_instantaneous_basis, InstantaneousBasis};
use super::trajectory::BoundaryTrajectory;
use super::vhat::{assemble_vhat, rotate_generator};

/// Largest admissible `‖dt · M V̂ M*‖∞` (an upper bound on its spectral
/// radius).
pub const STABILITY_LIMIT: f64 = 1.5;

/// How the ODE is integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Integrator {
    /// RK4 on `U` itself.
    Direct,
    /// RK4 on `Q = e^{−iΩ_ref(t−t0)} U`, which removes the zeroth-order
    /// phase rotation; `Ω_ref` holds the signed eigenvalues at `t0`.
    #[default]
    PhaseAbsorbed,
}

/// Step control of [`evolve_transformation`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveOptions {
    /// Requested RK4 step; the window is split into `⌈Δt/dt⌉` equal steps.
    pub dt: f64,
    /// Finite-difference step for `dΨ/dt`, `dω/dt`; `dt/10` when `None`.
    pub dt_fd: Option<f64>,
    pub integrator: Integrator,
    /// Store `U` every this many steps (the final state is always returned).
    pub checkpoint_every: Option<usize>,
}

impl EvolveOptions {
    pub fn new(dt: f64) -> Self {
        Self { dt, dt_fd: None, integrator: Integrator::default(), checkpoint_every: None }
    }

    pub fn with_dt_fd(mut self, dt_fd: f64) -> Self {
        self.dt_fd = Some(dt_fd);
        self
    }

    pub fn with_integrator(mut self, integrator: Integrator) -> Self {
        self.integrator = integrator;
        self
    }

    pub fn with_checkpoints(mut self, every: usize) -> Self {
        self.checkpoint_every = Some(every);
        self
    }
}

/// `U` at an intermediate time.
#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    pub t: f64,
    pub u: DMatrix<Complex64>,
}

/// Result of an evolution: `U(t_current, t0)` in the block order
/// (positive branch, negative branch).
#[derive(Debug, Clone, PartialEq)]
pub struct TransformationState {
    pub u: DMatrix<Complex64>,
    pub t0: f64,
    pub t_current: f64,
    pub step_count: usize,
    /// Band labels of the basis.
    pub labels: Vec<usize>,
    /// Signed eigenvalues at `t0`.
    pub initial_frequencies: Vec<f64>,
    /// Signed eigenvalues at `t_current`.
    pub final_frequencies: Vec<f64>,
    /// `true` if both walls are at rest at `t0` and `t_current`, so that the
    /// blocks of `U` are Bogoliubov coefficients between static bases.
    pub endpoints_static: bool,
    pub checkpoints: Vec<Checkpoint>,
}

impl TransformationState {
    /// `U(t0, t0) = I` for `bands` bands.
    pub fn identity(bands: usize, t0: f64) -> Self {
        Self {
            u: DMatrix::identity(2 * bands, 2 * bands),
            t0,
            t_current: t0,
            step_count: 0,
            labels: Vec::new(),
            initial_frequencies: Vec::new(),
            final_frequencies: Vec::new(),
            endpoints_static: true,
            checkpoints: Vec::new(),
        }
    }

    pub fn bands(&self) -> usize {
        self.u.nrows() / 2
    }

    /// `α`: the (positive, positive) block.
    pub fn alpha(&self) -> DMatrix<Complex64> {
        let n = self.bands();
        self.u.view((0, 0), (n, n)).into_owned()
    }

    /// `β`: the (positive, negative) block.
    pub fn beta(&self) -> DMatrix<Complex64> {
        let n = self.bands();
        self.u.view((0, n), (n, n)).into_owned()
    }
}

/// `‖αα† − ββ† − I‖_max` over the truncated block.
pub fn bogoliubov_identity_residual(state: &TransformationState) -> f64 {
    identity_residual(&state.alpha(), &state.beta())
}

/// Evaluates `M V̂ M*` along the trajectory, carrying the basis forward by
/// continuation.
struct Generator<'a> {
    traj: &'a BoundaryTrajectory,
    params: &'a FieldParams,
    bc: BoundaryCondition,
    dt_fd: f64,
    last: InstantaneousBasis,
}

impl Generator<'_> {
    fn at(&mut self, t: f64) -> Result<DMatrix<Complex64>> {
        let basis = if t == self.last.time() {
            self.last.clone()
        } else {
            continue_basis(&self.last, self.traj.state(t)?, self.params, t)?
        };
        let vhat = assemble_vhat(self.traj, self.params, self.bc, t, &basis, self.dt_fd)?;
        self.last = basis;
        Ok(rotate_generator(&vhat))
    }
}

fn max_row_sum(m: &DMatrix<Complex64>) -> f64 {
    m.row_iter().map(|r| r.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// `e^{−iΩτ} A e^{iΩτ}` for diagonal `Ω`.
fn conjugate_by_phases(a: &DMatrix<Complex64>, omega: &[f64], tau: f64) -> DMatrix<Complex64> {
    DMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] * Complex64::from_polar(1.0, -(omega[i] - omega[j]) * tau))
}

/// Integrates the transformation between the instantaneous bases at `t0` and
/// `tf` with `bands` bands per branch.
pub fn evolve_transformation(
    traj: &BoundaryTrajectory,
    params: &FieldParams,
    bc: BoundaryCondition,
    t0: f64,
    tf: f64,
    bands: usize,
    options: &EvolveOptions,
) -> Result<TransformationState> {
    if !(t0.is_finite() && tf.is_finite() && tf > t0) {
        return Err(Error::InvalidArgument(format!("window must satisfy t0 < tf, got [{t0}, {tf}]")));
    }
    if !(options.dt.is_finite() && options.dt > 0.0) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {}", options.dt)));
    }
    let steps = ((tf - t0) / options.dt - 1e-9).ceil().max(1.0) as usize;
    let h = (tf - t0) / steps as f64;
    let dt_fd = options.dt_fd.unwrap_or(h / 10.0);

    let basis0 = solve_instantaneous_basis(traj, params, bc, t0, bands)?;
    let omega_ref = basis0.signed_frequencies();
    let omega_max = omega_ref.iter().fold(0.0f64, |a, w| a.max(w.abs()));
    log::info!(
        "exact evolution: {steps} RK4 steps of {h:.4e} over [{t0}, {tf}], {bands} bands; step guidance dt ≤ {:.4e}",
        0.1 / omega_max
    );
    let labels = basis0.labels();
    let start_static = basis0.state().is_static();
    let mut gen = Generator { traj, params, bc, dt_fd, last: basis0 };

    let size = 2 * bands;
    let i_omega = DMatrix::from_fn(size, size, |i, j| {
        if i == j {
            Complex64::new(0.0, omega_ref[i])
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    // The right-hand side for the integrated variable (U or Q).
    let rhs_matrix = |g: &DMatrix<Complex64>, t: f64| -> DMatrix<Complex64> {
        match options.integrator {
            Integrator::Direct => g.clone(),
            Integrator::PhaseAbsorbed => conjugate_by_phases(&(g - &i_omega), &omega_ref, t - t0),
        }
    };
    let check = |g: &DMatrix<Complex64>, t: f64| -> Result<()> {
        let rho = h * max_row_sum(g);
        if rho > STABILITY_LIMIT {
            Err(Error::Stability(format!(
                "‖dt·M V̂ M*‖ = {rho:.3} exceeds {STABILITY_LIMIT} at t = {t:.6e}; use dt ≤ {:.3e} or fewer bands",
                STABILITY_LIMIT / max_row_sum(g)
            )))
        } else {
            Ok(())
        }
    };

    let mut y = DMatrix::<Complex64>::identity(size, size);
    let mut g_start = gen.at(t0)?;
    check(&g_start, t0)?;
    let mut checkpoints = Vec::new();
    let to_u = |y: &DMatrix<Complex64>, t: f64| -> DMatrix<Complex64> {
        match options.integrator {
            Integrator::Direct => y.clone(),
            Integrator::PhaseAbsorbed => {
                DMatrix::from_fn(size, size, |i, j| Complex64::from_polar(1.0, omega_ref[i] * (t - t0)) * y[(i, j)])
            }
        }
    };
    for step in 0..steps {
        let t = t0 + h * step as f64;
        let t_mid = t + 0.5 * h;
        let t_end = if step + 1 == steps { tf } else { t + h };
        let g_mid = gen.at(t_mid)?;
        let g_end = gen.at(t_end)?;
        check(&g_mid, t_mid)?;
        check(&g_end, t_end)?;
        let (a0, am, a1) = (rhs_matrix(&g_start, t), rhs_matrix(&g_mid, t_mid), rhs_matrix(&g_end, t_end));
        let k1 = &a0 * &y;
        let k2 = &am * (&y + &k1 * Complex64::new(0.5 * h, 0.0));
        let k3 = &am * (&y + &k2 * Complex64::new(0.5 * h, 0.0));
        let k4 = &a1 * (&y + &k3 * Complex64::new(h, 0.0));
        y += (k1 + k2 * Complex64::new(2.0, 0.0) + k3 * Complex64::new(2.0, 0.0) + k4) * Complex64::new(h / 6.0, 0.0);
        g_start = g_end;
        if let Some(every) = options.checkpoint_every {
            if every > 0 && (step + 1) % every == 0 {
                checkpoints.push(Checkpoint { t: t_end, u: to_u(&y, t_end) });
            }
        }
    }
    let final_basis = gen.last;
    Ok(TransformationState {
        u: to_u(&y, tf),
        t0,
        t_current: tf,
        step_count: steps,
        labels,
        initial_frequencies: omega_ref,
        final_frequencies: final_basis.signed_frequencies(),
        endpoints_static: start_static && final_basis.state().is_static(),
        checkpoints,
    })
}
