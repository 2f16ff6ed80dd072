//! The five subcommands, each turning a [`RunConfig`] into a [`Report`].

use std::f64::consts::PI;

use kgcavity::exact1d::{
    evolve_transformation, solve_state, BoundaryTrajectory, EvolveOptions, TransformationState, WallState,
};
use kgcavity::perturb::{
    bogoliubov_perturbative, find_resonances, identity_residual, CouplingMatrix, CouplingOptions, PerturbationSpec,
    ResonanceKind,
};
use kgcavity::scenarios::{
    build_dce, build_gw, regress_couplings, CouplingPredictor, DceConfig, DceScenario, DceVariant, GwConfig, Negated,
    ScenarioKind,
};
use kgcavity::staticmodes::{basis_from_indices, solve_box_modes, solve_interval_modes, CavityGeometry, StaticBasis};
use kgcavity::{BoundaryCondition, Complex64, Envelope, FieldParams};
use nalgebra::DMatrix;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{Cell, Column, ColumnKind, Table};

/// Nominal drive strength used to build couplings when `epsilon = 0`; the
/// couplings are defined per unit `ε`, so its value does not matter.
const NOMINAL_EPSILON: f64 = 1e-3;

/// Result of a command: the table to emit, diagnostics for the warnings
/// channel, and a failure message when a check did not pass.
#[derive(Debug)]
pub struct Report {
    pub table: Table,
    pub warnings: Vec<String>,
    pub failure: Option<String>,
}

impl Report {
    fn ok(table: Table, warnings: Vec<String>) -> Self {
        Self { table, warnings, failure: None }
    }
}

/// Mode multi-index as text, axes separated by `:`.
fn label(index: &[usize]) -> String {
    index.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(":")
}

fn params(cfg: &RunConfig) -> Result<FieldParams, CliError> {
    Ok(FieldParams::minimal(cfg.mass)?)
}

fn coupling_options(cfg: &RunConfig) -> CouplingOptions {
    let mut opts = CouplingOptions::default();
    if let Some(points) = cfg.quadrature_points {
        opts.points = points;
    }
    opts
}

fn dce_scenario(cfg: &RunConfig, variant: DceVariant) -> Result<DceScenario, CliError> {
    let eps = if cfg.epsilon > 0.0 { cfg.epsilon } else { NOMINAL_EPSILON };
    let dce = DceConfig::new(variant, cfg.length, cfg.mass, cfg.bc, eps, cfg.omega_drive).with_envelope(cfg.envelope());
    Ok(build_dce(&dce)?)
}

/// Static basis and perturbation of the configured scenario.
fn perturbed_system(cfg: &RunConfig) -> Result<(StaticBasis, PerturbationSpec, Vec<String>), CliError> {
    let kind = cfg.scenario_kind()?;
    match kind.dce_variant() {
        Some(variant) => {
            let scn = dce_scenario(cfg, variant)?;
            let basis = solve_interval_modes(cfg.length, &scn.params, cfg.bc, cfg.bands)?;
            Ok((basis, scn.spec, scn.warnings))
        }
        None => {
            let eps = if cfg.epsilon > 0.0 { cfg.epsilon } else { NOMINAL_EPSILON };
            let gw = GwConfig::new(cfg.lengths, cfg.bc, eps, cfg.omega_drive, cfg.cutoff)
                .with_mass(cfg.mass)
                .with_envelope(cfg.envelope());
            let scn = build_gw(&gw)?;
            Ok((scn.basis, scn.spec, scn.warnings))
        }
    }
}

/// Unperturbed basis of the configured cavity.
fn static_basis(cfg: &RunConfig) -> Result<StaticBasis, CliError> {
    let p = params(cfg)?;
    Ok(match cfg.scenario_kind()? {
        ScenarioKind::GwRigid => solve_box_modes(cfg.lengths, &p, cfg.bc, cfg.cutoff)?,
        _ => solve_interval_modes(cfg.length, &p, cfg.bc, cfg.bands)?,
    })
}

/// Static spectrum: one row per mode with its indices, wavenumbers and `ω⁰`.
pub fn spectrum(cfg: &RunConfig) -> Result<Report, CliError> {
    let basis = static_basis(cfg)?;
    let dim = basis.geometry().dim();
    let axes: &[&str] = if dim == 1 { &[""] } else { &["x", "y", "z"] };
    let mut columns = vec![Column::new("mode", ColumnKind::Int)];
    columns.extend(axes.iter().map(|a| Column::new(&format!("n{a}"), ColumnKind::Int)));
    columns.extend(axes.iter().map(|a| Column::new(&format!("k{a}"), ColumnKind::Real)));
    columns.push(Column::new("omega", ColumnKind::Real));
    let mut table = Table::new(columns);
    for (i, mode) in basis.modes().iter().enumerate() {
        let mut row: Vec<Cell> = vec![i.into()];
        row.extend(mode.index().iter().map(|&n| Cell::from(n)));
        row.extend(mode.wavenumbers().iter().map(|&k| Cell::from(k)));
        row.push(mode.frequency().into());
        table.push(row);
    }
    Ok(Report::ok(table, Vec::new()))
}

/// Mode pairs within `tolerance` of resonance with the drive.
pub fn resonances(cfg: &RunConfig) -> Result<Report, CliError> {
    let basis = static_basis(cfg)?;
    let mut table = Table::new(vec![
        Column::new("n", ColumnKind::Text),
        Column::new("m", ColumnKind::Text),
        Column::new("kind", ColumnKind::Text),
        Column::new("detuning", ColumnKind::Real),
    ]);
    for r in find_resonances(&basis, cfg.omega_drive, cfg.tolerance)? {
        let kind = match r.kind {
            ResonanceKind::ModeMixing => "mode-mixing",
            ResonanceKind::PairCreation => "pair-creation",
        };
        table.push(vec![Cell::text(label(&r.n_index)), Cell::text(label(&r.m_index)), Cell::text(kind), r.detuning.into()]);
    }
    Ok(Report::ok(table, Vec::new()))
}

fn checkpoint_times(cfg: &RunConfig) -> Vec<f64> {
    (0..=cfg.checkpoints).map(|k| cfg.t0 + (cfg.tf - cfg.t0) * k as f64 / cfg.checkpoints as f64).collect()
}

/// First-order Bogoliubov coefficients over `[t0, t]` at evenly spaced `t`.
pub fn evolve(cfg: &RunConfig) -> Result<Report, CliError> {
    let (basis, spec, mut warnings) = perturbed_system(cfg)?;
    let couplings = CouplingMatrix::build(&spec, &basis, &coupling_options(cfg))?;
    let size = basis.len();
    let mut table = Table::new(vec![
        Column::new("t", ColumnKind::Real),
        Column::new("n", ColumnKind::Text),
        Column::new("m", ColumnKind::Text),
        Column::new("alpha", ColumnKind::Complex),
        Column::new("abs_alpha", ColumnKind::Real),
        Column::new("arg_alpha", ColumnKind::Real),
        Column::new("beta", ColumnKind::Complex),
        Column::new("abs_beta", ColumnKind::Real),
        Column::new("arg_beta", ColumnKind::Real),
    ]);
    let labels: Vec<String> = basis.modes().iter().map(|m| label(m.index())).collect();
    for t in checkpoint_times(cfg) {
        let (alpha, beta) = if cfg.epsilon == 0.0 {
            (DMatrix::identity(size, size), DMatrix::zeros(size, size))
        } else {
            let b = bogoliubov_perturbative(&couplings, &basis, cfg.epsilon, cfg.t0, t)?;
            if t == cfg.tf {
                warnings.extend(b.warnings);
            }
            (b.alpha, b.beta)
        };
        for n in 0..size {
            for m in 0..size {
                let (a, b): (Complex64, Complex64) = (alpha[(n, m)], beta[(n, m)]);
                table.push(vec![
                    t.into(),
                    Cell::text(labels[n].clone()),
                    Cell::text(labels[m].clone()),
                    Cell::complex(a),
                    a.norm().into(),
                    a.arg().into(),
                    Cell::complex(b),
                    b.norm().into(),
                    b.arg().into(),
                ]);
            }
        }
    }
    Ok(Report::ok(table, warnings))
}

fn push_u_rows(table: &mut Table, t: f64, u: &DMatrix<Complex64>) {
    let n = u.nrows() / 2;
    let alpha = u.view((0, 0), (n, n)).into_owned();
    let beta = u.view((0, n), (n, n)).into_owned();
    let residual = identity_residual(&alpha, &beta);
    for i in 0..u.nrows() {
        for j in 0..u.ncols() {
            let z = u[(i, j)];
            table.push(vec![t.into(), i.into(), j.into(), Cell::complex(z), z.norm().into(), residual.into()]);
        }
    }
}

/// Non-perturbative transformation `U(t, t0)` of a one-dimensional scenario.
///
/// Rows and columns `0..N` are the positive-frequency bands, `N..2N` the
/// negative-frequency ones, so `α = U[0..N, 0..N]` and `β = U[0..N, N..2N]`.
pub fn evolve_exact(cfg: &RunConfig) -> Result<Report, CliError> {
    let kind = cfg.scenario_kind()?;
    let Some(variant) = kind.dce_variant() else {
        return Err(CliError::Config(format!(
            "unsupported dimension: evolve-exact handles one-dimensional cavities only, \
             and `{kind}` is {}-dimensional",
            kind.dim()
        )));
    };
    let scn = dce_scenario(cfg, variant)?;
    let mut warnings = scn.warnings.clone();
    let trajectory =
        if cfg.epsilon == 0.0 { BoundaryTrajectory::static_interval(cfg.length)? } else { scn.trajectory.clone() };
    let steps = ((cfg.tf - cfg.t0) / cfg.dt - 1e-9).ceil().max(1.0) as usize;
    let every = steps.div_ceil(cfg.checkpoints);
    let mut opts = EvolveOptions::new(cfg.dt).with_integrator(cfg.integrator.into()).with_checkpoints(every);
    if let Some(dt_fd) = cfg.dt_fd {
        opts = opts.with_dt_fd(dt_fd);
    }
    let state = evolve_transformation(&trajectory, &scn.params, cfg.bc, cfg.t0, cfg.tf, cfg.bands, &opts)?;
    if !state.endpoints_static {
        warnings.push(
            "the walls move at an end of the window: U relates instantaneous bases, \
             not particle-number Bogoliubov coefficients"
                .to_string(),
        );
    }
    let mut table = Table::new(vec![
        Column::new("t", ColumnKind::Real),
        Column::new("row", ColumnKind::Int),
        Column::new("col", ColumnKind::Int),
        Column::new("u", ColumnKind::Complex),
        Column::new("abs_u", ColumnKind::Real),
        Column::new("identity_residual", ColumnKind::Real),
    ]);
    push_u_rows(&mut table, cfg.t0, &DMatrix::identity(2 * cfg.bands, 2 * cfg.bands));
    for c in &state.checkpoints {
        push_u_rows(&mut table, c.t, &c.u);
    }
    if state.checkpoints.last().map_or(true, |c| c.t != state.t_current) {
        push_u_rows(&mut table, state.t_current, &state.u);
    }
    Ok(Report::ok(table, warnings))
}

/// One named pass/fail check of the validation suite.
struct Check {
    name: &'static str,
    value: f64,
    threshold: f64,
    passed: bool,
    detail: String,
}

fn dce_closed_form(inject_sign_error: bool) -> Result<Check, CliError> {
    let mut worst: f64 = 0.0;
    for variant in [DceVariant::RightOnly, DceVariant::Breathing, DceVariant::Shaking] {
        for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
            for (length, mass, omega) in [(0.7, 0.0, 2.3), (PI, 1.3, 3.0), (4.1, 0.4, 5.5)] {
                let scn = build_dce(&DceConfig::new(variant, length, mass, bc, 1e-3, omega))?;
                let basis = solve_interval_modes(length, &scn.params, bc, 6)?;
                let negated = Negated(scn.predictor);
                let predictor: &dyn CouplingPredictor = if inject_sign_error { &negated } else { &scn.predictor };
                let r = regress_couplings(&scn.spec, &basis, predictor)?;
                worst = worst.max(r.max_relative_error).max(r.max_zero_residual);
            }
        }
    }
    let threshold = 1e-8;
    Ok(Check {
        name: "dce-closed-form",
        value: worst,
        threshold,
        passed: worst < threshold,
        detail: "quadrature couplings vs closed forms, 3 configurations × 2 conditions × 3 cavities, 6 modes".into(),
    })
}

fn gw_closed_form() -> Result<Check, CliError> {
    let mut idx = Vec::new();
    for n in 1..=3 {
        for m in 1..=3 {
            for l in 1..=3 {
                idx.push(vec![n, m, l]);
            }
        }
    }
    let (mut worst, mut diag): (f64, f64) = (0.0, 0.0);
    for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
        let lengths = [1.0, 1.3, 0.8];
        let scn = build_gw(&GwConfig::new(lengths, bc, 1e-3, 2.7, 12.0))?;
        let [lx, ly, lz] = lengths;
        let basis = basis_from_indices(CavityGeometry::Box { lx, ly, lz }, &FieldParams::minimal(0.0)?, bc, &idx)?;
        let r = regress_couplings(&scn.spec, &basis, &scn.predictor)?;
        worst = worst.max(r.max_relative_error).max(r.max_zero_residual);
        diag = diag.max(r.max_diagonal_beta);
    }
    let threshold = 1e-8;
    Ok(Check {
        name: "gw-closed-form",
        value: worst,
        threshold,
        passed: worst < threshold && diag < 1e-10,
        detail: format!("quadrature couplings vs closed forms on the 27-mode block; max diagonal |Δβ̂| {diag:.3e}"),
    })
}

fn orthonormality() -> Result<Check, CliError> {
    let state = WallState { x_minus: -1.15, x_plus: 1.15, v_minus: -0.12, v_plus: 0.21 };
    let p = FieldParams::minimal(0.5)?;
    let mut worst: f64 = 0.0;
    for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
        worst = worst.max(solve_state(state, &p, bc, 8, 0.0)?.orthonormality_residual(96)?);
    }
    let threshold = 1e-10;
    Ok(Check {
        name: "orthonormality",
        value: worst,
        threshold,
        passed: worst < threshold,
        detail: "instantaneous basis of moving walls in the conserved inner product".into(),
    })
}

/// Raised-cosine pair-creation drive `Ω = ω₁ + ω₂` of the right wall over
/// `ΩΔt = 50`: exact `|β₁₂|`, first-order `|β₁₂|`, identity residual.
fn hann_pair_creation(eps: f64, bands: usize) -> Result<(f64, f64, f64), CliError> {
    let (length, omega) = (PI, 3.0);
    let tf = 50.0 / omega;
    let envelope = Envelope::Hann { start: 0.0, duration: tf };
    let bc = BoundaryCondition::Dirichlet;
    let scn = build_dce(&DceConfig::new(DceVariant::RightOnly, length, 0.0, bc, eps, omega).with_envelope(envelope))?;
    let state: TransformationState =
        evolve_transformation(&scn.trajectory, &scn.params, bc, 0.0, tf, bands, &EvolveOptions::new(0.02))?;
    let basis = solve_interval_modes(length, &scn.params, bc, bands)?;
    let couplings = CouplingMatrix::build(&scn.spec, &basis, &CouplingOptions::default())?;
    let pert = bogoliubov_perturbative(&couplings, &basis, eps, 0.0, tf)?;
    let residual = identity_residual(&state.alpha(), &state.beta());
    Ok((state.beta()[(0, 1)].norm(), pert.beta[(0, 1)].norm(), residual))
}

fn perturbative_vs_exact() -> Result<Check, CliError> {
    let (exact, pert, _) = hann_pair_creation(1e-3, 8)?;
    let rel = (exact - pert).abs() / pert;
    let threshold = 0.05;
    Ok(Check {
        name: "perturbative-vs-exact",
        value: rel,
        threshold,
        passed: rel < threshold,
        detail: format!("pair creation of modes 1, 2: exact |β₁₂| {exact:.6e}, first order {pert:.6e}"),
    })
}

fn identity_scaling() -> Result<Check, CliError> {
    let eps: [f64; 3] = [1e-2, 1e-3, 1e-4];
    let mut logs = Vec::new();
    for e in eps {
        logs.push((e.log10(), hann_pair_creation(e, 8)?.2.log10()));
    }
    let n = logs.len() as f64;
    let (mx, my) = (logs.iter().map(|p| p.0).sum::<f64>() / n, logs.iter().map(|p| p.1).sum::<f64>() / n);
    let slope = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / logs.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    let deviation = (slope - 2.0).abs();
    Ok(Check {
        name: "identity-residual-scaling",
        value: slope,
        threshold: 0.2,
        passed: deviation <= 0.2,
        detail: format!(
            "log-log slope of ‖αα†−ββ†−I‖ over ε = 1e-2, 1e-3, 1e-4 (residuals {:.3e}, {:.3e}, {:.3e}); target 2 ± 0.2",
            10f64.powf(logs[0].1),
            10f64.powf(logs[1].1),
            10f64.powf(logs[2].1)
        ),
    })
}

/// Regression suite: closed forms vs quadrature, exact vs first order,
/// orthonormality, and (with `sweep`) the identity-residual scaling.
pub fn validate(cfg: &RunConfig) -> Result<Report, CliError> {
    let mut checks = vec![dce_closed_form(cfg.inject_sign_error)?, gw_closed_form()?, orthonormality()?];
    checks.push(perturbative_vs_exact()?);
    if cfg.sweep {
        checks.push(identity_scaling()?);
    }
    let mut table = Table::new(vec![
        Column::new("check", ColumnKind::Text),
        Column::new("passed", ColumnKind::Bool),
        Column::new("value", ColumnKind::Real),
        Column::new("threshold", ColumnKind::Real),
        Column::new("detail", ColumnKind::Text),
    ]);
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
    for c in &checks {
        table.push(vec![Cell::text(c.name), c.passed.into(), c.value.into(), c.threshold.into(), Cell::text(c.detail.clone())]);
    }
    let failure = (!failed.is_empty()).then(|| format!("validation failed: {}", failed.join(", ")));
    Ok(Report { table, warnings: Vec::new(), failure })
}
