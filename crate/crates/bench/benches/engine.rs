use std::f64::consts::PI;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use kgcavity::exact1d::{assemble_vhat, solve_state, WallState};
use kgcavity::perturb::{bogoliubov_perturbative, CouplingMatrix, CouplingOptions};
use kgcavity::scenarios::{build_dce, build_gw, DceConfig, DceVariant, GwConfig};
use kgcavity::staticmodes::{solve_box_modes, solve_interval_modes};
use kgcavity::{evolve_transformation, BoundaryCondition, Envelope, EvolveOptions, FieldParams};

fn static_modes(c: &mut Criterion) {
    let p = FieldParams::minimal(0.5).unwrap();
    c.bench_function("interval_modes_64", |b| {
        b.iter(|| solve_interval_modes(black_box(PI), &p, BoundaryCondition::Neumann, 64).unwrap())
    });
    c.bench_function("box_modes_cutoff_10", |b| {
        b.iter(|| solve_box_modes(black_box([PI, 1.3, 2.0]), &p, BoundaryCondition::Dirichlet, 10.0).unwrap())
    });
}

fn couplings(c: &mut Criterion) {
    let dce = build_dce(&DceConfig::new(DceVariant::Breathing, PI, 0.0, BoundaryCondition::Dirichlet, 1e-3, 3.0)).unwrap();
    let basis = solve_interval_modes(PI, &dce.params, BoundaryCondition::Dirichlet, 12).unwrap();
    c.bench_function("dce_coupling_matrix_12", |b| {
        b.iter(|| CouplingMatrix::build(&dce.spec, &basis, &CouplingOptions::default()).unwrap())
    });
    let gw = build_gw(&GwConfig::new([PI, PI, PI], BoundaryCondition::Dirichlet, 1e-3, 2.0, 4.0)).unwrap();
    c.bench_function("gw_coupling_matrix_cutoff_4", |b| {
        b.iter(|| CouplingMatrix::build(&gw.spec, &gw.basis, &CouplingOptions::default()).unwrap())
    });
    let m = CouplingMatrix::build(&dce.spec, &basis, &CouplingOptions::default()).unwrap();
    c.bench_function("perturbative_bogoliubov_12", |b| {
        b.iter(|| bogoliubov_perturbative(&m, &basis, 1e-3, 0.0, black_box(50.0)).unwrap())
    });
}

fn instantaneous(c: &mut Criterion) {
    let p = FieldParams::minimal(0.0).unwrap();
    let state = WallState { x_minus: -1.5, x_plus: 1.6, v_minus: -0.05, v_plus: 0.1 };
    c.bench_function("instantaneous_basis_12", |b| {
        b.iter(|| solve_state(black_box(state), &p, BoundaryCondition::Dirichlet, 12, 0.0).unwrap())
    });
    let dce = build_dce(&DceConfig::new(DceVariant::RightOnly, PI, 0.0, BoundaryCondition::Dirichlet, 1e-2, 3.0)).unwrap();
    let basis = kgcavity::solve_instantaneous_basis(&dce.trajectory, &p, BoundaryCondition::Dirichlet, 0.3, 12).unwrap();
    c.bench_function("vhat_assembly_12", |b| {
        b.iter(|| assemble_vhat(&dce.trajectory, &p, BoundaryCondition::Dirichlet, black_box(0.3), &basis, 1e-3).unwrap())
    });
}

fn exact_evolution(c: &mut Criterion) {
    let tf = 2.0 * PI / 3.0;
    let cfg = DceConfig::new(DceVariant::RightOnly, PI, 0.0, BoundaryCondition::Dirichlet, 1e-3, 3.0)
        .with_envelope(Envelope::Hann { start: 0.0, duration: tf });
    let dce = build_dce(&cfg).unwrap();
    let opts = EvolveOptions::new(0.02);
    let mut group = c.benchmark_group("exact");
    group.sample_size(10);
    group.bench_function("evolve_one_period_6_bands", |b| {
        b.iter(|| evolve_transformation(&dce.trajectory, &dce.params, BoundaryCondition::Dirichlet, 0.0, tf, 6, &opts).unwrap())
    });
    group.finish();
}

criterion_group!(benches, static_modes, couplings, instantaneous, exact_evolution);
criterion_main!(benches);
