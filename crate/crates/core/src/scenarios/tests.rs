use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::signal::PhaseForm;
use crate::staticmodes::{basis_from_indices, solve_interval_modes, CavityGeometry};

const VARIANTS: [DceVariant; 3] = [DceVariant::RightOnly, DceVariant::Breathing, DceVariant::Shaking];
const BCS: [BoundaryCondition; 2] = [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann];

fn cube_block(lengths: [f64; 3], mass: f64, bc: BoundaryCondition) -> StaticBasis {
    let mut idx = Vec::new();
    for n in 1..=3 {
        for m in 1..=3 {
            for l in 1..=3 {
                idx.push(vec![n, m, l]);
            }
        }
    }
    let [lx, ly, lz] = lengths;
    basis_from_indices(CavityGeometry::Box { lx, ly, lz }, &FieldParams::minimal(mass).unwrap(), bc, &idx).unwrap()
}

#[test]
fn dce_quadrature_matches_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for variant in VARIANTS {
        for bc in BCS {
            for _ in 0..5 {
                let l = rng.gen_range(0.5..5.0);
                let mass = rng.gen_range(0.0..2.0);
                let omega = rng.gen_range(0.5..6.0);
                let scn = build_dce(&DceConfig::new(variant, l, mass, bc, 1e-3, omega)).unwrap();
                let basis = solve_interval_modes(l, &scn.params, bc, 6).unwrap();
                let r = regress_couplings(&scn.spec, &basis, &scn.predictor).unwrap();
                assert!(r.max_relative_error < 1e-8, "{variant:?} {} L={l} m={mass}: {r:?}", bc.name());
                assert!(r.max_zero_residual < 1e-12, "{variant:?} {}: {r:?}", bc.name());
            }
        }
    }
}

#[test]
fn dce_predictor_matches_hand_values() {
    // Right wall, Dirichlet, L = π, massless: ω_n = n, C_12 = −1, so
    // Δα̂_12 = −i(−1)(1·2)/(2√2) sin Ωt = (i/√2) sin Ωt.
    let scn = build_dce(&DceConfig::new(DceVariant::RightOnly, PI, 0.0, BoundaryCondition::Dirichlet, 1e-3, 3.0)).unwrap();
    let a = scn.predictor.alpha(&[1], &[2]).unwrap();
    let b = scn.predictor.beta(&[1], &[2]).unwrap();
    let expected = Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
    assert!((a.amplitude(3.0, PhaseForm::Sin) - expected).norm() < 1e-15);
    assert!((b.amplitude(3.0, PhaseForm::Sin) + expected).norm() < 1e-15);
}

#[test]
fn dce_selection_rules() {
    for bc in BCS {
        let breathing = build_dce(&DceConfig::new(DceVariant::Breathing, 1.3, 0.4, bc, 1e-3, 2.0)).unwrap();
        let shaking = build_dce(&DceConfig::new(DceVariant::Shaking, 1.3, 0.4, bc, 1e-3, 2.0)).unwrap();
        for n in 1..6 {
            for m in 1..6 {
                let (a, b) = (&[n][..], &[m][..]);
                if (n + m) % 2 == 1 {
                    assert!(breathing.predictor.alpha(a, b).unwrap().is_zero());
                    assert!(breathing.predictor.beta(a, b).unwrap().is_zero());
                } else {
                    assert!(shaking.predictor.alpha(a, b).unwrap().is_zero());
                    assert!(shaking.predictor.beta(a, b).unwrap().is_zero());
                }
            }
        }
    }
}

#[test]
fn neumann_zero_mode_handling() {
    // Massless: the n = 0 mode is not part of the spectrum and is rejected,
    // while the rest of the predictor is finite.
    let massless =
        build_dce(&DceConfig::new(DceVariant::RightOnly, 2.0, 0.0, BoundaryCondition::Neumann, 1e-3, 1.5)).unwrap();
    assert!(massless.predictor.alpha(&[0], &[1]).is_err());
    let a = massless.predictor.alpha(&[1], &[3]).unwrap();
    assert!(a.max_amplitude().is_finite() && a.max_amplitude() > 0.0);
    // Massive: the n = 0 mode carries the reduced normalisation and still
    // matches the quadrature.
    let massive =
        build_dce(&DceConfig::new(DceVariant::Breathing, 2.0, 0.9, BoundaryCondition::Neumann, 1e-3, 1.5)).unwrap();
    let basis = solve_interval_modes(2.0, &massive.params, BoundaryCondition::Neumann, 5).unwrap();
    assert_eq!(basis.mode(0).unwrap().index(), &[0]);
    let r = regress_couplings(&massive.spec, &basis, &massive.predictor).unwrap();
    assert!(r.max_relative_error < 1e-8, "{r:?}");
}

#[test]
fn dce_trajectories_linearise_to_the_displacements() {
    let eps = 1e-6;
    for variant in VARIANTS {
        let scn = build_dce(&DceConfig::new(variant, 1.7, 0.0, BoundaryCondition::Dirichlet, eps, 2.3)).unwrap();
        for t in [0.1, 0.7, 2.9] {
            for (face, wall, outward) in [
                (Face { axis: 0, side: Side::Plus }, scn.trajectory.plus(), 1.0),
                (Face { axis: 0, side: Side::Minus }, scn.trajectory.minus(), -1.0),
            ] {
                let dx = scn.spec.displacement(face, t, &[0.0]);
                let moved = outward * (wall.position(t) - wall.rest());
                assert!((moved / eps - dx).abs() < 1e-9, "{variant:?} at t = {t}");
                let h = 1e-5;
                let d_dx = (scn.spec.displacement(face, t + h, &[0.0]) - scn.spec.displacement(face, t - h, &[0.0])) / (2.0 * h);
                assert!((outward * wall.velocity(t) / eps - d_dx).abs() < 1e-6);
            }
        }
    }
}

#[test]
fn gw_quadrature_matches_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for bc in BCS {
        for _ in 0..3 {
            let lengths = [rng.gen_range(0.5..3.0), rng.gen_range(0.5..3.0), rng.gen_range(0.5..3.0)];
            let omega = rng.gen_range(0.5..6.0);
            let scn = build_gw(&GwConfig::new(lengths, bc, 1e-3, omega, 12.0)).unwrap();
            let basis = cube_block(lengths, 0.0, bc);
            let r = regress_couplings(&scn.spec, &basis, &scn.predictor).unwrap();
            assert!(r.max_relative_error < 1e-8, "{} {lengths:?}: {r:?}", bc.name());
            assert!(r.max_zero_residual < 1e-12, "{}: {r:?}", bc.name());
            assert!(r.max_diagonal_beta < 1e-10, "{}: {r:?}", bc.name());
        }
    }
}

#[test]
fn gw_couplings_conserve_the_z_index() {
    let scn = build_gw(&GwConfig::new([1.0, 1.2, 0.8], BoundaryCondition::Dirichlet, 1e-3, 2.0, 12.0)).unwrap();
    assert!(scn.predictor.alpha(&[1, 1, 1], &[3, 1, 2]).unwrap().is_zero());
    assert!(scn.predictor.beta(&[1, 2, 1], &[1, 2, 3]).unwrap().is_zero());
    assert!(!scn.predictor.alpha(&[1, 1, 2], &[3, 1, 2]).unwrap().is_zero());
}

#[test]
fn gw_metric_only_part_is_the_diagonal_beta_source() {
    for bc in BCS {
        let scn = build_gw(&GwConfig::new([1.0, 1.4, 0.9], bc, 1e-3, 2.5, 12.0)).unwrap();
        let idx = [2, 1, 1];
        let metric = scn.predictor.beta_metric_only(&idx, &idx).unwrap();
        let (kx, ky) = (2.0 * PI, PI / 1.4);
        let w = (kx * kx + ky * ky + (PI / 0.9).powi(2)).sqrt();
        let expected = Complex64::new(0.0, (kx * kx - ky * ky) / (2.0 * w));
        assert!((metric.amplitude(2.5, PhaseForm::Sin) - expected).norm() < 1e-12);
        // The diagonal Δβ̂ is zero: the wall term cancels the metric term.
        assert!(scn.predictor.beta(&idx, &idx).unwrap().max_amplitude() < 1e-12);
        assert!(scn.predictor.beta_metric_only(&idx, &[1, 1, 1]).unwrap().is_zero());
    }
}

#[test]
fn gw_rigid_walls_keep_proper_lengths() {
    let cfg = GwConfig::new([1.3, 0.7, 1.0], BoundaryCondition::Dirichlet, 1e-2, 3.0, 12.0);
    for t in [0.0, 0.3, 1.1, 2.0] {
        let s = cfg.epsilon * (cfg.omega_drive * t).sin();
        let [xp, yp] = gw_wall_positions(&cfg, t);
        assert!(((1.0 + s).sqrt() * 2.0 * xp - cfg.lengths[0]).abs() < 1e-14);
        assert!(((1.0 - s).sqrt() * 2.0 * yp - cfg.lengths[1]).abs() < 1e-14);
        // The linearised wall displacements differ at O(ε²).
        let scn = build_gw(&cfg).unwrap();
        let dx = scn.spec.displacement(Face { axis: 0, side: Side::Plus }, t, &[xp, 0.0, 0.0]);
        assert!((xp - 0.5 * cfg.lengths[0] - cfg.epsilon * dx).abs() < cfg.epsilon.powi(2));
    }
}

#[test]
fn wrong_sign_is_detected() {
    let scn = build_dce(&DceConfig::new(DceVariant::RightOnly, PI, 0.0, BoundaryCondition::Dirichlet, 1e-3, 3.0)).unwrap();
    let basis = solve_interval_modes(PI, &scn.params, BoundaryCondition::Dirichlet, 4).unwrap();
    let r = regress_couplings(&scn.spec, &basis, &Negated(scn.predictor)).unwrap();
    assert!((r.max_relative_error - 2.0).abs() < 1e-8);
}

#[test]
fn predicted_matrix_covers_the_basis() {
    let scn = build_gw(&GwConfig::new([PI, PI, PI], BoundaryCondition::Dirichlet, 1e-3, 2.0, 3.5)).unwrap();
    let m = predicted_matrix(&scn.predictor, &scn.basis).unwrap();
    assert_eq!(m.size(), scn.basis.len());
}

#[test]
fn scenario_names_round_trip() {
    for kind in ScenarioKind::ALL {
        assert_eq!(kind.name().parse::<ScenarioKind>().unwrap(), kind);
    }
    assert!("dce-iv".parse::<ScenarioKind>().is_err());
    assert_eq!(DceVariant::Shaking.kind().dce_variant(), Some(DceVariant::Shaking));
    assert_eq!(ScenarioKind::GwRigid.dim(), 3);
}

#[test]
fn large_epsilon_warns_and_bad_config_fails() {
    let scn = build_dce(&DceConfig::new(DceVariant::RightOnly, 1.0, 0.0, BoundaryCondition::Dirichlet, 0.2, 3.0)).unwrap();
    assert_eq!(scn.warnings.len(), 1);
    assert!(build_dce(&DceConfig::new(DceVariant::RightOnly, -1.0, 0.0, BoundaryCondition::Dirichlet, 0.01, 3.0)).is_err());
    assert!(build_gw(&GwConfig::new([1.0, 0.0, 1.0], BoundaryCondition::Dirichlet, 0.01, 3.0, 4.0)).is_err());
}
