//! The generator `V̂(t)` of the transformation ODE and its rotation
//! `M V̂ M*`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{BoundaryCondition, FieldParams};
use crate::metric::F_EPSILON;
use crate::quadrature::GaussLegendre;

use super::eigen::{continue_basis, InstantaneousBasis};
use super::trajectory::BoundaryTrajectory;

/// Minimum normalised overlap between an eigenfunction and its continuation
/// at a neighbouring time.
pub const MIN_CONTINUITY_OVERLAP: f64 = 0.99;

/// Maximum number of halvings of the finite-difference step when the
/// eigenbranches at `t ± dt_fd` cannot be matched.
const MAX_FD_HALVINGS: usize = 8;

/// `F(t)` of the flat interval: zero for a massive field, the positivity
/// floor otherwise.
fn positivity_shift(params: &FieldParams) -> f64 {
    if params.mass() > 0.0 {
        0.0
    } else {
        F_EPSILON
    }
}

/// Normalised `L²` overlaps `⟨Ψ_i^a, Ψ_j^b⟩ / (‖Ψ_i^a‖‖Ψ_j^b‖)` within each
/// branch, evaluated on the intersection of the two intervals.
fn check_continuity(a: &InstantaneousBasis, b: &InstantaneousBasis, rule: &GaussLegendre) -> std::result::Result<(), String> {
    let lo = a.state().x_minus.max(b.state().x_minus);
    let hi = a.state().x_plus.min(b.state().x_plus);
    let (xs, ws) = rule.mapped(lo, hi);
    let n = a.len();
    let sample = |basis: &InstantaneousBasis| -> Vec<Vec<f64>> {
        (0..n).map(|i| xs.iter().map(|&x| basis.eval(i, x).0).collect()).collect()
    };
    let (va, vb) = (sample(a), sample(b));
    let dot = |u: &[f64], v: &[f64]| u.iter().zip(v).zip(&ws).map(|((p, q), w)| p * q * w).sum::<f64>();
    let na: Vec<f64> = va.iter().map(|v| dot(v, v).sqrt()).collect();
    let nb: Vec<f64> = vb.iter().map(|v| dot(v, v).sqrt()).collect();
    let bands = a.bands();
    for i in 0..n {
        let branch = if i < bands { 0..bands } else { bands..n };
        let diag = dot(&va[i], &vb[i]) / (na[i] * nb[i]);
        if diag < MIN_CONTINUITY_OVERLAP {
            return Err(format!("entry {i}: overlap {diag:.6} with its continuation"));
        }
        for j in branch {
            if j != i {
                let off = (dot(&va[i], &vb[j]) / (na[i] * nb[j])).abs();
                if off >= diag {
                    return Err(format!("entry {i}: overlap with entry {j} ({off:.6}) exceeds its own ({diag:.6})"));
                }
            }
        }
    }
    Ok(())
}

/// `V̂(t)` in the block order (positive branch, negative branch).
///
/// Time derivatives of the eigenfunctions (at fixed `x`) and eigenvalues are
/// centred differences of sign-aligned bases solved at `t ± dt_fd`; the
/// volume integrals use Gauss-Legendre on `[x₋(t), x₊(t)]`.
pub fn assemble_vhat(
    traj: &BoundaryTrajectory,
    params: &FieldParams,
    bc: BoundaryCondition,
    t: f64,
    basis_now: &InstantaneousBasis,
    dt_fd: f64,
) -> Result<DMatrix<f64>> {
    if !(dt_fd.is_finite() && dt_fd > 0.0) {
        return Err(Error::InvalidArgument(format!("finite-difference step must be positive, got {dt_fd}")));
    }
    if basis_now.bc() != bc {
        return Err(Error::InvalidArgument(format!(
            "basis solved for {} but {} was requested",
            basis_now.bc().name(),
            bc.name()
        )));
    }
    let labels = basis_now.labels();
    let max_label = labels.iter().copied().max().unwrap_or(0);
    let rule = GaussLegendre::new(2 * max_label + 48)?;

    let mut h = dt_fd;
    let mut last_reason = String::new();
    let mut pair = None;
    for _ in 0..=MAX_FD_HALVINGS {
        let fwd = continue_basis(basis_now, traj.state(t + h)?, params, t + h)?;
        let bwd = continue_basis(basis_now, traj.state(t - h)?, params, t - h)?;
        match check_continuity(basis_now, &fwd, &rule).and_then(|_| check_continuity(basis_now, &bwd, &rule)) {
            Ok(()) => {
                pair = Some((fwd, bwd));
                break;
            }
            Err(reason) => {
                log::debug!("branch matching failed at t = {t} with dt_fd = {h}: {reason}; halving");
                last_reason = reason;
                h *= 0.5;
            }
        }
    }
    let (fwd, bwd) = pair.ok_or(Error::BranchCrossing { t, reason: last_reason })?;
    Ok(vhat_from_bases(basis_now, &fwd, &bwd, h, positivity_shift(params), &rule))
}

fn vhat_from_bases(
    now: &InstantaneousBasis,
    fwd: &InstantaneousBasis,
    bwd: &InstantaneousBasis,
    h: f64,
    f_shift: f64,
    rule: &GaussLegendre,
) -> DMatrix<f64> {
    let size = now.len();
    let state = now.state();
    let (xs, ws) = rule.mapped(state.x_minus, state.x_plus);
    let omega = now.signed_frequencies();
    let (wf, wb) = (fwd.signed_frequencies(), bwd.signed_frequencies());
    let omega_dot: Vec<f64> = (0..size).map(|i| (wf[i] - wb[i]) / (2.0 * h)).collect();

    let psi_dot_at = |i: usize, x: f64| (fwd.eval(i, x).0 - bwd.eval(i, x).0) / (2.0 * h);
    let values: Vec<Vec<f64>> = (0..size).map(|i| xs.iter().map(|&x| now.eval(i, x).0).collect()).collect();
    let dots: Vec<Vec<f64>> = (0..size).map(|i| xs.iter().map(|&x| psi_dot_at(i, x)).collect()).collect();
    let weighted = |u: &[f64], v: &[f64]| u.iter().zip(v).zip(&ws).map(|((p, q), w)| p * q * w).sum::<f64>();

    // Wall data: (position, outward normal sign, outward normal velocity).
    let walls = [(state.x_minus, -1.0, -state.v_minus), (state.x_plus, 1.0, state.v_plus)];

    DMatrix::from_fn(size, size, |i, j| {
        let sign_j = now.branch_sign(j);
        let i1 = weighted(&dots[i], &values[j]);
        let i0 = weighted(&values[i], &values[j]);
        let surface: f64 = walls
            .iter()
            .map(|&(x, normal, v_b)| {
                let pd = psi_dot_at(i, x);
                let (pj, dpj) = now.eval(j, x);
                match now.bc() {
                    BoundaryCondition::Neumann => -v_b * pd * pj,
                    BoundaryCondition::Dirichlet => pd * normal * dpj / omega[j],
                }
            })
            .sum();
        let braces = (omega[i] + omega[j]) * i1 + (2.0 * omega[i] * omega[i] + omega_dot[i] - f_shift) * i0 + surface;
        let diag = if i == j { -omega[j] } else { 0.0 };
        diag + sign_j * braces
    })
}

/// The constant matrix `M = [[a, b], [b, a]]` with `a = (1 − i)/2`,
/// `b = (1 + i)/2` in `N × N` blocks; `M* = conj(M)` is its inverse.
pub fn rotation_matrix(bands: usize) -> DMatrix<Complex64> {
    let a = Complex64::new(0.5, -0.5);
    let b = Complex64::new(0.5, 0.5);
    DMatrix::from_fn(2 * bands, 2 * bands, |i, j| {
        if i % bands != j % bands {
            Complex64::new(0.0, 0.0)
        } else if (i < bands) == (j < bands) {
            a
        } else {
            b
        }
    })
}

/// `M V̂ M*`.
pub fn rotate_generator(vhat: &DMatrix<f64>) -> DMatrix<Complex64> {
    let bands = vhat.nrows() / 2;
    let m = rotation_matrix(bands);
    let v = vhat.map(|x| Complex64::new(x, 0.0));
    &m * v * m.map(|z| z.conj())
}
