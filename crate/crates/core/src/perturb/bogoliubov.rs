//! First-order Bogoliubov coefficients from the coupling functions.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::staticmodes::StaticBasis;

use super::coupling::CouplingMatrix;

/// Lower bound of the heuristic validity window, in units of `1/ω_p`.
pub const WINDOW_MIN_CYCLES: f64 = 5.0;
/// Upper bound of the heuristic validity window, in units of `1/(εω_p)`.
pub const WINDOW_MAX_FRACTION: f64 = 0.1;

/// Integration window of a set of Bogoliubov coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Window {
    /// `[t0, tf]`.
    Finite { t0: f64, tf: f64 },
    /// `(−∞, ∞)` for enveloped perturbations.
    Asymptotic,
}

/// The blocks `α`, `β` of a Bogoliubov transformation on a truncated basis.
#[derive(Debug, Clone, PartialEq)]
pub struct BogoliubovMatrix {
    pub alpha: DMatrix<Complex64>,
    pub beta: DMatrix<Complex64>,
    pub epsilon_used: f64,
    pub window: Window,
    /// Human-readable diagnostics (validity-window violations).
    pub warnings: Vec<String>,
}

impl BogoliubovMatrix {
    /// `‖αα† − ββ† − I‖_max`.
    pub fn identity_residual(&self) -> f64 {
        identity_residual(&self.alpha, &self.beta)
    }

    /// Number of modes.
    pub fn size(&self) -> usize {
        self.alpha.nrows()
    }
}

/// `‖αα† − ββ† − I‖_max` for square blocks of equal size.
pub fn identity_residual(alpha: &DMatrix<Complex64>, beta: &DMatrix<Complex64>) -> f64 {
    let n = alpha.nrows();
    let r = alpha * alpha.adjoint() - beta * beta.adjoint() - DMatrix::<Complex64>::identity(n, n);
    r.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn check_size(couplings: &CouplingMatrix, basis: &StaticBasis, epsilon: f64) -> Result<()> {
    if couplings.size() != basis.len() {
        return Err(Error::InvalidArgument(format!(
            "coupling matrix has {} modes but the basis has {}",
            couplings.size(),
            basis.len()
        )));
    }
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::InvalidArgument(format!("ε must be positive, got {epsilon}")));
    }
    Ok(())
}

/// Heuristic check of `1 ≪ ω_p Δt ≪ 1/ε`; returns a message when violated.
pub fn validity_warning(omega_p: f64, epsilon: f64, duration: f64) -> Option<String> {
    if omega_p <= 0.0 {
        return None;
    }
    let lo = WINDOW_MIN_CYCLES / omega_p;
    let hi = WINDOW_MAX_FRACTION / (epsilon * omega_p);
    if duration < lo || duration > hi {
        Some(format!(
            "window Δt = {duration:.6e} lies outside the first-order validity range [{lo:.6e}, {hi:.6e}] \
             for ω_p = {omega_p:.6e}, ε = {epsilon:.3e}"
        ))
    } else {
        None
    }
}

/// `α_nm = ε∫e^{−i(ω_n−ω_m)t}Δα̂_nm dt`, `β_nm = ε∫e^{−i(ω_n+ω_m)t}Δβ̂_nm dt`
/// over `[t0, tf]`, integrated in closed form; the diagonal of `α` is 1.
pub fn bogoliubov_perturbative(
    couplings: &CouplingMatrix,
    basis: &StaticBasis,
    epsilon: f64,
    t0: f64,
    tf: f64,
) -> Result<BogoliubovMatrix> {
    check_size(couplings, basis, epsilon)?;
    if !(t0.is_finite() && tf.is_finite() && tf >= t0) {
        return Err(Error::InvalidArgument(format!("window must satisfy t0 ≤ tf, got [{t0}, {tf}]")));
    }
    let w = basis.frequencies();
    let size = w.len();
    let alpha = DMatrix::from_fn(size, size, |n, m| {
        if n == m {
            Complex64::new(1.0, 0.0)
        } else {
            epsilon * couplings.alpha(n, m).integrate_exp(-(w[n] - w[m]), t0, tf)
        }
    });
    let beta = DMatrix::from_fn(size, size, |n, m| epsilon * couplings.beta(n, m).integrate_exp(-(w[n] + w[m]), t0, tf));
    let mut warnings = Vec::new();
    if let Some(msg) = validity_warning(couplings.max_frequency(), epsilon, tf - t0) {
        log::warn!("{msg}");
        warnings.push(msg);
    }
    Ok(BogoliubovMatrix { alpha, beta, epsilon_used: epsilon, window: Window::Finite { t0, tf }, warnings })
}

/// The `t0 → −∞`, `tf → ∞` limit, `ε∫_{−∞}^{∞}`, for couplings carrying an
/// integrable (Gaussian or raised-cosine) envelope.
pub fn bogoliubov_asymptotic(
    couplings: &CouplingMatrix,
    basis: &StaticBasis,
    epsilon: f64,
) -> Result<BogoliubovMatrix> {
    check_size(couplings, basis, epsilon)?;
    let w = basis.frequencies();
    let size = w.len();
    let mut alpha = DMatrix::identity(size, size);
    let mut beta = DMatrix::zeros(size, size);
    for n in 0..size {
        for m in 0..size {
            if n != m {
                alpha[(n, m)] = epsilon * couplings.alpha(n, m).fourier_exp(-(w[n] - w[m]))?;
            }
            beta[(n, m)] = epsilon * couplings.beta(n, m).fourier_exp(-(w[n] + w[m]))?;
        }
    }
    Ok(BogoliubovMatrix { alpha, beta, epsilon_used: epsilon, window: Window::Asymptotic, warnings: Vec::new() })
}
