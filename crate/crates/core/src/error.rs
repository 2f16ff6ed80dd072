//! Error type shared by every module of the engine.

use thiserror::Error;

/// Errors reported by the engine.
///
/// Variants are grouped by cause so that front ends can map them onto exit
/// codes: argument/configuration problems versus numerical failures.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A caller-supplied argument violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The static metric is not positive definite.
    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    /// A time-dependent quantity could not be evaluated.
    #[error("evaluation failed at t = {t}: {reason}")]
    Evaluation { t: f64, reason: String },

    /// A point lies outside the closed cavity.
    #[error("point {point:?} lies outside the cavity")]
    Domain { point: Vec<f64> },

    /// The truncation selected no modes.
    #[error("empty basis: {0}")]
    EmptyBasis(String),

    /// The perturbation cannot be handled by the requested evaluation path.
    #[error("unsupported perturbation: {0}")]
    UnsupportedSpec(String),

    /// The boundary trajectory is not admissible (crossed walls or |v| >= 1).
    #[error("invalid trajectory at t = {t}: {reason}")]
    InvalidTrajectory { t: f64, reason: String },

    /// Root bracketing or refinement failed in the instantaneous eigenproblem.
    #[error("eigen-solver failure at t = {t}: {reason}")]
    Solver { t: f64, reason: String },

    /// Two eigenbranches could not be told apart between neighbouring slices.
    #[error("eigenbranch crossing near t = {t}: {reason}")]
    BranchCrossing { t: f64, reason: String },

    /// The requested integration step is outside the stability region.
    #[error("unstable step: {0}")]
    Stability(String),
}

impl Error {
    /// `true` for errors caused by bad input rather than by the numerics.
    pub fn is_configuration(&self) -> bool {
        matches!(
            self,
            Error::InvalidArgument(_)
                | Error::InvalidMetric(_)
                | Error::Domain { .. }
                | Error::EmptyBasis(_)
                | Error::UnsupportedSpec(_)
                | Error::InvalidTrajectory { .. }
        )
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
