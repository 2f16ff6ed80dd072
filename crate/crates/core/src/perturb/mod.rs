//! First-order (small-ε) treatment of metric and boundary perturbations.
//!
//! A [`PerturbationSpec`] describes the first-order data of the perturbation;
//! [`CouplingMatrix`] turns it into the coupling functions `Δα̂_nm(t)`,
//! `Δβ̂_nm(t)` on a static basis; [`bogoliubov_perturbative`] and
//! [`bogoliubov_asymptotic`] integrate them into Bogoliubov coefficients; and
//! [`find_resonances`] lists the mode pairs a driving frequency excites.

mod bogoliubov;
mod coupling;
mod resonance;
mod spec;

pub use bogoliubov::{
    bogoliubov_asymptotic, bogoliubov_perturbative, identity_residual, validity_warning, BogoliubovMatrix, Window,
    WINDOW_MAX_FRACTION, WINDOW_MIN_CYCLES,
};
pub use coupling::{
    coupling_alpha, coupling_beta, superoperator_apply, CouplingEvaluator, CouplingKind, CouplingMatrix,
    CouplingOptions, CouplingParts, SamplingFallback, SuperoperatorAction,
};
pub use resonance::{find_resonances, Resonance, ResonanceKind};
pub use spec::{FaceDisplacement, PerturbationSpec, PotentialTerm, SpatialFn};
