//! Bogoliubov transformations of a confined Klein-Gordon field.
//!
//! The crate computes how a real scalar field trapped in a cavity is mixed
//! and excited when the cavity walls move or the spatial metric changes in
//! time.  Two routes are provided:
//!
//! * [`perturb`] — first-order coupling matrices `Δα̂`, `Δβ̂` built from the
//!   static modes of the unperturbed cavity, resonance detection, and closed
//!   form Bogoliubov coefficients;
//! * [`exact1d`] — non-perturbative evolution in 1+1 dimensions, solving the
//!   instantaneous eigenproblem with velocity-dependent boundary conditions
//!   and integrating the transformation ODE `dU/dt = M V̂ M* U`.
//!
//! [`scenarios`] packages the moving-mirror (dynamical Casimir) and
//! rigid-cavity gravitational-wave examples with their closed-form
//! predictions.

pub mod error;
pub mod exact1d;
pub mod field;
pub mod metric;
pub mod perturb;
pub mod quadrature;
pub mod scenarios;
pub mod signal;
pub mod staticmodes;

pub use error::{Error, Result};
pub use exact1d::{
    bogoliubov_identity_residual, evolve_transformation, solve_instantaneous_basis, BoundaryTrajectory, EvolveOptions,
    InstantaneousBasis, Integrator, TransformationState,
};
pub use field::{BoundaryCondition, FieldParams};
pub use metric::{derive_metric_scalars, DerivedMetricScalars, MetricProfile};
pub use num_complex::Complex64;
pub use perturb::{
    bogoliubov_asymptotic, bogoliubov_perturbative, find_resonances, BogoliubovMatrix, CouplingMatrix, CouplingOptions,
    PerturbationSpec, Resonance, ResonanceKind,
};
pub use scenarios::{build_dce, build_gw, DceConfig, DceVariant, GwConfig, ScenarioKind};
pub use signal::{Envelope, Harmonic, HarmonicSum, PhaseForm, Waveform};
pub use staticmodes::{solve_box_modes, solve_interval_modes, CavityGeometry, Face, Side, StaticBasis, StaticMode};
