//! Non-perturbative evolution of the field in a 1+1-dimensional cavity with
//! moving walls.
//!
//! At every instant the mode functions solve the instantaneous eigenproblem
//! with velocity-dependent boundary conditions ([`solve_instantaneous_basis`]).
//! The transformation `U(t, t0)` between the bases at `t0` and `t` obeys
//! `dU/dt = M V̂(t) M* U`, where `V̂` ([`assemble_vhat`]) is built from the
//! instantaneous eigenpairs and their time derivatives;
//! [`evolve_transformation`] integrates it with fixed-step RK4.  When the
//! walls are at rest at both ends, the blocks of `U` are the Bogoliubov
//! coefficients `α`, `β` between the static bases.

mod eigen;
mod evolve;
mod trajectory;
mod vhat;

pub use eigen::{
    band_labels, characteristic, continue_basis, effective_mass_squared, scan_roots, solve_instantaneous_basis,
    solve_state, InstantaneousBasis, InstantaneousMode, ROOT_TOLERANCE,
};
pub use evolve::{
    bogoliubov_identity_residual, evolve_transformation, Checkpoint, EvolveOptions, Integrator, TransformationState,
    STABILITY_LIMIT,
};
pub use trajectory::{BoundaryTrajectory, Wall, WallState};
pub use vhat::{assemble_vhat, rotate_generator, rotation_matrix, MIN_CONTINUITY_OVERLAP};
