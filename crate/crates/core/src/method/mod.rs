//! The equation-system method: from a presentation of `G`, a normal
//! subgroup `U` of prime index and `x` with `N_U(x) = 1`, build the system
//! for the values `b(σ_i)`, solve it, extend `b` to a cocycle on `U`, find a
//! witness and assemble `y` with `N_G(y) = 1`.

mod ansatz;
pub mod hnf;
mod pipeline;
mod presentation;
mod system;

pub use ansatz::{ansatz_solve, ANSATZ_MAX_ORDER};
pub use pipeline::{
    catalog_setup, generic_setup, run_pipeline, run_setup, PipelineResult, Setup, SolutionSource,
};
pub use presentation::Presentation;
pub use system::{
    assemble, build_alpha, build_system, check_solution, extend_b, residual, Assembly, NormEquation,
};

use crate::cocycle_solver::SolverError;
use crate::group::GroupError;
use crate::ncring::RingError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MethodError {
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("extended b violates the cocycle law on U")]
    CocycleLawFailure,
    #[error("a is not invariant under {0}")]
    InvarianceFailure(String),
    #[error("norm check failed: {0}")]
    NormFailure(String),
    #[error("the linear ansatz has no integer solution")]
    NoSolution,
    #[error("library solution does not satisfy the system")]
    SolutionRejected,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
