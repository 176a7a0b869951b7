//! Selmer groups of synthetic global systems, auxiliary primes, and finite group cohomology.

mod group;
mod steps;
pub mod synth;
mod system;

pub use group::{
    finite_cohomology, sl_adjoint, FiniteGroupAction, GroupCohomology, DEFAULT_COCHAIN_LIMIT,
    DEFAULT_GROUP_BOUND,
};
pub use steps::{
    annihilation_step, avoidance_step, inflation_decomposition_check, AnnihilationOutcome,
    AnnihilationReport, AvoidanceOutcome, AvoidanceReport, InflationReport,
};
pub use system::{ConditionAssignment, LocalSpace, NewPrime, SelmerDims, SelmerSystem};
