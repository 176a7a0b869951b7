//! p-adic integers, truncated power series and the weight-space computations.
//!
//! Coefficients live in `Z_p` (residue field `F_p`).

mod constancy;
mod padic;
mod passage;
mod series;
pub mod synth;
mod weights;

pub use constancy::{constancy_test, constancy_test_escalating, weierstrass_bound, Constancy, WeierstrassBound};
pub use padic::{log_one_unit, log_precision, log_unit, modulus, teichmuller_budget, PadicInt};
pub use passage::{
    passage_dichotomy, PairWeights, Passage, PassageFamily, PassageReport, PlacePair, SeriesData,
    SparsityCertificate,
};
pub use series::{weierstrass_data, Direction, MultiIndex, NewtonSegment, TruncatedSeries, WeierstrassData};
pub use weights::{
    closure_rank, inf_weight, is_parallel_pair, one_unit_generator, parallel_functional, parallel_subspace,
    InfWeightVector, NormOneElement, ParallelSubspace, Subgroup, UnitPlace, UnitsModel, WeightPoint,
};
