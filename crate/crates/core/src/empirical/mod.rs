//! Brute-force oracle: functions in the unit ball of `H_σ(X)` built from the
//! explicit orthonormal basis, greedy sup-norm packings that lower-bound the
//! covering numbers, and greedy Euclidean covers of transformed domains.

mod cover;
mod grid;
mod onb;
mod packing;
mod sample;
mod verify;

use thiserror::Error;

use crate::bounds::BoundError;

pub use cover::{greedy_euclid_cover, transformed_ball_grid};
pub use grid::EvalGrid;
pub use onb::{choose_trunc_order, multi_indices, onb_eval, tail_bound, MultiIndex};
pub use packing::{effective_sigma, greedy_packing_lower, EmpiricalEstimate, PackingParams};
pub use sample::{sample_unit_ball_functions, sup_distance, CoefficientFunction};
pub use verify::{verify_bound, MethodCheck, VerifyReport, MAX_DIM, SLACK};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EmpiricalError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("mismatched spec: {0}")]
    MismatchedSpec(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Bound(#[from] BoundError),
}
