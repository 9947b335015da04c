//! Upper bounds on `H(ε, Id: H_σ(X) -> ℓ∞(X))` and the named constants
//! appearing in them.
//!
//! Every evaluator works on the log path: `BoundResult::log_of_bound` is
//! computed directly and `log_covering_bound` is its exponential. Inputs
//! outside a bound's range give `valid = false` with a reason rather than an
//! extrapolated number; only structural problems (wrong kind of spec,
//! malformed arguments) are reported as errors.

mod anisotropic;
mod best;
mod constants;
mod isotropic;
mod result;
mod spec;

use thiserror::Error;

use crate::specfun::SpecFunError;

pub use anisotropic::{
    anisotropic_bound, closed_form_ln, const_tilde_k, decompose_bound, euclid_ball_cover_bound,
    volume_cover_bound, volume_formula, CoverCount, CoverRegime, IsoMethod,
};
pub use best::{best_bound, BestBound, BestOptions, DEFAULT_P};
pub use constants::{
    const_c0, const_c_d, gamma_refinement, poly_const_factor, ln_const_c_d, ln_poly_const_bound,
    range_const_eps0, zhou_base, zhou_c, RangeConst,
};
pub use isotropic::{
    const_k, const_k_eps0, const_k_p, const_t0, general_bound, kuehn_bound, kuehn_bound_at,
    ln_const_k, ln_const_k_eps0, ln_const_k_p, thm1_bound, thm2_bound, thm2_bound_eps0,
    thm3_bound, KuehnBound, Thm2Params,
};
pub use result::{BoundInputs, BoundResult, Method};
pub use spec::{Bandwidth, KernelSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}
