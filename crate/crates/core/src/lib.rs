//! Explicit upper bounds on the log-covering numbers of the embedding
//! `Id: H_σ(X) -> ℓ∞(X)` of (anisotropic) Gaussian RKHSs, together with a
//! seeded brute-force packing oracle that checks them from below.
//!
//! * [`specfun`]: Lambert `W_0`, `ln Γ`, generalized binomials and the
//!   auxiliary functions the bounds are assembled from.
//! * [`bounds`]: every closed-form bound and named constant.
//! * [`empirical`]: the orthonormal basis `e_k`, unit-ball sampling, greedy
//!   packing and covering on grids.
//! * [`cli`]: the `rkhsent` command line, the constants ledger and sweeps.
//!
//! All logarithms are natural.

pub mod specfun;
pub mod bounds;
pub mod empirical;
pub mod cli;
