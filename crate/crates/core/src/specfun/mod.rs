//! Scalar special functions shared by every bound.
//!
//! Everything here works in nats. Binomials and powers are evaluated on the
//! log scale; [`LogScale`] converts back and reports overflow instead of
//! silently producing garbage.

mod gamma;
mod lambert;

use std::f64::consts::E;

use thiserror::Error;

pub use gamma::log_gamma;
pub(crate) use gamma::{ln_gamma_pos, ln_gamma_ratio};
pub use lambert::{lambert_w0, BRANCH_POINT, BRANCH_TOLERANCE};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("{func}: argument {arg} outside domain ({requirement})")]
    Domain {
        func: &'static str,
        arg: f64,
        requirement: &'static str,
    },
}

impl SpecFunError {
    pub(crate) fn domain(func: &'static str, arg: f64, requirement: &'static str) -> Self {
        SpecFunError::Domain {
            func,
            arg,
            requirement,
        }
    }
}

/// A positive quantity stored by its natural logarithm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogScale {
    ln: f64,
}

impl LogScale {
    pub const ONE: LogScale = LogScale { ln: 0.0 };
    pub const ZERO: LogScale = LogScale {
        ln: f64::NEG_INFINITY,
    };

    pub fn from_ln(ln: f64) -> Self {
        LogScale { ln }
    }

    pub fn from_value(value: f64) -> Self {
        LogScale { ln: value.ln() }
    }

    pub fn ln(self) -> f64 {
        self.ln
    }

    /// Plain value; `+inf` once it no longer fits in an `f64`.
    pub fn value(self) -> f64 {
        self.ln.exp()
    }

    pub fn overflows(self) -> bool {
        self.ln.is_finite() && self.value().is_infinite()
    }
}

impl std::ops::Mul for LogScale {
    type Output = LogScale;
    fn mul(self, rhs: LogScale) -> LogScale {
        LogScale::from_ln(self.ln + rhs.ln)
    }
}

/// Arguments of the generalized binomial coefficient `binom(t + d, d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinomArgs {
    t: f64,
    d: u64,
}

impl BinomArgs {
    pub fn new(t: f64, d: u64) -> Result<Self, SpecFunError> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(SpecFunError::domain("binom", t, "t > 0"));
        }
        if d == 0 {
            return Err(SpecFunError::domain("binom", 0.0, "d >= 1"));
        }
        Ok(BinomArgs { t, d })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn d(&self) -> u64 {
        self.d
    }
}

/// Dimension up to which the binomial is summed term by term.
pub const PRODUCT_MAX_D: u64 = 64;

/// `ln binom(t + d, d) = ln( (1/d!) Π_{i=1}^d (t + i) )`.
pub fn log_gen_binom(args: BinomArgs) -> f64 {
    ln_binom(args.t, args.d)
}

/// `binom(t + d, d)` with overflow reporting.
pub fn gen_binom(args: BinomArgs) -> LogScale {
    LogScale::from_ln(log_gen_binom(args))
}

/// Unchecked core of [`log_gen_binom`]; also accepts `t = 0` (value 1), which
/// the integer projection ranks `binom(N - 1 + d, d)` need at `N = 1`.
pub(crate) fn ln_binom(t: f64, d: u64) -> f64 {
    debug_assert!(t >= 0.0);
    if d <= PRODUCT_MAX_D {
        ln_binom_product(t, d)
    } else {
        ln_gamma_ratio(d as f64 + 1.0, t) - ln_gamma_pos(t + 1.0)
    }
}

/// `Σ_{i=1}^d ln(1 + t/i)`.
pub fn log_gen_binom_product(args: BinomArgs) -> f64 {
    ln_binom_product(args.t, args.d)
}

fn ln_binom_product(t: f64, d: u64) -> f64 {
    (1..=d).map(|i| (t / i as f64).ln_1p()).sum()
}

/// `ln Γ(t + d + 1) - ln Γ(t + 1) - ln Γ(d + 1)` taken literally, for
/// cross-checking the other two routes.
pub fn log_gen_binom_gamma(args: BinomArgs) -> f64 {
    let d = args.d as f64;
    ln_gamma_pos(args.t + d + 1.0) - ln_gamma_pos(args.t + 1.0) - ln_gamma_pos(d + 1.0)
}

/// `ln e_σ(x)` where `e_σ(x) = 2 (2 e σ² / x)^{x/2}`.
pub fn ln_e_lower(sigma: f64, x: f64) -> Result<f64, SpecFunError> {
    check_sigma("e_lower", sigma)?;
    if !(x > 0.0) {
        return Err(SpecFunError::domain("e_lower", x, "x > 0"));
    }
    Ok(std::f64::consts::LN_2 + 0.5 * x * (1.0 + (2.0 * sigma * sigma).ln() - x.ln()))
}

/// `e_σ(x) = 2 (2 e σ² / x)^{x/2}`, decreasing on `(2σ², inf)`.
pub fn e_lower(sigma: f64, x: f64) -> Result<f64, SpecFunError> {
    ln_e_lower(sigma, x).map(f64::exp)
}

/// `ē_σ(y) = 2 e σ² exp(W_0(y / (e σ²)))` on `[-σ², inf)`.
///
/// Composed with `log(2/ε)` this inverts `e_σ` on `[2σ², inf)`.
pub fn e_bar(sigma: f64, y: f64) -> Result<f64, SpecFunError> {
    check_sigma("e_bar", sigma)?;
    let s2 = sigma * sigma;
    if !(y >= -s2 * (1.0 + BRANCH_TOLERANCE)) {
        return Err(SpecFunError::domain("e_bar", y, "y >= -sigma^2"));
    }
    let w = lambert_w0(y / (E * s2))?;
    Ok(2.0 * E * s2 * w.exp())
}

/// The equivalent closed form `2y / W_0(y / (e σ²))`, defined for `y != 0`.
pub fn e_bar_quotient(sigma: f64, y: f64) -> Result<f64, SpecFunError> {
    check_sigma("e_bar", sigma)?;
    if y == 0.0 {
        return Err(SpecFunError::domain("e_bar_quotient", y, "y != 0"));
    }
    let w = lambert_w0(y / (E * sigma * sigma))?;
    Ok(2.0 * y / w)
}

/// `q_σ(t) = (1 + log σ² + log t) / W_0(t)`; peaks at `t* = σ⁻² exp(σ⁻²)`
/// with value `1 + σ²` and tends to 1 at infinity.
pub fn q_sigma(sigma: f64, t: f64) -> Result<f64, SpecFunError> {
    check_sigma("q_sigma", sigma)?;
    if !(t > 0.0) {
        return Err(SpecFunError::domain("q_sigma", t, "t > 0"));
    }
    let w = lambert_w0(t)?;
    Ok((1.0 + (sigma * sigma).ln() + t.ln()) / w)
}

/// Location of the maximum of [`q_sigma`].
pub fn q_sigma_peak(sigma: f64) -> f64 {
    let inv = 1.0 / (sigma * sigma);
    inv * inv.exp()
}

/// `β(t) = t / log t` on `(1, inf)`; minimum `e` at `t = e`.
pub fn beta_fn(t: f64) -> Result<f64, SpecFunError> {
    if !(t > 1.0) {
        return Err(SpecFunError::domain("beta_fn", t, "t > 1"));
    }
    Ok(t / t.ln())
}

/// `ln G_d(t)` with `G_d(t) = binom(t + d, d) t^{-d}`, decreasing in `t`.
pub fn ln_g_d(args: BinomArgs) -> f64 {
    log_gen_binom(args) - args.d as f64 * args.t.ln()
}

pub fn g_d(args: BinomArgs) -> f64 {
    ln_g_d(args).exp()
}

/// `ln a_d` with `a_d = binom(t + d, d) d^{-t}`, decreasing in `d` towards
/// `1 / Γ(t + 1)`.
pub fn ln_a_d(args: BinomArgs) -> f64 {
    log_gen_binom(args) - args.t * (args.d as f64).ln()
}

pub fn a_d(args: BinomArgs) -> f64 {
    ln_a_d(args).exp()
}

/// `ln √((2σ²)^N / N!)`, the norm bound on the part of `H_σ(B_2^d)` spanned
/// by basis functions of total degree `>= N`.
pub fn ln_truncation_tail(sigma: f64, n: u64) -> f64 {
    0.5 * (n as f64 * (2.0 * sigma * sigma).ln() - ln_gamma_pos(n as f64 + 1.0))
}

fn check_sigma(func: &'static str, sigma: f64) -> Result<(), SpecFunError> {
    if sigma > 0.0 && sigma.is_finite() {
        Ok(())
    } else {
        Err(SpecFunError::domain(func, sigma, "sigma > 0"))
    }
}
