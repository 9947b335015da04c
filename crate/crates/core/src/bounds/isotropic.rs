//! Bounds for the isotropic embedding `I_σ: H_σ(B_2^d) -> ℓ∞(B_2^d)`.
//!
//! With `y = log(4/ε)` every bound here is an upper estimate of
//! `binom(ē_σ(y) + d, d) · y`, obtained by bounding `ē_σ(y)` by a function
//! `f(ε) >= t₀` and using that `binom(t + d, d) t^{-d}` decreases in `t`.

use std::f64::consts::{E, LN_2};

use super::result::{BoundInputs, BoundResult, Method};
use super::spec::KernelSpec;
use super::BoundError;
use crate::specfun::{e_bar, lambert_w0, ln_binom, ln_truncation_tail};

const LN_4: f64 = 2.0 * LN_2;

pub(crate) fn eps_range_reason(eps: f64) -> String {
    format!("eps_out_of_range: requires 0 < ε ≤ 1, got ε = {eps}")
}

/// `y = log(4/ε)` without forming `4/ε`.
pub(crate) fn log_four_over(eps: f64) -> f64 {
    LN_4 - eps.ln()
}

/// `ln( log^{d+1}(y) ... )`: the log of `y^{d+1} / (log y)^d`.
pub(crate) fn ln_loglog_shape(y: f64, d: usize) -> f64 {
    let d = d as f64;
    (d + 1.0) * y.ln() - d * y.ln().ln()
}

fn unit_interval(eps: f64) -> bool {
    eps > 0.0 && eps <= 1.0
}

/// Finite-rank bound at radius `ε + tail` (see [`KuehnBound::radius`]).
#[derive(Debug, Clone, PartialEq)]
pub struct KuehnBound {
    pub result: BoundResult,
    /// `√((2σ²)^N / N!)`.
    pub tail: f64,
    /// The radius at which `result` bounds the log-covering number.
    pub radius: f64,
}

/// `H(ε + √((2σ²)^N/N!)) <= binom(N - 1 + d, d) · log(1 + 2/ε)`.
pub fn kuehn_bound(spec: &KernelSpec, eps: f64, n: u64) -> Result<KuehnBound, BoundError> {
    let sigma = spec.require_unit_ball("kuehn")?;
    if n == 0 {
        return Err(BoundError::InvalidInput("truncation order N must be at least 1".into()));
    }
    let tail = ln_truncation_tail(sigma, n).exp();
    let inputs = BoundInputs::new(spec, eps);
    let ln_rank = ln_binom((n - 1) as f64, spec.d() as u64);
    let result = if eps > 0.0 {
        // log(1 + 2/ε) = log(2 + ε) - log ε
        let ln_cover = ((2.0 + eps).ln() - eps.ln()).ln();
        BoundResult::from_ln(Method::Kuehn, inputs, ln_rank + ln_cover, ln_rank.exp())
    } else {
        BoundResult::invalid(Method::Kuehn, inputs, ln_rank.exp(), format!("eps_out_of_range: requires ε > 0, got ε = {eps}"))
    };
    Ok(KuehnBound {
        result,
        tail,
        radius: eps + tail,
    })
}

/// The finite-rank bound rearranged to radius exactly `eps`: the inner
/// radius is `eps - tail(N)`, which must be positive.
pub fn kuehn_bound_at(spec: &KernelSpec, eps: f64, n: u64) -> Result<KuehnBound, BoundError> {
    let sigma = spec.require_unit_ball("kuehn")?;
    if n == 0 {
        return Err(BoundError::InvalidInput("truncation order N must be at least 1".into()));
    }
    let tail = ln_truncation_tail(sigma, n).exp();
    let inner = eps - tail;
    if !(inner > 0.0) {
        let ln_rank = ln_binom((n - 1) as f64, spec.d() as u64);
        let reason = format!("tail_exceeds_eps: √((2σ²)^N/N!) = {tail} ≥ ε = {eps} for N = {n}");
        return Ok(KuehnBound {
            result: BoundResult::invalid(Method::Kuehn, BoundInputs::new(spec, eps), ln_rank.exp(), reason),
            tail,
            radius: eps,
        });
    }
    let mut out = kuehn_bound(spec, inner, n)?;
    out.result.inputs.eps = eps;
    out.radius = eps;
    Ok(out)
}

/// `binom(ē_σ(log(4/ε)) + d, d) · log(4/ε)` for `0 < ε <= 1`.
///
/// The reported constant is the binomial factor, so the bound equals
/// `constant · log(4/ε)`.
pub fn general_bound(spec: &KernelSpec, eps: f64) -> Result<BoundResult, BoundError> {
    let sigma = spec.require_unit_ball("general")?;
    let inputs = BoundInputs::new(spec, eps);
    if !unit_interval(eps) {
        return Ok(BoundResult::invalid(Method::General, inputs, f64::INFINITY, eps_range_reason(eps)));
    }
    let y = log_four_over(eps);
    let x = e_bar(sigma, y)?;
    let ln_rank = ln_binom(x, spec.d() as u64);
    Ok(BoundResult::from_ln(Method::General, inputs, ln_rank + y.ln(), ln_rank.exp()))
}

/// `ln K_{d,σ}` with `K_{d,σ} = binom(2e(1 + σ²) + d, d) e^{-d}`.
pub fn ln_const_k(d: usize, sigma: f64) -> f64 {
    ln_binom(2.0 * E * (1.0 + sigma * sigma), d as u64) - d as f64
}

pub fn const_k(d: usize, sigma: f64) -> f64 {
    ln_const_k(d, sigma).exp()
}

/// `K_{d,σ} · log^{d+1}(4/ε) / loglog^d(4/ε)` for `0 < ε <= 1`.
pub fn thm1_bound(spec: &KernelSpec, eps: f64) -> Result<BoundResult, BoundError> {
    let sigma = spec.require_unit_ball("thm1")?;
    let ln_k = ln_const_k(spec.d(), sigma);
    let inputs = BoundInputs::new(spec, eps);
    if !unit_interval(eps) {
        return Ok(BoundResult::invalid(Method::Thm1, inputs, ln_k.exp(), eps_range_reason(eps)));
    }
    let y = log_four_over(eps);
    Ok(BoundResult::from_ln(Method::Thm1, inputs, ln_k + ln_loglog_shape(y, spec.d()), ln_k.exp()))
}

/// Range parameters of the small-ε bound: `ε₀`, `y₀ = log(4/ε₀)` and
/// `x₀ = ē_σ(y₀) = 2y₀ / W_0(y₀/(eσ²))`.
///
/// `y₀` is the primary coordinate so that ranges far below the smallest
/// positive `f64` stay representable; `eps0` may then be `0.0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thm2Params {
    sigma: f64,
    eps0: f64,
    y0: f64,
    x0: f64,
}

impl Thm2Params {
    /// Largest admissible `ε₀ = 4 exp(-e^{1 + σ^{-2}})`.
    pub fn eps0_max(sigma: f64) -> f64 {
        4.0 * (-Self::y0_min(sigma)).exp()
    }

    /// Smallest admissible `y₀ = e^{1 + σ^{-2}}`.
    pub fn y0_min(sigma: f64) -> f64 {
        (1.0 + 1.0 / (sigma * sigma)).exp()
    }

    pub fn new(sigma: f64, eps0: f64) -> Result<Self, BoundError> {
        check_sigma(sigma)?;
        if !(eps0 > 0.0) {
            return Err(BoundError::OutOfRange(format!(
                "eps0_out_of_range: requires ε₀ > 0, got ε₀ = {eps0}"
            )));
        }
        match Self::from_y0(sigma, log_four_over(eps0)) {
            Ok(mut p) => {
                p.eps0 = eps0;
                Ok(p)
            }
            Err(BoundError::OutOfRange(_)) => Err(Self::range_error(sigma, eps0)),
            Err(e) => Err(e),
        }
    }

    fn range_error(sigma: f64, eps0: f64) -> BoundError {
        BoundError::OutOfRange(format!(
            "eps0_out_of_range: requires ε₀ ≤ 4exp(−e^{{1+σ^{{−2}}}}) = {} for σ = {sigma}, got ε₀ = {eps0}",
            Self::eps0_max(sigma)
        ))
    }

    pub fn from_y0(sigma: f64, y0: f64) -> Result<Self, BoundError> {
        check_sigma(sigma)?;
        let y_min = Self::y0_min(sigma);
        if !(y0 >= y_min * (1.0 - 1e-12)) {
            return Err(Self::range_error(sigma, 4.0 * (-y0).exp()));
        }
        let w = lambert_w0(y0 / (E * sigma * sigma))?;
        Ok(Thm2Params {
            sigma,
            eps0: 4.0 * (-y0).exp(),
            y0,
            x0: 2.0 * y0 / w,
        })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn eps0(&self) -> f64 {
        self.eps0
    }

    pub fn y0(&self) -> f64 {
        self.y0
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }
}

/// `ln K_{d,σ,ε₀}` with `K_{d,σ,ε₀} = binom(x₀ + d, d) (log(y₀)/y₀)^d`.
pub fn ln_const_k_eps0(d: usize, params: &Thm2Params) -> f64 {
    let y0 = params.y0;
    ln_binom(params.x0, d as u64) + d as f64 * (y0.ln().ln() - y0.ln())
}

pub fn const_k_eps0(d: usize, params: &Thm2Params) -> f64 {
    ln_const_k_eps0(d, params).exp()
}

/// `K_{d,σ,ε₀} · log^{d+1}(4/ε) / loglog^d(4/ε)` for `0 < ε <= ε₀`.
pub fn thm2_bound(spec: &KernelSpec, params: &Thm2Params, eps: f64) -> Result<BoundResult, BoundError> {
    let sigma = spec.require_unit_ball("thm2")?;
    if sigma != params.sigma {
        return Err(BoundError::InvalidSpec(format!(
            "thm2 parameters were built for σ = {}, spec has σ = {sigma}",
            params.sigma
        )));
    }
    let ln_k = ln_const_k_eps0(spec.d(), params);
    let inputs = BoundInputs::new(spec, eps).with_eps0(params.eps0);
    if !(eps > 0.0) {
        return Ok(BoundResult::invalid(Method::Thm2, inputs, ln_k.exp(), eps_range_reason(eps)));
    }
    let y = log_four_over(eps);
    if y < params.y0 * (1.0 - 1e-12) {
        let reason = format!("eps_exceeds_eps0: requires ε ≤ ε₀ = {}, got ε = {eps}", params.eps0);
        return Ok(BoundResult::invalid(Method::Thm2, inputs, ln_k.exp(), reason));
    }
    Ok(BoundResult::from_ln(Method::Thm2, inputs, ln_k + ln_loglog_shape(y, spec.d()), ln_k.exp()))
}

/// [`thm2_bound`] from a raw `ε₀`, reporting an out-of-range `ε₀` as an
/// invalid result instead of an error.
pub fn thm2_bound_eps0(spec: &KernelSpec, eps0: f64, eps: f64) -> Result<BoundResult, BoundError> {
    let sigma = spec.require_unit_ball("thm2")?;
    match Thm2Params::new(sigma, eps0) {
        Ok(params) => thm2_bound(spec, &params, eps),
        Err(BoundError::OutOfRange(reason)) => Ok(BoundResult::invalid(
            Method::Thm2,
            BoundInputs::new(spec, eps).with_eps0(eps0),
            f64::INFINITY,
            reason,
        )),
        Err(e) => Err(e),
    }
}

/// `t₀ = 2(d+1) 4^{p/(d+1)} / (e p W) · exp(1/W)` with `W = W_0((d+1)/(pσ²))`.
pub fn const_t0(d: usize, sigma: f64, p: f64) -> Result<f64, BoundError> {
    check_sigma(sigma)?;
    check_p(p)?;
    let dp1 = d as f64 + 1.0;
    let w = lambert_w0(dp1 / (p * sigma * sigma))?;
    Ok(2.0 * dp1 * (p / dp1 * 2.0 * LN_2).exp() / (E * p * w) * (1.0 / w).exp())
}

/// `ln K_{d,σ,p}` with `K_{d,σ,p} = binom(t₀ + d, d) · (d+1)/(e p) · 4^{p/(d+1)}`.
pub fn ln_const_k_p(d: usize, sigma: f64, p: f64) -> Result<f64, BoundError> {
    let t0 = const_t0(d, sigma, p)?;
    let dp1 = d as f64 + 1.0;
    Ok(ln_binom(t0, d as u64) + (dp1 / (E * p)).ln() + p / dp1 * LN_4)
}

pub fn const_k_p(d: usize, sigma: f64, p: f64) -> Result<f64, BoundError> {
    ln_const_k_p(d, sigma, p).map(f64::exp)
}

/// `K_{d,σ,p} · ε^{-p}` for `0 < ε <= 1`, any `p > 0`.
pub fn thm3_bound(spec: &KernelSpec, p: f64, eps: f64) -> Result<BoundResult, BoundError> {
    let sigma = spec.require_unit_ball("thm3")?;
    let inputs = BoundInputs::new(spec, eps).with_p(p);
    if check_p(p).is_err() {
        let reason = format!("p_out_of_range: requires p > 0, got p = {p}");
        return Ok(BoundResult::invalid(Method::Thm3, inputs, f64::INFINITY, reason));
    }
    let ln_k = ln_const_k_p(spec.d(), sigma, p)?;
    if !unit_interval(eps) {
        return Ok(BoundResult::invalid(Method::Thm3, inputs, ln_k.exp(), eps_range_reason(eps)));
    }
    Ok(BoundResult::from_ln(Method::Thm3, inputs, ln_k - p * eps.ln(), ln_k.exp()))
}

fn check_sigma(sigma: f64) -> Result<(), BoundError> {
    if sigma > 0.0 && sigma.is_finite() {
        Ok(())
    } else {
        Err(BoundError::InvalidSpec(format!("bandwidth must be positive, got {sigma}")))
    }
}

fn check_p(p: f64) -> Result<(), BoundError> {
    if p > 0.0 && p.is_finite() {
        Ok(())
    } else {
        Err(BoundError::OutOfRange(format!("p_out_of_range: requires p > 0, got p = {p}")))
    }
}
