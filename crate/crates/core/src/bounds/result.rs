use std::fmt;
use std::str::FromStr;

use super::spec::{Bandwidth, KernelSpec};
use super::BoundError;

/// The bound families this crate evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    /// Finite-rank bound valid at the enlarged radius `ε + tail(N)`.
    Kuehn,
    /// `binom(ē_σ(log(4/ε)) + d, d) log(4/ε)`, the expression every theorem
    /// upper-bounds.
    General,
    /// `K_{d,σ} log^{d+1}(4/ε) / loglog^d(4/ε)` on `0 < ε <= 1`.
    Thm1,
    /// Same shape with the smaller constant `K_{d,σ,ε₀}` on `0 < ε <= ε₀`.
    Thm2,
    /// Polynomial bound `K_{d,σ,p} ε^{-p}`.
    Thm3,
    /// Covering number of `D_σ X` times an isotropic `σ = 1` bound.
    Anisotropic,
    /// Minimum over all applicable methods.
    Best,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Kuehn,
        Method::General,
        Method::Thm1,
        Method::Thm2,
        Method::Thm3,
        Method::Anisotropic,
        Method::Best,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Kuehn => "kuehn",
            Method::General => "general",
            Method::Thm1 => "thm1",
            Method::Thm2 => "thm2",
            Method::Thm3 => "thm3",
            Method::Anisotropic => "anisotropic",
            Method::Best => "best",
        }
    }

    /// Methods that bound the isotropic embedding on `B_2^d` directly.
    pub fn is_isotropic(self) -> bool {
        matches!(
            self,
            Method::Kuehn | Method::General | Method::Thm1 | Method::Thm2 | Method::Thm3
        )
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = BoundError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .iter()
            .copied()
            .find(|m| m.name() == s)
            .ok_or_else(|| BoundError::InvalidInput(format!("unknown method '{s}'")))
    }
}

/// The inputs a bound was evaluated at, carried along for reporting.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundInputs {
    pub d: usize,
    pub bandwidth: Bandwidth,
    pub radius: f64,
    pub eps: f64,
    pub p: Option<f64>,
    pub eps0: Option<f64>,
}

impl BoundInputs {
    pub fn new(spec: &KernelSpec, eps: f64) -> Self {
        BoundInputs {
            d: spec.d(),
            bandwidth: spec.bandwidth().clone(),
            radius: spec.radius(),
            eps,
            p: None,
            eps0: None,
        }
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = Some(p);
        self
    }

    pub fn with_eps0(mut self, eps0: f64) -> Self {
        self.eps0 = Some(eps0);
        self
    }

    pub(crate) fn is_unit_sigma_unit_ball(&self) -> bool {
        self.bandwidth == Bandwidth::Isotropic(1.0) && self.radius == 1.0
    }
}

/// An upper bound on `H(ε, Id: H_σ(X) -> ℓ∞(X))` in nats.
///
/// `log_covering_bound` is the bound itself and `log_of_bound` its natural
/// logarithm; the latter is authoritative and the former is `+inf` when it
/// overflows. Results outside a theorem's stated range carry `valid = false`,
/// a reason, and `+inf` for both values.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    pub method: Method,
    pub inputs: BoundInputs,
    pub log_covering_bound: f64,
    pub log_of_bound: f64,
    /// The factor in front of the ε-dependent shape of the bound.
    pub constant: f64,
    pub valid: bool,
    pub validity_reason: String,
}

pub(crate) const OK: &str = "ok";

impl BoundResult {
    pub(crate) fn from_ln(method: Method, inputs: BoundInputs, ln: f64, constant: f64) -> Self {
        BoundResult {
            method,
            inputs,
            log_covering_bound: ln.exp(),
            log_of_bound: ln,
            constant,
            valid: true,
            validity_reason: OK.to_string(),
        }
    }

    pub(crate) fn zero(method: Method, inputs: BoundInputs, reason: impl Into<String>) -> Self {
        BoundResult {
            method,
            inputs,
            log_covering_bound: 0.0,
            log_of_bound: f64::NEG_INFINITY,
            constant: 0.0,
            valid: true,
            validity_reason: reason.into(),
        }
    }

    pub(crate) fn invalid(
        method: Method,
        inputs: BoundInputs,
        constant: f64,
        reason: impl Into<String>,
    ) -> Self {
        BoundResult {
            method,
            inputs,
            log_covering_bound: f64::INFINITY,
            log_of_bound: f64::INFINITY,
            constant: if constant.is_nan() { f64::INFINITY } else { constant },
            valid: false,
            validity_reason: reason.into(),
        }
    }

    /// The plain value no longer fits in an `f64`; use `log_of_bound`.
    pub fn overflowed(&self) -> bool {
        self.valid && self.log_of_bound.is_finite() && self.log_covering_bound.is_infinite()
    }
}
