//! The constants ledger: every stated numeric claim recomputed and compared
//! with its target.

use std::f64::consts::{E, PI};

use crate::bounds::{
    const_c0, const_k, const_k_p, gamma_refinement, poly_const_factor, ln_const_c_d, ln_const_k, ln_const_k_eps0,
    ln_poly_const_bound, range_const_eps0, zhou_base, zhou_c, Thm2Params,
};
use crate::specfun::log_gamma;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToleranceKind {
    /// `|computed - target| <= tol`.
    Absolute,
    /// `|computed - target| <= tol · |target|`.
    Relative,
    /// `computed <= target + tol`.
    UpperBound,
    /// `computed >= target - tol`.
    LowerBound,
    /// `computed > target`.
    StrictLowerBound,
    /// `computed < target`.
    StrictUpperBound,
}

impl ToleranceKind {
    pub fn name(self) -> &'static str {
        match self {
            ToleranceKind::Absolute => "absolute",
            ToleranceKind::Relative => "relative",
            ToleranceKind::UpperBound => "upper_bound",
            ToleranceKind::LowerBound => "lower_bound",
            ToleranceKind::StrictLowerBound => "strict_lower_bound",
            ToleranceKind::StrictUpperBound => "strict_upper_bound",
        }
    }

    fn check(self, computed: f64, target: f64, tol: f64) -> bool {
        match self {
            ToleranceKind::Absolute => (computed - target).abs() <= tol,
            ToleranceKind::Relative => (computed - target).abs() <= tol * target.abs(),
            ToleranceKind::UpperBound => computed <= target + tol,
            ToleranceKind::LowerBound => computed >= target - tol,
            ToleranceKind::StrictLowerBound => computed > target,
            ToleranceKind::StrictUpperBound => computed < target,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LedgerEntry {
    pub name: String,
    pub target: f64,
    pub computed: f64,
    pub tolerance: f64,
    pub tolerance_kind: ToleranceKind,
    pub source: String,
    pub pass: bool,
}

impl LedgerEntry {
    fn new(name: &str, target: f64, computed: f64, tolerance: f64, kind: ToleranceKind, source: &str) -> Self {
        LedgerEntry {
            name: name.to_string(),
            target,
            computed,
            tolerance,
            tolerance_kind: kind,
            source: source.to_string(),
            pass: !computed.is_nan() && kind.check(computed, target, tolerance),
        }
    }
}

/// Maximum that propagates NaN, so that a failed evaluation fails the entry.
fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) }
}

fn nan_min(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() { f64::NAN } else { a.min(b) }
}

const PRINTED: f64 = 5e-5;
const FORMULA: f64 = 1e-10;
const LOG_SLACK: f64 = 1e-9;
const D_MAX: usize = 10_000;

pub fn ledger() -> Vec<LedgerEntry> {
    use ToleranceKind::*;
    let mut out = Vec::new();

    let k11 = const_k(1, 1.0);
    out.push(LedgerEntry::new("K_11", 4.0 + 1.0 / E, k11, FORMULA, Relative, "K_{1,1} = 4 + 1/e"));
    out.push(LedgerEntry::new("K_11_printed", 4.3679, k11, PRINTED, Absolute, "K_{1,1} ≈ 4.3679"));

    let (argmax, max) = (1..=D_MAX)
        .map(|d| (d, ln_const_k(d, 1.0)))
        .fold((0, f64::NEG_INFINITY), |acc, (d, v)| if v > acc.1 { (d, v) } else { acc });
    out.push(LedgerEntry::new("K_d1_max", 6.0, argmax as f64, 0.0, Absolute, "max_d K_{d,1} attained at d = 6 (d ≤ 10^4)"));
    out.push(LedgerEntry::new("K_d1_max_value", 30.0, max.exp(), 0.0, UpperBound, "K_{d,1} ≤ 30 for all d ≥ 1 (d ≤ 10^4)"));

    let c: Vec<f64> = (1..=D_MAX).map(ln_const_c_d).collect();
    let c_max = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max).exp();
    out.push(LedgerEntry::new("C_d_max", 4.0 * E + 1.0, c_max, FORMULA * (4.0 * E + 1.0), UpperBound, "C_d ≤ 4e + 1 (d ≤ 10^4)"));
    out.push(LedgerEntry::new("C_1", 4.0 * E + 1.0, c[0].exp(), FORMULA, Relative, "C_1 = 4e + 1"));
    out.push(LedgerEntry::new("C_2", 0.0407, c[1].exp(), PRINTED, Absolute, "C_2 ≈ 0.0407"));
    let c_tail = c[1..].iter().cloned().fold(f64::NEG_INFINITY, f64::max).exp();
    out.push(LedgerEntry::new("C_d_ge2_max", 0.05, c_tail, 0.0, UpperBound, "C_d ≤ 0.05 for d ≥ 2 (d ≤ 10^4)"));
    out.push(LedgerEntry::new("C_1e6", 3.4130e-8, ln_const_c_d(1_000_000).exp(), 1e-2, Relative, "C_d → 1/Γ(4e+1) ≈ 3.4130e-8"));
    let c_limit = (-log_gamma(4.0 * E + 1.0).unwrap_or(f64::NAN)).exp();
    out.push(LedgerEntry::new("C_limit", 3.4130e-8, c_limit, 5e-5 / 3.4130, Relative, "1/Γ(4e+1) ≈ 3.4130e-8"));

    let c0 = const_c0(1.0 / E).unwrap_or(f64::NAN);
    out.push(LedgerEntry::new("C0_1/e", 13.6481, c0, PRINTED, Absolute, "C_0 ≈ 13.6481 for p_0 = 1/e"));
    let p0s = [1e-4, 1e-8, 1e-16, 1e-32];
    let c0s: Vec<f64> = p0s.iter().map(|&p| const_c0(p).unwrap_or(f64::NAN)).collect();
    for (p, v) in p0s.iter().zip(&c0s) {
        out.push(LedgerEntry::new(&format!("C0_{p:e}"), 4.0 + 2.0 / E, *v, 0.0, StrictLowerBound, "C_0 → 4 + 2/e ≈ 4.7358 as p_0 → 0"));
    }
    let step = c0s.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, nan_max);
    out.push(LedgerEntry::new("C0_decreasing", 0.0, step, 0.0, StrictUpperBound, "C_0 decreases along p_0 ∈ {1e-4, 1e-8, 1e-16, 1e-32}"));

    let worked = Thm2Params::new(1.0, 4.0 * (-E * E).exp());
    let (y0, x0) = worked.as_ref().map(|p| (p.y0(), p.x0())).unwrap_or((f64::NAN, f64::NAN));
    out.push(LedgerEntry::new("thm2_y0", E * E, y0, FORMULA, Relative, "y_0 = e² for σ = 1, ε_0 = 4exp(−e²)"));
    out.push(LedgerEntry::new("thm2_x0", 2.0 * E * E, x0, FORMULA, Relative, "x_0 = 2e² for σ = 1, ε_0 = 4exp(−e²)"));
    let excess = match &worked {
        Ok(p) => (1..=100usize)
            .map(|d| {
                let df = d as f64;
                ln_const_k_eps0(d, p) - (16f64.ln() + 2.0 * E * E * df.ln() + df * (2.0 / (E * E)).ln())
            })
            .fold(f64::NEG_INFINITY, nan_max),
        Err(_) => f64::NAN,
    };
    out.push(LedgerEntry::new("K_d1_eps0_bound", 0.0, excess, LOG_SLACK, UpperBound, "log K_{d,1,ε_0} − log(16 d^{2e²} (2/e²)^d) ≤ 0 for d ≤ 100"));

    out.push(LedgerEntry::new("gamma_refinement", 3.4485, gamma_refinement(), PRINTED, Absolute, "γ ≈ 3.4485"));
    out.push(LedgerEntry::new("two_pi_quarter", 0.6316, (2.0 * PI).powf(-0.25), PRINTED, Absolute, "(2π)^{−1/4} ≈ 0.6316"));

    let mut sandwich = f64::NEG_INFINITY;
    for d in 1..=20usize {
        for sigma in [1.0, 2.0, 5.0, 10.0] {
            let s2 = 1.0 + sigma * sigma;
            if 2.0 * E * s2 < d as f64 {
                continue;
            }
            let k = ln_const_k(d, sigma);
            let base = d as f64 * s2.ln() - (1..=d).map(|i| (i as f64).ln()).sum::<f64>();
            sandwich = nan_max(nan_max(sandwich, base + d as f64 * 2f64.ln() - k), k - base - d as f64 * 4f64.ln());
        }
    }
    out.push(LedgerEntry::new("sigma_sandwich", 0.0, sandwich, LOG_SLACK, UpperBound, "2^d/d!·(1+σ²)^d ≤ K_{d,σ} ≤ 4^d/d!·(1+σ²)^d when 2e(1+σ²) ≥ d"));

    let range_excess = (2..=20usize)
        .map(|d| range_const_eps0(zhou_c(), d).map(|r| r.ln_k - r.ln_k_bound).unwrap_or(f64::NAN))
        .fold(f64::NEG_INFINITY, nan_max);
    out.push(LedgerEntry::new("range_const_K", 0.0, range_excess, LOG_SLACK, UpperBound, "K_{d,1,ε_0} ≤ (2π)^{−1/2}(4e)^d(1+C)^d d^{−d−1/2}, C = 1/√(360e), 2 ≤ d ≤ 20"));
    let mut floor_margin = f64::INFINITY;
    for c in [zhou_c(), 0.05, 1.0 / (2.0 * E * E)] {
        for d in 1..=20usize {
            floor_margin = nan_min(floor_margin, match range_const_eps0(c, d) {
                Ok(r) => r.log_eps0_floor.map(|f| r.log_eps0 - f).unwrap_or(f64::NAN),
                Err(_) => f64::NAN,
            });
        }
    }
    out.push(LedgerEntry::new("range_const_eps0_floor", 0.0, floor_margin, 0.0, LowerBound, "ε_0 ≥ exp(−90d² − 11d − 3) for 1/√(360e) ≤ C ≤ 1/(2e²)"));

    out.push(LedgerEntry::new("poly_const_factor", 0.4239, poly_const_factor(), PRINTED, Absolute, "the p- and d-free factor ≈ 0.4239 ≤ 1/2"));
    let kp = const_k_p(2, 1.0, 0.1).unwrap_or(f64::NAN);
    let kp_bound = 0.5 * c0 * c0 * 2f64.sqrt() * 1000.0 / 10f64.ln().powi(2);
    out.push(LedgerEntry::new("K_p_2_1_0.1", kp_bound, kp, 0.0, UpperBound, "K_{2,1,0.1} ≤ ½·C_0²·√2·(1/0.1)³/log²(10)"));
    let mut poly = f64::NEG_INFINITY;
    for d in 1..=20usize {
        for p in [1e-3, 1e-2, 0.1, 1.0 / E] {
            let k = const_k_p(d, 1.0, p).map(f64::ln).unwrap_or(f64::NAN);
            poly = nan_max(poly, k - ln_poly_const_bound(d, p, 1.0 / E).unwrap_or(f64::NAN));
        }
    }
    out.push(LedgerEntry::new("K_p_bound", 0.0, poly, LOG_SLACK, UpperBound, "log K_{d,1,p} − log(½ C_0^d √d (1/p)^{d+1}/log^d(1/p)) ≤ 0, p_0 = 1/e"));
    out.push(LedgerEntry::new("zhou_base", 16.84, zhou_base(), 0.0, UpperBound, "6e(1 + 1/√(360e)) ≤ 16.84 on [0,1]^d"));
    out
}
