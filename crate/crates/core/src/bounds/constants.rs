//! Named constants: `C₀`, `C_d`, the `γ` refinement, the range constant
//! and the bounds built from them.

use std::f64::consts::{E, PI};

use super::isotropic::{ln_const_k, ln_const_k_eps0, Thm2Params};
use super::BoundError;
use crate::specfun::lambert_w0;

/// `C₀ = e p₀ log(1/p₀) + (2 + 1/e) 2^{1+p₀} exp(1/W_0(2/p₀))` for `0 < p₀ <= 1/e`.
pub fn const_c0(p0: f64) -> Result<f64, BoundError> {
    if !(p0 > 0.0 && p0 <= 1.0 / E * (1.0 + 1e-15)) {
        return Err(BoundError::OutOfRange(format!(
            "p0_out_of_range: requires 0 < p₀ ≤ 1/e, got p₀ = {p0}"
        )));
    }
    let w = lambert_w0(2.0 / p0)?;
    Ok(E * p0 * (-p0.ln()) + (2.0 + 1.0 / E) * (1.0 + p0).exp2() * (1.0 / w).exp())
}

/// `ln C_d` with `C_d = K_{d,1} e^d d^{-4e} = binom(4e + d, d) d^{-4e}`.
pub fn ln_const_c_d(d: usize) -> f64 {
    ln_const_k(d, 1.0) + d as f64 - 4.0 * E * (d as f64).ln()
}

pub fn const_c_d(d: usize) -> f64 {
    ln_const_c_d(d).exp()
}

/// The smallest `γ` that can replace the 4 in `log(4/ε)`:
/// `(3a + 1 + √(9a² + 2a + 1)) / (2a)` with `a = (2π)^{1/4}`.
pub fn gamma_refinement() -> f64 {
    let a = (2.0 * PI).powf(0.25);
    (3.0 * a + 1.0 + (9.0 * a * a + 2.0 * a + 1.0).sqrt()) / (2.0 * a)
}

/// `e^{1/60}/√(2π) · (1 + 1/(2(2 + 1/e)))^{1/2} · 2^{1+1/e}/e`, the
/// `d`- and `p`-free factor absorbed into the leading `1/2` below.
pub fn poly_const_factor() -> f64 {
    (1.0f64 / 60.0).exp() / (2.0 * PI).sqrt()
        * (1.0 + 1.0 / (2.0 * (2.0 + 1.0 / E))).sqrt()
        * (1.0 + 1.0 / E).exp2()
        / E
}

/// `ln( ½ C₀(p₀)^d √d (1/p)^{d+1} / log^d(1/p) )`, an upper bound on
/// `ln K_{d,1,p}` for `0 < p <= p₀ <= 1/e`.
pub fn ln_poly_const_bound(d: usize, p: f64, p0: f64) -> Result<f64, BoundError> {
    let c0 = const_c0(p0)?;
    if !(p > 0.0 && p <= p0) {
        return Err(BoundError::OutOfRange(format!(
            "p_out_of_range: requires 0 < p ≤ p₀ = {p0}, got p = {p}"
        )));
    }
    let d = d as f64;
    let lp = -p.ln();
    Ok(0.5f64.ln() + d * c0.ln() + 0.5 * d.ln() + (d + 1.0) * lp - d * lp.ln())
}

/// `C = 1/√(360e)`, the choice that recovers the domain `[0,1]^d` comparison.
pub fn zhou_c() -> f64 {
    1.0 / (360.0 * E).sqrt()
}

/// `6e(1 + C)` for `C = 1/√(360e)`, the per-dimension base of the constant on
/// `[0,1]^d`.
pub fn zhou_base() -> f64 {
    6.0 * E * (1.0 + zhou_c())
}

/// The range `ε₀ = 4 exp(-(d/2C) log(d/(2eC)))` and the estimate on
/// `K_{d,1,ε₀}` that comes with it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeConst {
    pub c: f64,
    pub d: usize,
    /// `y₀ = log(4/ε₀)`.
    pub y0: f64,
    pub log_eps0: f64,
    /// `0.0` once it underflows; `log_eps0` stays exact.
    pub eps0: f64,
    /// `ē_1(y₀)`, which equals `d/C`.
    pub x0: f64,
    /// `ln K_{d,1,ε₀}` evaluated directly.
    pub ln_k: f64,
    /// `ln( (2π)^{-1/2} (4e)^d (1+C)^d d^{-(d+1/2)} )`.
    pub ln_k_bound: f64,
    /// `-90d² - 11d - 3` when `1/√(360e) <= C <= 1/(2e²)`, where it lower-bounds `log_eps0`.
    pub log_eps0_floor: Option<f64>,
}

pub fn range_const_eps0(c: f64, d: usize) -> Result<RangeConst, BoundError> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(BoundError::OutOfRange(format!("requires C > 0, got C = {c}")));
    }
    let df = d as f64;
    if !(df >= 2.0 * c * E * E * (1.0 - 1e-12)) {
        return Err(BoundError::OutOfRange(format!(
            "requires d ≥ 2Ce² = {}, got d = {d}",
            2.0 * c * E * E
        )));
    }
    let y0 = df / (2.0 * c) * (df / (2.0 * E * c)).ln();
    let params = Thm2Params::from_y0(1.0, y0)?;
    let log_eps0 = 4f64.ln() - y0;
    let ln_k_bound = -0.5 * (2.0 * PI).ln() + df * (4.0 * E * (1.0 + c)).ln() - (df + 0.5) * df.ln();
    let in_floor_range = c >= 1.0 / (360.0 * E).sqrt() * (1.0 - 1e-12) && c <= 1.0 / (2.0 * E * E) * (1.0 + 1e-12);
    Ok(RangeConst {
        c,
        d,
        y0,
        log_eps0,
        eps0: log_eps0.exp(),
        x0: params.x0(),
        ln_k: ln_const_k_eps0(d, &params),
        ln_k_bound,
        log_eps0_floor: in_floor_range.then(|| -90.0 * df * df - 11.0 * df - 3.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w_bisect(x: f64) -> f64 {
        let (mut lo, mut hi) = (0.0_f64, x.ln().max(1.0));
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if m * m.exp() > x { hi = m } else { lo = m }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn c0_values() {
        assert!((const_c0(1.0 / E).unwrap() - 13.6481).abs() < 5e-5);
        let p0 = 0.1;
        let direct = E * p0 * (1.0 / p0).ln() + (2.0 + 1.0 / E) * 2f64.powf(1.1) * (1.0 / w_bisect(20.0)).exp();
        assert!((const_c0(p0).unwrap() - direct).abs() < 1e-12 * direct);
        assert!(const_c0(0.5).is_err());
        assert!(const_c0(0.0).is_err());
    }

    #[test]
    fn c0_limit() {
        let vals: Vec<f64> = [1e-4, 1e-8, 1e-16, 1e-32].iter().map(|&p| const_c0(p).unwrap()).collect();
        let limit = 4.0 + 2.0 / E;
        for w in vals.windows(2) {
            assert!(w[1] < w[0]);
        }
        assert!(vals.iter().all(|&v| v > limit));
    }

    #[test]
    fn c_d_values() {
        assert!((const_c_d(1) - (4.0 * E + 1.0)).abs() < 1e-12);
        assert!((const_c_d(2) - 0.0407).abs() < 5e-5);
        let limit = -crate::specfun::log_gamma(4.0 * E + 1.0).unwrap();
        assert!((ln_const_c_d(1_000_000) - limit).abs() < 0.01);
    }

    #[test]
    fn gamma_and_factor() {
        assert!((gamma_refinement() - 3.4485).abs() < 5e-5);
        assert!((poly_const_factor() - 0.4239).abs() < 5e-5);
        assert!(poly_const_factor() <= 0.5);
        assert!(zhou_base() <= 16.84);
    }

    #[test]
    fn range_const_boundary() {
        let r = range_const_eps0(1.0 / (2.0 * E * E), 1).unwrap();
        assert!((r.y0 - E * E).abs() < 1e-12);
        assert!((r.x0 - 2.0 * E * E).abs() < 1e-9);
        assert!(range_const_eps0(1.0, 1).is_err());
    }

    #[test]
    fn range_const_bound_holds() {
        for d in 2..=20 {
            let r = range_const_eps0(zhou_c(), d).unwrap();
            assert!((r.x0 - d as f64 / zhou_c()).abs() < 1e-9 * r.x0);
            assert!(r.ln_k <= r.ln_k_bound + 1e-9, "d = {d}");
            assert!(r.log_eps0 >= r.log_eps0_floor.unwrap());
        }
        let r = range_const_eps0(zhou_c(), 3).unwrap();
        assert!(r.log_eps0 >= -90.0 * 9.0 - 33.0 - 3.0);
    }
}
