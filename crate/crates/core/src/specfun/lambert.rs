//! Upper branch `W_0` of the Lambert W function.

use std::f64::consts::E;

use super::SpecFunError;

/// `-1/e`, the branch point of `W_0`.
pub const BRANCH_POINT: f64 = -1.0 / E;

/// Inputs this far below `-1/e` are still mapped to `W_0(-1/e) = -1`.
pub const BRANCH_TOLERANCE: f64 = 1e-12;

const RESIDUAL_TOLERANCE: f64 = 1e-14;
const MAX_ITERATIONS: usize = 64;

/// Principal branch of the inverse of `t -> t e^t`, defined on `[-1/e, inf)`.
///
/// Halley iteration on `f(w) = w e^w - x`. The starting point is the
/// branch-point series for `x` near `-1/e`, `x` itself for small `|x|`, and
/// the asymptotic `log x - log log x` for `x > e`. The iteration stops once the
/// residual drops below `1e-14 |x|` or the Halley step stalls at
/// rounding level.
pub fn lambert_w0(x: f64) -> Result<f64, SpecFunError> {
    if x.is_nan() {
        return Err(SpecFunError::domain("lambert_w0", x, "x >= -1/e"));
    }
    let offset = x - BRANCH_POINT;
    if offset < -BRANCH_TOLERANCE {
        return Err(SpecFunError::domain("lambert_w0", x, "x >= -1/e"));
    }
    if offset <= 0.0 {
        return Ok(-1.0);
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == f64::INFINITY {
        return Ok(f64::INFINITY);
    }

    let scale = x.abs();
    let mut w = initial_guess(x, offset);
    for _ in 0..MAX_ITERATIONS {
        let ew = w.exp();
        let residual = w * ew - x;
        if residual.abs() <= RESIDUAL_TOLERANCE * scale {
            break;
        }
        let wp1 = w + 1.0;
        if wp1 <= 0.0 {
            // Overshot the branch point; restart just above it.
            w = -1.0 + (2.0 * E * offset).sqrt();
            continue;
        }
        let denom = ew * wp1 - (w + 2.0) * residual / (2.0 * wp1);
        let step = residual / denom;
        w -= step;
        if step.abs() <= 4.0 * f64::EPSILON * w.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    Ok(w.max(-1.0))
}

fn initial_guess(x: f64, offset: f64) -> f64 {
    if x < -0.25 {
        let p = (2.0 * E * offset).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if x.abs() <= 0.25 {
        x * (1.0 - x + 1.5 * x * x)
    } else if x <= E {
        let l = x.ln_1p();
        l * (1.0 - l.ln_1p() / (2.0 + l))
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Bisection on `w e^w = x`, independent of Halley. `W_0(x) < log x` for `x > e`.
    fn bisect_w0(x: f64) -> f64 {
        let (mut lo, mut hi) = (-1.0_f64, if x > E { x.ln() } else { 1.0 });
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid * mid.exp() > x {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn fixed_points() {
        assert_eq!(lambert_w0(0.0).unwrap(), 0.0);
        assert!((lambert_w0(E).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(lambert_w0(BRANCH_POINT).unwrap(), -1.0);
    }

    #[test]
    fn ten_matches_bisection() {
        let w = lambert_w0(10.0).unwrap();
        assert!((w * w.exp() - 10.0).abs() <= 1e-12 * 10.0);
        assert!((w - bisect_w0(10.0)).abs() < 1e-12);
    }

    #[test]
    fn branch_point_tolerance() {
        assert_eq!(lambert_w0(BRANCH_POINT - 0.5e-12).unwrap(), -1.0);
        assert!(lambert_w0(BRANCH_POINT - 1e-9).is_err());
        assert!(lambert_w0(f64::NAN).is_err());
    }

    #[test]
    fn near_branch_point() {
        for k in 1..12 {
            let x = BRANCH_POINT + 10f64.powi(-k);
            let w = lambert_w0(x).unwrap();
            assert!(w >= -1.0);
            assert!((w * w.exp() - x).abs() <= 1e-12, "x = {x}");
        }
    }

    #[test]
    fn agrees_with_bisection_on_wide_range() {
        for &x in &[-0.3, -0.1, -1e-5, 1e-8, 0.2, 0.5, 1.0, 2.0, 7.5, 1e3, 1e8, 1e100, 1e300] {
            let w = lambert_w0(x).unwrap();
            let b = bisect_w0(x);
            assert!((w - b).abs() <= 1e-11 * b.abs().max(1e-8), "x = {x}: {w} vs {b}");
        }
    }
}
