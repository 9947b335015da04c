//! Natural logarithm of the Gamma function on the positive real axis.
//!
//! For `z >= 10` the Stirling series
//!
//! `ln Γ(z) = (z - 1/2) ln z - z + ln(2π)/2 + Σ_k B_{2k} / (2k (2k - 1) z^{2k-1})`
//!
//! is truncated after eight terms; the first omitted term is below `1e-18`
//! at `z = 10`. Smaller arguments are shifted up with `Γ(z + 1) = z Γ(z)`.

use std::f64::consts::PI;

use super::SpecFunError;

const STIRLING_MIN: f64 = 10.0;

/// `B_{2k} / (2k (2k - 1))` for `k = 1..=8`.
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

/// `ln Γ(t)` for `t > 0`.
pub fn log_gamma(t: f64) -> Result<f64, SpecFunError> {
    if !(t > 0.0) {
        return Err(SpecFunError::domain("log_gamma", t, "t > 0"));
    }
    Ok(ln_gamma_pos(t))
}

pub(crate) fn ln_gamma_pos(t: f64) -> f64 {
    if t == f64::INFINITY {
        return f64::INFINITY;
    }
    if t >= STIRLING_MIN {
        return stirling(t);
    }
    let mut z = t;
    let mut prod = 1.0;
    while z < STIRLING_MIN {
        prod *= z;
        z += 1.0;
    }
    stirling(z) - prod.ln()
}

/// `ln Γ(z + t) - ln Γ(z)` for `z >= 10`, `t >= 0`, without cancellation
/// between the two large logarithms.
pub(crate) fn ln_gamma_ratio(z: f64, t: f64) -> f64 {
    debug_assert!(z >= STIRLING_MIN && t >= 0.0);
    (z - 0.5) * (t / z).ln_1p() + t * (z + t).ln() - t + series(z + t) - series(z)
}

fn stirling(z: f64) -> f64 {
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series(z)
}

fn series(z: f64) -> f64 {
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    // Horner in 1/z^2, outermost factor 1/z.
    let mut acc = 0.0;
    for c in STIRLING_COEFFS.iter().rev() {
        acc = acc * inv2 + c;
    }
    acc * inv
}
