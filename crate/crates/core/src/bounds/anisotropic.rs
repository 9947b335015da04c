//! Anisotropic kernels on `X = r B_2^d` via the decomposition
//! `H(ε, Id: H_σ⃗(X) -> ℓ∞(X)) <= N(1, D_σ X) · H(ε, Id: H_1(B_2^d) -> ℓ∞(B_2^d))`.

use super::isotropic::{general_bound, ln_const_k, ln_loglog_shape, log_four_over, thm1_bound, thm2_bound_eps0, thm3_bound};
use super::result::{BoundInputs, BoundResult, Method};
use super::spec::KernelSpec;
use super::BoundError;
use crate::specfun::ln_binom;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverRegime {
    /// `min σ_i >= 1/r`: volumetric count `σ_1⋯σ_d (3r)^d`.
    Volume,
    /// `max σ_i <= 1/r`: `D_σ X` fits in one unit ball.
    Single,
    /// Count supplied by the caller.
    Explicit,
}

/// An upper estimate on `N(1, D_σ X)` with respect to the Euclidean norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverCount {
    pub ln: f64,
    pub regime: CoverRegime,
}

impl CoverCount {
    /// A caller-supplied count, e.g. from a greedy cover; must be at least 1.
    pub fn from_count(count: f64) -> Result<Self, BoundError> {
        if !(count >= 1.0) || count.is_infinite() {
            return Err(BoundError::InvalidInput(format!("cover count must be ≥ 1, got {count}")));
        }
        Ok(CoverCount {
            ln: count.ln(),
            regime: CoverRegime::Explicit,
        })
    }

    pub fn value(&self) -> f64 {
        self.ln.exp()
    }
}

/// `ln( σ_1⋯σ_d (3r)^d )` regardless of regime.
pub fn volume_formula(widths: &[f64], radius: f64) -> f64 {
    widths.iter().map(|s| s.ln()).sum::<f64>() + widths.len() as f64 * (3.0 * radius).ln()
}

/// `N(1, D_σ(r B_2^d))` for non-straddling bandwidths.
pub fn euclid_ball_cover_bound(spec: &KernelSpec) -> Result<CoverCount, BoundError> {
    let r = spec.radius();
    let (lo, hi) = (spec.bandwidth().min(), spec.bandwidth().max());
    if hi * r <= 1.0 {
        Ok(CoverCount {
            ln: 0.0,
            regime: CoverRegime::Single,
        })
    } else if lo * r >= 1.0 {
        Ok(CoverCount {
            ln: volume_formula(&spec.widths(), r),
            regime: CoverRegime::Volume,
        })
    } else {
        Err(BoundError::UnsupportedRegime(format!(
            "bandwidths straddle 1/r = {}: min σ = {lo}, max σ = {hi}; supply an explicit cover count",
            1.0 / r
        )))
    }
}

/// Multiplies an isotropic `σ = 1`, `r = 1` bound by a cover count.
pub fn decompose_bound(cover: CoverCount, iso: &BoundResult) -> Result<BoundResult, BoundError> {
    if !iso.method.is_isotropic() || !iso.inputs.is_unit_sigma_unit_ball() {
        return Err(BoundError::InvalidInput(format!(
            "decomposition needs an isotropic σ = 1, r = 1 bound, got method {} with σ = {}, r = {}",
            iso.method, iso.inputs.bandwidth, iso.inputs.radius
        )));
    }
    let mut out = iso.clone();
    out.method = Method::Anisotropic;
    out.constant = (cover.ln + iso.constant.ln()).exp();
    if iso.valid {
        out.log_of_bound = cover.ln + iso.log_of_bound;
        out.log_covering_bound = out.log_of_bound.exp();
    }
    Ok(out)
}

/// Isotropic bound plugged into the decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IsoMethod {
    General,
    Thm1,
    Thm2 { eps0: f64 },
    Thm3 { p: f64 },
}

impl IsoMethod {
    pub fn evaluate(self, d: usize, eps: f64) -> Result<BoundResult, BoundError> {
        let spec = KernelSpec::isotropic(d, 1.0)?;
        match self {
            IsoMethod::General => general_bound(&spec, eps),
            IsoMethod::Thm1 => thm1_bound(&spec, eps),
            IsoMethod::Thm2 { eps0 } => thm2_bound_eps0(&spec, eps0, eps),
            IsoMethod::Thm3 { p } => thm3_bound(&spec, p, eps),
        }
    }
}

/// `N(1, D_σ X) · (isotropic σ = 1 bound)` on `X = r B_2^d`.
pub fn anisotropic_bound(spec: &KernelSpec, eps: f64, iso: IsoMethod) -> Result<BoundResult, BoundError> {
    let cover = euclid_ball_cover_bound(spec)?;
    let inner = iso.evaluate(spec.d(), eps)?;
    let mut out = decompose_bound(cover, &inner)?;
    let mut inputs = BoundInputs::new(spec, eps);
    inputs.p = inner.inputs.p;
    inputs.eps0 = inner.inputs.eps0;
    out.inputs = inputs;
    Ok(out)
}

/// `tilde-K = K_{d,1} (3rσ)^d`, the constant for isotropic `σ >= 1/r` on `r B_2^d`.
pub fn const_tilde_k(d: usize, sigma: f64, r: f64) -> f64 {
    (ln_const_k(d, 1.0) + d as f64 * (3.0 * r * sigma).ln()).exp()
}

/// `ln( binom(4e+d, d) (3r/e)^d σ_1⋯σ_d log^{d+1}(4/ε) / loglog^d(4/ε) )`,
/// the decomposition with the `K_{d,1}` bound written out in one piece.
pub fn closed_form_ln(widths: &[f64], r: f64, eps: f64) -> f64 {
    let d = widths.len();
    let df = d as f64;
    ln_binom(4.0 * std::f64::consts::E, d as u64)
        + df * (3.0 * r).ln()
        - df
        + widths.iter().map(|s| s.ln()).sum::<f64>()
        + ln_loglog_shape(log_four_over(eps), d)
}

/// `λ^d(X)/λ^d(B_2^d) · (1/r₀ + 1/ε)^d`, an upper bound on `N(2ε, X)` for a
/// convex `X` containing a ball of radius `r₀`.
pub fn volume_cover_bound(vol_ratio: f64, r0: f64, eps: f64, d: usize) -> Result<f64, BoundError> {
    if !(vol_ratio > 0.0 && r0 > 0.0 && eps > 0.0 && d >= 1) {
        return Err(BoundError::InvalidInput(format!(
            "requires vol_ratio, r0, eps > 0 and d ≥ 1, got {vol_ratio}, {r0}, {eps}, {d}"
        )));
    }
    Ok(vol_ratio * (1.0 / r0 + 1.0 / eps).powi(d as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn cover_counts() {
        let a = KernelSpec::anisotropic(vec![2.0, 3.0], 1.0).unwrap();
        let c = euclid_ball_cover_bound(&a).unwrap();
        assert_eq!(c.regime, CoverRegime::Volume);
        assert!((c.value() - 54.0).abs() < 1e-12);
        let a = KernelSpec::anisotropic(vec![0.1, 0.2], 1.0).unwrap();
        assert_eq!(euclid_ball_cover_bound(&a).unwrap().value(), 1.0);
        let a = KernelSpec::anisotropic(vec![0.5, 2.0], 1.0).unwrap();
        assert!(matches!(euclid_ball_cover_bound(&a), Err(BoundError::UnsupportedRegime(_))));
    }

    #[test]
    fn half_diagonal_radius() {
        let r = 2f64.sqrt() / 2.0;
        assert!((volume_formula(&[1.0, 1.0], r).exp() - 4.5).abs() < 1e-12);
        // σ r < 1 here, so the whole domain is one unit ball
        let s = KernelSpec::new(2, super::super::Bandwidth::Isotropic(1.0), r).unwrap();
        assert_eq!(euclid_ball_cover_bound(&s).unwrap().regime, CoverRegime::Single);
    }

    #[test]
    fn decomposition_contract() {
        let iso = thm1_bound(&KernelSpec::isotropic(2, 1.0).unwrap(), 0.1).unwrap();
        let one = decompose_bound(CoverCount::from_count(1.0).unwrap(), &iso).unwrap();
        assert_eq!(one.log_of_bound, iso.log_of_bound);
        let c = decompose_bound(CoverCount::from_count(54.0).unwrap(), &iso).unwrap();
        assert!((c.log_covering_bound / iso.log_covering_bound - 54.0).abs() < 1e-10);
        let wrong = thm1_bound(&KernelSpec::isotropic(2, 2.0).unwrap(), 0.1).unwrap();
        assert!(decompose_bound(CoverCount::from_count(2.0).unwrap(), &wrong).is_err());
        assert!(CoverCount::from_count(0.5).is_err());
    }

    #[test]
    fn closed_form_matches() {
        let a = KernelSpec::anisotropic(vec![2.0, 3.0], 1.0).unwrap();
        let b = anisotropic_bound(&a, 0.1, IsoMethod::Thm1).unwrap();
        assert!((b.log_of_bound - closed_form_ln(&[2.0, 3.0], 1.0, 0.1)).abs() < 1e-10);
        assert_eq!(b.method, Method::Anisotropic);
    }

    #[test]
    fn tilde_k() {
        assert!((const_tilde_k(1, 1.0, 1.0) - (4.0 * E + 1.0) * 3.0 / E).abs() < 1e-12);
        for d in 1..=5 {
            let ratio = const_tilde_k(d, 8.0, 1.5) / const_tilde_k(d, 4.0, 1.5);
            assert!((ratio - 2f64.powi(d as i32)).abs() < 1e-9 * ratio);
        }
    }

    #[test]
    fn volume_cover() {
        let r0: f64 = 0.7;
        let v = volume_cover_bound(r0.powi(3), r0, 0.2, 3).unwrap();
        assert!((v - (1.0 + r0 / 0.2).powi(3)).abs() < 1e-12 * v);
        assert_eq!(volume_cover_bound(1.0, 1.0, 1.0, 1).unwrap(), 2.0);
        assert!((volume_cover_bound(1.0, 1.0, 0.25, 2).unwrap() - 25.0).abs() < 1e-12);
        assert!(volume_cover_bound(0.0, 1.0, 1.0, 1).is_err());
    }
}
