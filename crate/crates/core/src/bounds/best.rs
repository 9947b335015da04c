use super::anisotropic::{anisotropic_bound, IsoMethod};
use super::isotropic::{eps_range_reason, general_bound, thm1_bound, thm2_bound_eps0, thm3_bound, Thm2Params};
use super::result::{BoundInputs, BoundResult, Method};
use super::spec::KernelSpec;
use super::BoundError;

/// Exponent used for the polynomial bound when none is given.
pub const DEFAULT_P: f64 = 0.5;

/// Optional parameters; `eps0` defaults to the largest admissible value for
/// the kernel's bandwidth and `p` to [`DEFAULT_P`].
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BestOptions {
    pub eps0: Option<f64>,
    pub p: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BestBound {
    /// The winning bound, relabelled as [`Method::Best`].
    pub result: BoundResult,
    /// The method that attained the minimum, `None` in the trivial regime.
    pub winner: Option<Method>,
    /// Every method tried, including invalid ones with their reasons.
    pub candidates: Vec<BoundResult>,
}

/// Smallest valid bound among the applicable methods.
///
/// Isotropic unit-ball specs try general, thm1, thm2, thm3 and the
/// decomposition; other specs only the decomposition. Ties keep the first
/// method in that order.
pub fn best_bound(spec: &KernelSpec, eps: f64, opts: BestOptions) -> Result<BestBound, BoundError> {
    let inputs = BoundInputs::new(spec, eps);
    if eps >= 1.0 {
        let mut reason = String::from("trivial: H(ε)=0 for ε ≥ 1 since ‖Id‖ = 1");
        if eps == 1.0 {
            reason.push_str("; theorem values at ε = 1 are valid but not tight");
        }
        return Ok(BestBound {
            result: BoundResult::zero(Method::Best, inputs, reason),
            winner: None,
            candidates: Vec::new(),
        });
    }
    if !(eps > 0.0) {
        return Ok(BestBound {
            result: BoundResult::invalid(Method::Best, inputs, f64::INFINITY, eps_range_reason(eps)),
            winner: None,
            candidates: Vec::new(),
        });
    }
    let p = opts.p.unwrap_or(DEFAULT_P);
    let mut candidates = Vec::new();
    if let Some(sigma) = spec.unit_ball_sigma() {
        let eps0 = opts.eps0.unwrap_or_else(|| Thm2Params::eps0_max(sigma));
        candidates.push(general_bound(spec, eps)?);
        candidates.push(thm1_bound(spec, eps)?);
        candidates.push(thm2_bound_eps0(spec, eps0, eps)?);
        candidates.push(thm3_bound(spec, p, eps)?);
    }
    match anisotropic_bound(spec, eps, IsoMethod::General) {
        Ok(r) => candidates.push(r),
        Err(BoundError::UnsupportedRegime(reason)) => {
            candidates.push(BoundResult::invalid(Method::Anisotropic, BoundInputs::new(spec, eps), f64::INFINITY, reason))
        }
        Err(e) => return Err(e),
    }
    let best = candidates
        .iter()
        .filter(|c| c.valid && !c.log_of_bound.is_nan())
        .fold(None::<&BoundResult>, |acc, c| match acc {
            Some(a) if a.log_of_bound <= c.log_of_bound => Some(a),
            _ => Some(c),
        });
    let (result, winner) = match best {
        Some(b) => {
            let mut r = b.clone();
            r.method = Method::Best;
            r.validity_reason = format!("ok; winner={}", b.method);
            (r, Some(b.method))
        }
        None => {
            let reasons: Vec<String> = candidates.iter().map(|c| format!("{}: {}", c.method, c.validity_reason)).collect();
            (
                BoundResult::invalid(Method::Best, inputs, f64::INFINITY, format!("no_valid_method: {}", reasons.join("; "))),
                None,
            )
        }
    };
    Ok(BestBound {
        result,
        winner,
        candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_regime() {
        let s = KernelSpec::isotropic(1, 1.0).unwrap();
        let b = best_bound(&s, 1.5, BestOptions::default()).unwrap();
        assert_eq!(b.result.log_covering_bound, 0.0);
        assert!(b.result.valid);
        let b = best_bound(&s, 1.0, BestOptions::default()).unwrap();
        assert!(b.result.validity_reason.contains("not tight"));
    }

    #[test]
    fn general_wins_small_eps() {
        let s = KernelSpec::isotropic(1, 1.0).unwrap();
        let b = best_bound(&s, 1e-6, BestOptions::default()).unwrap();
        assert_eq!(b.winner, Some(Method::General));
        let g = general_bound(&s, 1e-6).unwrap();
        assert_eq!(b.result.log_of_bound, g.log_of_bound);
        assert!(b.candidates.iter().filter(|c| c.valid).count() >= 4);
    }

    #[test]
    fn anisotropic_path() {
        let s = KernelSpec::anisotropic(vec![2.0, 2.0], 1.0).unwrap();
        let b = best_bound(&s, 0.5, BestOptions::default()).unwrap();
        assert_eq!(b.winner, Some(Method::Anisotropic));
        let direct = anisotropic_bound(&s, 0.5, IsoMethod::General).unwrap();
        assert_eq!(b.result.log_of_bound, direct.log_of_bound);
        let straddle = KernelSpec::anisotropic(vec![0.5, 2.0], 1.0).unwrap();
        let b = best_bound(&straddle, 0.5, BestOptions::default()).unwrap();
        assert!(!b.result.valid);
    }
}
