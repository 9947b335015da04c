use super::packing::{greedy_packing_lower, EmpiricalEstimate, PackingParams};
use super::EmpiricalError;
use crate::bounds::{
    anisotropic_bound, best_bound, general_bound, kuehn_bound_at, thm1_bound, thm2_bound_eps0, thm3_bound, BestOptions,
    BoundError, BoundResult, IsoMethod, KernelSpec, Method, Thm2Params, DEFAULT_P,
};

/// Largest dimension the oracle accepts.
pub const MAX_DIM: usize = 5;

/// Absolute slack on `lower <= upper`, in nats.
pub const SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct MethodCheck {
    pub method: Method,
    /// `None` when the method does not apply to the spec at all.
    pub bound: Option<BoundResult>,
    /// Whether the check counts: the method applies and its bound is valid.
    pub applicable: bool,
    pub pass: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub spec: KernelSpec,
    pub eps: f64,
    pub estimate: EmpiricalEstimate,
    pub checks: Vec<MethodCheck>,
    pub pass: bool,
    pub warnings: Vec<String>,
}

impl VerifyReport {
    pub fn violations(&self) -> impl Iterator<Item = &MethodCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Runs the packing oracle once and compares it with each requested bound.
///
/// `Best` and `Thm2`/`Thm3` use `opts` (defaults: largest admissible `ε₀`,
/// `p = 0.5`); `Kuehn` is evaluated at radius exactly `ε` with the oracle's
/// truncation order.
pub fn verify_bound(
    spec: &KernelSpec,
    eps: f64,
    methods: &[Method],
    params: PackingParams,
    opts: BestOptions,
) -> Result<VerifyReport, EmpiricalError> {
    if spec.d() > MAX_DIM {
        return Err(EmpiricalError::InvalidInput(format!(
            "the oracle supports d ≤ {MAX_DIM}, got d = {}",
            spec.d()
        )));
    }
    let mut warnings = Vec::new();
    if spec.d() > 2 {
        warnings.push(format!("d = {} is above the default oracle scale d ≤ 2; expect long runtimes", spec.d()));
    }
    if params.grid_size > 4096 {
        warnings.push(format!("grid = {} is above the default oracle scale 4096", params.grid_size));
    }
    if params.samples > 20_000 {
        warnings.push(format!("samples = {} is above the default oracle scale 20000", params.samples));
    }
    let estimate = greedy_packing_lower(spec, eps, params)?;
    let mut checks = Vec::with_capacity(methods.len());
    for &m in methods {
        let outcome = evaluate(spec, eps, m, &estimate, opts);
        checks.push(match outcome {
            Ok(b) => {
                let applicable = b.valid;
                let pass = !applicable || estimate.log_lower_bound <= b.log_covering_bound + SLACK;
                let note = if applicable {
                    format!("gap {}", b.log_covering_bound - estimate.log_lower_bound)
                } else {
                    format!("skipped: {}", b.validity_reason)
                };
                MethodCheck {
                    method: m,
                    bound: Some(b),
                    applicable,
                    pass,
                    note,
                }
            }
            Err(e) => MethodCheck {
                method: m,
                bound: None,
                applicable: false,
                pass: true,
                note: format!("not applicable: {e}"),
            },
        });
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport {
        spec: spec.clone(),
        eps,
        estimate,
        checks,
        pass,
        warnings,
    })
}

fn evaluate(
    spec: &KernelSpec,
    eps: f64,
    m: Method,
    est: &EmpiricalEstimate,
    opts: BestOptions,
) -> Result<BoundResult, BoundError> {
    let p = opts.p.unwrap_or(DEFAULT_P);
    match m {
        Method::Kuehn => kuehn_bound_at(spec, eps, est.trunc_order as u64).map(|k| k.result),
        Method::General => general_bound(spec, eps),
        Method::Thm1 => thm1_bound(spec, eps),
        Method::Thm2 => {
            let sigma = spec.require_unit_ball("thm2")?;
            thm2_bound_eps0(spec, opts.eps0.unwrap_or_else(|| Thm2Params::eps0_max(sigma)), eps)
        }
        Method::Thm3 => thm3_bound(spec, p, eps),
        Method::Anisotropic => anisotropic_bound(spec, eps, IsoMethod::General),
        Method::Best => best_bound(spec, eps, opts).map(|b| b.result),
    }
}
