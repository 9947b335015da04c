use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::grid::EvalGrid;
use super::onb::{multi_indices, BasisTable, MultiIndex};
use super::EmpiricalError;
use crate::bounds::KernelSpec;

/// `f = Σ_{|k| < N} c_k e_k(D_σ x)` on `X = r B_2^d`.
///
/// The `e_k` are orthonormal, so `‖f‖_H = ‖c‖₂` and every sampled function
/// with `‖c‖₂ <= 1` lies in the unit ball of `H_σ(X)`. Coefficients follow
/// the order of [`multi_indices`].
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientFunction {
    pub spec: KernelSpec,
    pub trunc_order: u32,
    pub coeffs: Vec<f64>,
}

impl CoefficientFunction {
    pub fn zero(spec: &KernelSpec, trunc_order: u32) -> Self {
        let n = multi_indices(spec.d(), trunc_order).len();
        CoefficientFunction {
            spec: spec.clone(),
            trunc_order,
            coeffs: vec![0.0; n],
        }
    }

    /// The single basis function `e_k`.
    pub fn basis(spec: &KernelSpec, trunc_order: u32, k: &MultiIndex) -> Result<Self, EmpiricalError> {
        let mut f = Self::zero(spec, trunc_order);
        let pos = multi_indices(spec.d(), trunc_order)
            .iter()
            .position(|m| m == k)
            .ok_or_else(|| EmpiricalError::InvalidInput(format!("index {k} not below order {trunc_order}")))?;
        f.coeffs[pos] = 1.0;
        Ok(f)
    }

    pub fn h_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Values on `grid`, a grid of the unit ball mapped onto `r B_2^d`.
    pub fn eval_grid(&self, grid: &EvalGrid) -> Result<Vec<f64>, EmpiricalError> {
        if grid.d() != self.spec.d() {
            return Err(EmpiricalError::MismatchedSpec(format!(
                "grid dimension {} differs from function dimension {}",
                grid.d(),
                self.spec.d()
            )));
        }
        let table = basis_table(&self.spec, self.trunc_order, grid.points());
        let mut out = vec![0.0; grid.count()];
        table.eval_into(&self.coeffs, &mut out);
        Ok(out)
    }
}

/// Basis values at `D_σ(r u)` for unit-ball points `u`.
pub(crate) fn basis_table(spec: &KernelSpec, n: u32, unit_points: &[Vec<f64>]) -> BasisTable {
    let scale: Vec<f64> = spec.widths().iter().map(|s| s * spec.radius()).collect();
    let ys: Vec<Vec<f64>> = unit_points
        .iter()
        .map(|u| u.iter().zip(&scale).map(|(a, b)| a * b).collect())
        .collect();
    BasisTable::new(&multi_indices(spec.d(), n), n, &ys)
}

/// Seeded stream of coefficient vectors uniform in the unit ball of `ℝ^n`:
/// a normalized Gaussian direction times `U^{1/n}`.
pub(crate) struct BallSampler {
    rng: ChaCha8Rng,
    n: usize,
}

impl BallSampler {
    pub fn new(n: usize, seed: u64) -> Self {
        BallSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            n,
        }
    }

    pub fn next_into(&mut self, out: &mut [f64]) {
        loop {
            let mut norm2 = 0.0;
            for v in out.iter_mut() {
                *v = self.rng.sample(StandardNormal);
                norm2 += *v * *v;
            }
            if norm2 == 0.0 {
                continue;
            }
            let u: f64 = self.rng.random();
            let radius = u.powf(1.0 / self.n as f64);
            let scale = radius / norm2.sqrt();
            for v in out.iter_mut() {
                *v *= scale;
            }
            // rounding can leave the norm a hair above the radius
            let n2: f64 = out.iter().map(|v| v * v).sum();
            if n2 > 1.0 {
                let s = 1.0 / n2.sqrt();
                for v in out.iter_mut() {
                    *v *= s * (1.0 - f64::EPSILON);
                }
            }
            return;
        }
    }
}

pub fn sample_unit_ball_functions(
    spec: &KernelSpec,
    trunc_order: u32,
    count: usize,
    seed: u64,
) -> Result<Vec<CoefficientFunction>, EmpiricalError> {
    if count == 0 || trunc_order == 0 {
        return Err(EmpiricalError::InvalidInput("count and truncation order must be at least 1".into()));
    }
    let n = multi_indices(spec.d(), trunc_order).len();
    let mut sampler = BallSampler::new(n, seed);
    Ok((0..count)
        .map(|_| {
            let mut c = vec![0.0; n];
            sampler.next_into(&mut c);
            CoefficientFunction {
                spec: spec.clone(),
                trunc_order,
                coeffs: c,
            }
        })
        .collect())
}

/// `max_{x ∈ grid} |f(x) - g(x)|`, a lower estimate of `‖f - g‖_∞`.
pub fn sup_distance(f: &CoefficientFunction, g: &CoefficientFunction, grid: &EvalGrid) -> Result<f64, EmpiricalError> {
    if f.spec != g.spec {
        return Err(EmpiricalError::MismatchedSpec(format!(
            "functions live in different spaces: {:?} vs {:?}",
            f.spec, g.spec
        )));
    }
    let a = f.eval_grid(grid)?;
    let b = g.eval_grid(grid)?;
    Ok(a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}
