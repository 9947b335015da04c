use rayon::prelude::*;

use super::grid::EvalGrid;
use super::onb::{choose_trunc_order, multi_indices, tail_bound};
use super::sample::{basis_table, BallSampler};
use super::EmpiricalError;
use crate::bounds::KernelSpec;

const CHUNK: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PackingParams {
    /// Truncation order; `None` picks the smallest `N` with tail `<= ε/10`.
    pub trunc_order: Option<u32>,
    pub samples: usize,
    pub grid_size: usize,
    pub seed: u64,
}

impl PackingParams {
    pub fn new(samples: usize, grid_size: usize, seed: u64) -> Self {
        PackingParams {
            trunc_order: None,
            samples,
            grid_size,
            seed,
        }
    }
}

/// A certified lower bound on `log N(ε, Id: H_σ(X) -> ℓ∞(X))`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalEstimate {
    pub eps: f64,
    /// `log(count)` in nats.
    pub log_lower_bound: f64,
    /// Size of the packing found.
    pub count: usize,
    pub samples: usize,
    pub grid_size: usize,
    pub trunc_order: u32,
    pub seed: u64,
    /// `√((2σ²)^N/N!)` with `σ = r · max σ_i`.
    pub tail_bound: f64,
}

/// `r · max σ_i`: after `x ↦ D_σ x` the domain sits in a ball of this radius,
/// which is what the truncation tail depends on.
pub fn effective_sigma(spec: &KernelSpec) -> f64 {
    spec.radius() * spec.bandwidth().max()
}

/// Greedy packing of sampled unit-ball functions in the grid sup norm.
///
/// Candidates are scanned in seed order and kept iff their grid distance to
/// every kept function exceeds `2ε`. Grid distances never exceed true sup
/// distances, so kept functions are pairwise more than `2ε` apart in
/// `ℓ∞(X)` and no `ε`-ball holds two of them: `N(ε) >= count`.
pub fn greedy_packing_lower(spec: &KernelSpec, eps: f64, params: PackingParams) -> Result<EmpiricalEstimate, EmpiricalError> {
    if !(eps > 0.0) {
        return Err(EmpiricalError::InvalidInput(format!("requires ε > 0, got {eps}")));
    }
    if params.samples == 0 {
        return Err(EmpiricalError::InvalidInput("samples must be at least 1".into()));
    }
    let sigma_eff = effective_sigma(spec);
    let n = match params.trunc_order {
        Some(0) => return Err(EmpiricalError::InvalidInput("truncation order must be at least 1".into())),
        Some(n) => n,
        None => choose_trunc_order(sigma_eff, eps / 10.0) as u32,
    };
    let grid = EvalGrid::new(spec.d(), params.grid_size)?;
    let order = grid.scan_order();
    let scanned: Vec<Vec<f64>> = order.iter().map(|&i| grid.points()[i].clone()).collect();
    let table = basis_table(spec, n, &scanned);
    let ncoef = multi_indices(spec.d(), n).len();
    let npts = grid.count();
    let thr = 2.0 * eps;

    let mut sampler = BallSampler::new(ncoef, params.seed);
    let mut kept = Kept::default();
    let mut coeffs = vec![0.0; CHUNK * ncoef];
    let mut vals = vec![0.0; CHUNK * npts];
    let mut done = 0;
    while done < params.samples {
        let m = CHUNK.min(params.samples - done);
        for c in coeffs.chunks_mut(ncoef).take(m) {
            sampler.next_into(c);
        }
        vals[..m * npts]
            .par_chunks_mut(npts)
            .zip(coeffs[..m * ncoef].par_chunks(ncoef))
            .for_each(|(out, c)| table.eval_into(c, out));
        let summaries: Vec<(f64, f64)> = vals[..m * npts].chunks(npts).map(min_max).collect();
        let before = kept.len();
        let far: Vec<bool> = (0..m)
            .into_par_iter()
            .map(|i| kept.separated_from_all(&vals[i * npts..(i + 1) * npts], summaries[i], thr, 0..before))
            .collect();
        for i in 0..m {
            let v = &vals[i * npts..(i + 1) * npts];
            if far[i] && kept.separated_from_all(v, summaries[i], thr, before..kept.len()) {
                kept.push(v, summaries[i]);
            }
        }
        done += m;
    }
    Ok(EmpiricalEstimate {
        eps,
        log_lower_bound: (kept.len() as f64).ln(),
        count: kept.len(),
        samples: params.samples,
        grid_size: npts,
        trunc_order: n,
        seed: params.seed,
        tail_bound: tail_bound(sigma_eff, n as u64),
    })
}

fn min_max(v: &[f64]) -> (f64, f64) {
    v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)))
}

#[derive(Default)]
struct Kept {
    npts: usize,
    vals: Vec<f64>,
    summaries: Vec<(f64, f64)>,
}

impl Kept {
    fn len(&self) -> usize {
        self.summaries.len()
    }

    fn push(&mut self, v: &[f64], s: (f64, f64)) {
        self.npts = v.len();
        self.vals.extend_from_slice(v);
        self.summaries.push(s);
    }

    fn separated_from_all(&self, v: &[f64], s: (f64, f64), thr: f64, range: std::ops::Range<usize>) -> bool {
        range.into_iter().all(|j| {
            let (lo, hi) = self.summaries[j];
            // |max f - max g| and |min f - min g| never exceed the sup distance
            if (hi - s.1).abs() > thr || (lo - s.0).abs() > thr {
                return true;
            }
            let w = &self.vals[j * self.npts..(j + 1) * self.npts];
            v.iter().zip(w).any(|(a, b)| (a - b).abs() > thr)
        })
    }
}
