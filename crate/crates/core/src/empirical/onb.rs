//! The orthonormal basis `e_k(x) = √((2σ²)^{|k|}/k!) x^k exp(-σ²‖x‖²)` of
//! `H_σ(X)` and its truncation tail.

use std::fmt;

use super::EmpiricalError;
use crate::specfun::{ln_gamma_pos, ln_truncation_tail};

/// Tolerance on `‖x‖ <= 1` for points produced by floating-point maps.
pub(crate) const NORM_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    k: Vec<u32>,
}

impl MultiIndex {
    pub fn new(k: Vec<u32>) -> Self {
        MultiIndex { k }
    }

    pub fn zero(d: usize) -> Self {
        MultiIndex { k: vec![0; d] }
    }

    pub fn components(&self) -> &[u32] {
        &self.k
    }

    pub fn dim(&self) -> usize {
        self.k.len()
    }

    /// `|k| = k_1 + ... + k_d`.
    pub fn order(&self) -> u32 {
        self.k.iter().sum()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.k.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All `k ∈ ℕ₀^d` with `|k| < n`, by increasing order and lexicographically
/// decreasing within an order. There are `binom(n - 1 + d, d)` of them.
pub fn multi_indices(d: usize, n: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; d];
    for order in 0..n {
        fill(&mut cur, 0, order, &mut out);
    }
    out
}

fn fill(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(MultiIndex::new(cur.clone()));
        return;
    }
    for v in (0..=left).rev() {
        cur[pos] = v;
        fill(cur, pos + 1, left - v, out);
    }
}

/// `e_k(x)` for the bandwidth `sigma`, with `x` in the closed unit ball.
pub fn onb_eval(k: &MultiIndex, sigma: f64, x: &[f64]) -> Result<f64, EmpiricalError> {
    if k.dim() != x.len() {
        return Err(EmpiricalError::InvalidInput(format!(
            "index has dimension {}, point has {}",
            k.dim(),
            x.len()
        )));
    }
    let norm2: f64 = x.iter().map(|v| v * v).sum();
    if norm2.sqrt() > 1.0 + NORM_SLACK {
        return Err(EmpiricalError::Domain(format!("point norm {} exceeds 1", norm2.sqrt())));
    }
    let mut ln = 0.5 * k.order() as f64 * (2.0 * sigma * sigma).ln() - sigma * sigma * norm2;
    let mut negative = false;
    for (&kc, &xc) in k.components().iter().zip(x) {
        if kc == 0 {
            continue;
        }
        if xc == 0.0 {
            return Ok(0.0);
        }
        ln += kc as f64 * xc.abs().ln() - 0.5 * ln_gamma_pos(kc as f64 + 1.0);
        negative ^= xc < 0.0 && kc % 2 == 1;
    }
    let v = ln.exp();
    Ok(if negative { -v } else { v })
}

/// `√((2σ²)^N / N!)`, the norm of the part of the embedding beyond order `N`.
pub fn tail_bound(sigma: f64, n: u64) -> f64 {
    ln_truncation_tail(sigma, n).exp()
}

/// Smallest `N >= max(1, 2σ²)` with `tail_bound(σ, N) <= target`. Past
/// `2σ²` the tail decreases in `N`, so every larger order also qualifies.
pub fn choose_trunc_order(sigma: f64, target: f64) -> u64 {
    let mut n = (2.0 * sigma * sigma).ceil().max(1.0) as u64;
    let ln_target = target.ln();
    while ln_truncation_tail(sigma, n) > ln_target {
        n += 1;
    }
    n
}

/// Values of every `e_k^1(y)`, `|k| < n`, at points `y` that already include
/// the bandwidth and radius scaling; stored point-major.
#[derive(Debug, Clone)]
pub(crate) struct BasisTable {
    pub ncoef: usize,
    pub values: Vec<f64>,
}

impl BasisTable {
    pub fn new(indices: &[MultiIndex], n: u32, points: &[Vec<f64>]) -> Self {
        let ncoef = indices.len();
        let mut values = Vec::with_capacity(ncoef * points.len());
        let mut phi: Vec<Vec<f64>> = Vec::new();
        for y in points {
            // φ_m(t) = √(2^m/m!) t^m by φ_m = φ_{m-1} · t · √(2/m)
            phi.clear();
            for &t in y {
                let mut row = Vec::with_capacity(n as usize);
                let mut v = 1.0;
                row.push(v);
                for m in 1..n {
                    v *= t * (2.0 / m as f64).sqrt();
                    row.push(v);
                }
                phi.push(row);
            }
            let damp = (-y.iter().map(|t| t * t).sum::<f64>()).exp();
            for k in indices {
                let mut v = damp;
                for (c, &kc) in k.components().iter().enumerate() {
                    v *= phi[c][kc as usize];
                }
                values.push(v);
            }
        }
        BasisTable {
            ncoef,
            values,
        }
    }

    /// `out[p] = Σ_j coeffs[j] · e_j(y_p)`.
    pub fn eval_into(&self, coeffs: &[f64], out: &mut [f64]) {
        for (p, o) in out.iter_mut().enumerate() {
            *o = dot(&self.values[p * self.ncoef..(p + 1) * self.ncoef], coeffs);
        }
    }
}

/// Four-lane dot product with a fixed summation order.
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0f64; 4];
    let ca = a.chunks_exact(4);
    let cb = b.chunks_exact(4);
    let (ra, rb) = (ca.remainder(), cb.remainder());
    for (x, y) in ca.zip(cb) {
        acc[0] += x[0] * y[0];
        acc[1] += x[1] * y[1];
        acc[2] += x[2] * y[2];
        acc[3] += x[3] * y[3];
    }
    let mut s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for (x, y) in ra.iter().zip(rb) {
        s += x * y;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, PI};

    fn binom(n: u64, k: u64) -> u64 {
        (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
    }

    #[test]
    fn index_counts() {
        for d in 1..=4 {
            for n in 1..=9u32 {
                let idx = multi_indices(d, n);
                assert_eq!(idx.len() as u64, binom(n as u64 - 1 + d as u64, d as u64));
                assert!(idx.windows(2).all(|w| w[0].order() <= w[1].order()));
                assert!(idx.iter().all(|k| k.order() < n));
            }
        }
        assert_eq!(multi_indices(2, 2)[1].components(), &[1, 0]);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(onb_eval(&MultiIndex::zero(1), 1.0, &[0.0]).unwrap(), 1.0);
        let v = onb_eval(&MultiIndex::new(vec![1]), 1.0, &[1.0]).unwrap();
        assert!((v - 2f64.sqrt() / E).abs() < 1e-15);
        let v = onb_eval(&MultiIndex::new(vec![2, 1]), 1.0, &[0.5, 0.5]).unwrap();
        // √(2³/(2!·1!)) · 0.5² · 0.5 · e^{-0.5}
        let direct = (8.0f64 / 2.0).sqrt() * 0.125 * (-0.5f64).exp();
        assert!((v - direct).abs() < 1e-15);
        let v = onb_eval(&MultiIndex::new(vec![1, 2]), 2.0, &[-0.3, 0.4]).unwrap();
        let direct = (8.0f64.powi(3) / 2.0).sqrt() * -0.3 * 0.16 * (-4.0f64 * 0.25).exp();
        assert!((v - direct).abs() < 1e-14);
        assert!(onb_eval(&MultiIndex::zero(2), 1.0, &[0.8, 0.8]).is_err());
    }

    #[test]
    fn table_matches_direct() {
        let idx = multi_indices(2, 6);
        let sigma = 1.7;
        let xs = vec![vec![0.1, -0.7], vec![0.6, 0.6], vec![0.0, 1.0]];
        let ys: Vec<Vec<f64>> = xs.iter().map(|x| x.iter().map(|v| v * sigma).collect()).collect();
        let t = BasisTable::new(&idx, 6, &ys);
        for (p, x) in xs.iter().enumerate() {
            for (j, k) in idx.iter().enumerate() {
                let a = t.values[p * t.ncoef + j];
                let b = onb_eval(k, sigma, x).unwrap();
                assert!((a - b).abs() < 1e-13, "{k} at {x:?}");
            }
        }
    }

    #[test]
    fn tail_values() {
        assert!((tail_bound(1.0, 2) / 2f64.sqrt() - 1.0).abs() < 1e-14);
        let direct = (0.5f64.powi(8) / 40320.0).sqrt();
        assert!((tail_bound(0.5, 8) / direct - 1.0).abs() < 1e-14);
        for n in [10u64, 50, 200, 1000] {
            let ln_lower = crate::specfun::ln_e_lower(1.0, n as f64).unwrap();
            let ln_tail = crate::specfun::ln_truncation_tail(1.0, n);
            assert!(ln_tail <= ln_lower - (2.0 * (2.0 * PI).powf(0.25)).ln());
        }
    }

    #[test]
    fn trunc_order_choice() {
        let n = choose_trunc_order(1.0, 0.05);
        assert!(tail_bound(1.0, n) <= 0.05);
        assert!(n == 2 || tail_bound(1.0, n - 1) > 0.05);
        assert!(choose_trunc_order(3.0, 1.0) >= 18);
    }

    #[test]
    fn reproducing_identity() {
        // Σ_{k<8} e_k(x) e_k(y) against the kernel on a dense quadrature grid
        let idx = multi_indices(1, 8);
        let m = 100_000;
        let ys = [-0.9, -0.2, 0.0, 0.5, 1.0];
        let mut worst: f64 = 0.0;
        for i in 0..m {
            let x = -1.0 + 2.0 * i as f64 / (m - 1) as f64;
            for &y in &ys {
                let s: f64 = idx
                    .iter()
                    .map(|k| onb_eval(k, 1.0, &[x]).unwrap() * onb_eval(k, 1.0, &[y]).unwrap())
                    .sum();
                worst = worst.max((s - (-(x - y) * (x - y)).exp()).abs());
            }
        }
        assert!(worst < 1e-2, "{worst}");
    }
}
