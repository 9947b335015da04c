use std::f64::consts::E;

use proptest::prelude::*;
use rkhsent::bounds::*;

const SLACK: f64 = 1e-9;

fn iso(d: usize, s: f64) -> KernelSpec {
    KernelSpec::isotropic(d, s).unwrap()
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn ln_factorial(d: usize) -> f64 {
    (1..=d).map(|i| (i as f64).ln()).sum()
}

#[test]
fn dominance_chain() {
    for d in 1..=3 {
        for sigma in [0.5, 1.0, 2.0, 5.0] {
            let spec = iso(d, sigma);
            let params = Thm2Params::new(sigma, Thm2Params::eps0_max(sigma)).unwrap();
            for eps in log_grid(1e-8, 1.0, 33) {
                let g = general_bound(&spec, eps).unwrap();
                assert!(g.valid);
                let t1 = thm1_bound(&spec, eps).unwrap();
                assert!(g.log_of_bound <= t1.log_of_bound + SLACK, "thm1 d={d} σ={sigma} ε={eps}");
                let t2 = thm2_bound(&spec, &params, eps).unwrap();
                if t2.valid {
                    assert!(g.log_of_bound <= t2.log_of_bound + SLACK, "thm2 d={d} σ={sigma} ε={eps}");
                }
                for p in [0.1, 1.0 / E, 0.9] {
                    let t3 = thm3_bound(&spec, p, eps).unwrap();
                    assert!(g.log_of_bound <= t3.log_of_bound + SLACK, "thm3 d={d} σ={sigma} ε={eps} p={p}");
                }
            }
        }
    }
}

#[test]
fn thm2_dominance_at_smaller_eps0() {
    for d in 1..=3 {
        for sigma in [0.5, 1.0, 2.0, 5.0] {
            let spec = iso(d, sigma);
            let eps0 = Thm2Params::eps0_max(sigma).min(1e-6);
            let params = Thm2Params::new(sigma, eps0).unwrap();
            for eps in log_grid(1e-300, eps0, 25) {
                let g = general_bound(&spec, eps).unwrap();
                let t2 = thm2_bound(&spec, &params, eps).unwrap();
                assert!(t2.valid);
                assert!(g.log_of_bound <= t2.log_of_bound + SLACK, "d={d} σ={sigma} ε={eps}");
            }
        }
    }
}

#[test]
fn sigma_sandwich() {
    for d in 1..=20usize {
        for sigma in [1.0, 2.0, 5.0, 10.0] {
            let s2 = 1.0 + sigma * sigma;
            if 2.0 * E * s2 < d as f64 {
                continue;
            }
            let k = ln_const_k(d, sigma);
            let base = d as f64 * s2.ln() - ln_factorial(d);
            assert!(base + d as f64 * 2f64.ln() <= k + SLACK, "d={d} σ={sigma}");
            assert!(k <= base + d as f64 * 4f64.ln() + SLACK, "d={d} σ={sigma}");
        }
    }
    // the d = 3 examples on a finer σ grid
    for i in 0..50 {
        let sigma = 0.2 + 0.2 * i as f64;
        if 2.0 * E * (1.0 + sigma * sigma) < 3.0 {
            continue;
        }
        let ratio = const_k(3, sigma) / (1.0 + sigma * sigma).powi(3);
        assert!(ratio >= 8.0 / 6.0 - SLACK && ratio <= 64.0 / 6.0 + SLACK, "σ={sigma}");
    }
}

#[test]
fn const_k_increasing_in_sigma() {
    for d in [1, 2, 3, 7, 20] {
        let k0 = ln_rank_zero(d);
        let mut prev = f64::NEG_INFINITY;
        for sigma in log_grid(1e-3, 1e3, 60) {
            let k = ln_const_k(d, sigma);
            assert!(k > prev);
            assert!(k > k0);
            prev = k;
        }
    }
}

// ln( binom(2e + d, d) e^{-d} )
fn ln_rank_zero(d: usize) -> f64 {
    let t = 2.0 * E;
    (1..=d).map(|i| (1.0 + t / i as f64).ln()).sum::<f64>() - d as f64
}

#[test]
fn monotone_in_eps() {
    for d in 1..=3 {
        for sigma in [0.5, 1.0, 2.0] {
            let spec = iso(d, sigma);
            let params = Thm2Params::new(sigma, Thm2Params::eps0_max(sigma)).unwrap();
            let grid = log_grid(1e-12, 1.0, 80);
            let mut last: Vec<Option<f64>> = vec![None; 4];
            for eps in grid.iter().rev().copied() {
                let y = (4.0 / eps).ln();
                let vals = [
                    Some(general_bound(&spec, eps).unwrap().log_of_bound),
                    // the loglog shape only decreases in y once log y ≥ d/(d+1)
                    (y.ln() >= d as f64 / (d as f64 + 1.0)).then(|| thm1_bound(&spec, eps).unwrap().log_of_bound),
                    Some(thm2_bound(&spec, &params, eps).unwrap()).filter(|r| r.valid).map(|r| r.log_of_bound),
                    Some(thm3_bound(&spec, 0.5, eps).unwrap().log_of_bound),
                ];
                for (slot, v) in last.iter_mut().zip(vals) {
                    if let Some(v) = v {
                        if let Some(prev) = *slot {
                            assert!(v >= prev - SLACK, "d={d} σ={sigma} ε={eps}");
                        }
                        *slot = Some(v);
                    }
                }
            }
        }
    }
}

#[test]
fn thm1_shape_turns_near_one() {
    // for d = 1 and ε = 1, log y = log log 4 < 1/2, where the shape still rises in y
    let spec = iso(1, 1.0);
    let a = thm1_bound(&spec, 1.0).unwrap().log_of_bound;
    let b = thm1_bound(&spec, 0.9).unwrap().log_of_bound;
    assert!(b < a);
}

#[test]
fn thm2_constant_approaches_limit() {
    for d in 1..=3usize {
        let limit = d as f64 * 2f64.ln() - ln_factorial(d);
        let mut prev = f64::INFINITY;
        for y0 in [1e1, 1e2, 1e4, 1e8, 1e16, 1e40, 1e100, 1e300] {
            let p = Thm2Params::from_y0(1.0, y0).unwrap();
            let k = ln_const_k_eps0(d, &p);
            assert!(k > limit && k < prev + SLACK, "d={d} y0={y0}");
            prev = k;
        }
        let at_1e12 = ln_const_k_eps0(d, &Thm2Params::new(1.0, 1e-12).unwrap());
        assert!(at_1e12 > limit);
        let far = Thm2Params::from_y0(1.0, 1e40).unwrap();
        assert!(ln_const_k_eps0(d, &far) - limit < 1.25f64.ln(), "d={d}");
    }
}

#[test]
#[ignore = "fails: at ε₀ = 1e-12 the ratio to 2^d/d! is about 1.9, 3.9, 8.0 for d = 1, 2, 3"]
fn thm2_constant_within_quarter_at_1e12() {
    for d in 1..=3usize {
        let limit = d as f64 * 2f64.ln() - ln_factorial(d);
        let p = Thm2Params::new(1.0, 1e-12).unwrap();
        assert!(ln_const_k_eps0(d, &p) - limit < 1.25f64.ln(), "d={d}");
    }
}

#[test]
fn thm3_constant_growth_is_subexponential() {
    // ln K_d / d decreases and stays within a constant of loglog d / log d
    let mut prev = f64::INFINITY;
    for d in [64usize, 128, 256, 512, 1024, 2048, 4096, 1 << 14, 1 << 16, 1 << 20, 1_000_000_000] {
        let df = d as f64;
        let k = ln_const_k_p(d, 1.0, 0.5).unwrap() / df;
        assert!(k < prev, "d={d}");
        assert!(k * df.ln() / df.ln().ln() < 3.5, "d={d}");
        prev = k;
    }
}

#[test]
#[ignore = "fails: ln K_{d,1,0.5} / d is about 0.76 at d = 512 and 0.61 at d = 4096, so K e^{-0.1 d} still grows; the ratio decays like loglog d / log d"]
fn thm3_constant_times_exp_decreasing_on_window() {
    let mut prev = f64::INFINITY;
    for d in (512..=4096).step_by(512) {
        let v = ln_const_k_p(d, 1.0, 0.5).unwrap() - 0.1 * d as f64;
        assert!(v < prev, "d={d}");
        prev = v;
    }
}

#[test]
fn poly_const_bound_holds() {
    let ps = [1e-3, 3e-3, 1e-2, 3e-2, 0.1, 0.2, 0.3, 1.0 / E];
    for d in 1..=20usize {
        for &p0 in &ps {
            for &p in ps.iter().filter(|&&p| p <= p0) {
                let k = ln_const_k_p(d, 1.0, p).unwrap();
                let b = ln_poly_const_bound(d, p, p0).unwrap();
                assert!(k <= b + SLACK, "d={d} p={p} p0={p0}");
            }
        }
    }
    let kp = const_k_p(2, 1.0, 0.1).unwrap();
    let c0 = const_c0(1.0 / E).unwrap();
    assert!(kp <= 0.5 * c0 * c0 * 2f64.sqrt() * 1000.0 / 10f64.ln().powi(2));
}

#[test]
fn closed_form_equals_decomposition() {
    for sigmas in [vec![2.0, 3.0], vec![1.0, 1.0, 4.0], vec![1.5]] {
        for r in [1.0, 2.0] {
            let spec = KernelSpec::anisotropic(sigmas.clone(), r).unwrap();
            for eps in [0.5, 0.1, 1e-3, 1e-10] {
                let b = anisotropic_bound(&spec, eps, IsoMethod::Thm1).unwrap();
                assert!((b.log_of_bound - closed_form_ln(&sigmas, r, eps)).abs() < 1e-10);
            }
        }
    }
}

proptest! {
    #[test]
    fn general_below_theorems(d in 1usize..6, sigma in 0.2f64..8.0, le in -40.0f64..0.0, p in 0.05f64..3.0) {
        let spec = iso(d, sigma);
        let eps = le.exp();
        let g = general_bound(&spec, eps).unwrap();
        prop_assert!(g.log_of_bound <= thm1_bound(&spec, eps).unwrap().log_of_bound + SLACK);
        prop_assert!(g.log_of_bound <= thm3_bound(&spec, p, eps).unwrap().log_of_bound + SLACK);
        let t2 = thm2_bound_eps0(&spec, Thm2Params::eps0_max(sigma), eps).unwrap();
        if t2.valid {
            prop_assert!(g.log_of_bound <= t2.log_of_bound + SLACK);
        }
    }

    #[test]
    fn results_are_consistent(d in 1usize..5, sigma in 0.2f64..8.0, le in -20.0f64..0.0) {
        let spec = iso(d, sigma);
        for r in [general_bound(&spec, le.exp()).unwrap(), thm1_bound(&spec, le.exp()).unwrap()] {
            prop_assert!(r.valid && r.log_covering_bound >= 0.0);
            let rel = (r.log_of_bound.exp() - r.log_covering_bound).abs() / r.log_covering_bound;
            prop_assert!(rel <= 1e-9);
        }
    }

    #[test]
    fn thm2_params_consistent(sigma in 0.3f64..6.0, extra in 0.0f64..50.0) {
        let y0 = Thm2Params::y0_min(sigma) + extra;
        let p = Thm2Params::from_y0(sigma, y0).unwrap();
        let w = rkhsent::specfun::lambert_w0(y0 / (E * sigma * sigma)).unwrap();
        prop_assert!((p.x0() - 2.0 * y0 / w).abs() <= 1e-10 * p.x0());
    }

    #[test]
    fn out_of_range_is_flagged(d in 1usize..4, sigma in 0.3f64..4.0, eps in 1.0001f64..50.0) {
        let spec = iso(d, sigma);
        prop_assert!(!general_bound(&spec, eps).unwrap().valid);
        prop_assert!(!thm1_bound(&spec, eps).unwrap().valid);
        prop_assert!(!thm3_bound(&spec, 0.5, eps).unwrap().valid);
        prop_assert_eq!(best_bound(&spec, eps, BestOptions::default()).unwrap().result.log_covering_bound, 0.0);
    }

    #[test]
    fn best_is_minimum(d in 1usize..4, sigma in 0.3f64..4.0, le in -30.0f64..-0.01) {
        let spec = iso(d, sigma);
        let b = best_bound(&spec, le.exp(), BestOptions::default()).unwrap();
        for c in b.candidates.iter().filter(|c| c.valid) {
            prop_assert!(b.result.log_of_bound <= c.log_of_bound);
        }
    }
}
