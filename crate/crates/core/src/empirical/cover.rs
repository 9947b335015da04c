use super::EmpiricalError;
use crate::bounds::KernelSpec;

/// Farthest-point-first cover: start from the first point, repeatedly add
/// the point farthest from the chosen centers (first one on ties) until every
/// point is within `eps`. Returns the number of centers.
pub fn greedy_euclid_cover(points: &[Vec<f64>], eps: f64) -> Result<usize, EmpiricalError> {
    if points.is_empty() || !(eps > 0.0) {
        return Err(EmpiricalError::InvalidInput("need a nonempty point list and ε > 0".into()));
    }
    let dist = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
    let mut nearest: Vec<f64> = points.iter().map(|p| dist(p, &points[0])).collect();
    let mut centers = 1;
    loop {
        let (far, &r) = nearest
            .iter()
            .enumerate()
            .fold((0, &f64::NEG_INFINITY), |acc, (i, r)| if r > acc.1 { (i, r) } else { acc });
        if r <= eps {
            return Ok(centers);
        }
        centers += 1;
        let c = points[far].clone();
        for (n, p) in nearest.iter_mut().zip(points) {
            *n = n.min(dist(p, &c));
        }
    }
}

/// Points `D_σ(r u)` for `u` on a Cartesian grid of `[-1,1]^d` with
/// `per_axis` nodes per axis, restricted to the unit ball.
pub fn transformed_ball_grid(spec: &KernelSpec, per_axis: usize) -> Vec<Vec<f64>> {
    let d = spec.d();
    let scale: Vec<f64> = spec.widths().iter().map(|s| s * spec.radius()).collect();
    let node = |i: usize| -1.0 + 2.0 * i as f64 / (per_axis.max(2) - 1) as f64;
    let total = per_axis.pow(d as u32);
    let mut out = Vec::new();
    let mut u = vec![0.0; d];
    for mut idx in 0..total {
        for c in u.iter_mut() {
            *c = node(idx % per_axis);
            idx /= per_axis;
        }
        if u.iter().map(|v| v * v).sum::<f64>() <= 1.0 {
            out.push(u.iter().zip(&scale).map(|(a, b)| a * b).collect());
        }
    }
    out
}
