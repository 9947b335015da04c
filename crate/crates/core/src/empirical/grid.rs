use super::onb::NORM_SLACK;
use super::EmpiricalError;

const PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Points in the closed unit ball `B_2^d` on which sup norms are estimated.
///
/// `d = 1` is the uniform grid on `[-1, 1]` including both ends. For `d >= 2`
/// the grid is the origin, the `2d` poles `±e_i`, then Halton points of
/// `[-1,1]^d` that fall into the ball; smaller grids are prefixes of larger
/// ones.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalGrid {
    d: usize,
    points: Vec<Vec<f64>>,
}

impl EvalGrid {
    pub fn new(d: usize, count: usize) -> Result<Self, EmpiricalError> {
        if d == 0 || d > PRIMES.len() {
            return Err(EmpiricalError::InvalidInput(format!(
                "grid dimension must be in 1..={}, got {d}",
                PRIMES.len()
            )));
        }
        let min = if d == 1 { 2 } else { 1 + 2 * d };
        if count < min {
            return Err(EmpiricalError::InvalidInput(format!(
                "grid needs at least {min} points in dimension {d}, got {count}"
            )));
        }
        let points = if d == 1 {
            (0..count)
                .map(|i| vec![-1.0 + 2.0 * i as f64 / (count - 1) as f64])
                .collect()
        } else {
            let mut pts = vec![vec![0.0; d]];
            for i in 0..d {
                for s in [1.0, -1.0] {
                    let mut p = vec![0.0; d];
                    p[i] = s;
                    pts.push(p);
                }
            }
            let mut i = 1u64;
            while pts.len() < count {
                let p: Vec<f64> = PRIMES[..d].iter().map(|&b| 2.0 * radical_inverse(i, b) - 1.0).collect();
                if p.iter().map(|v| v * v).sum::<f64>() <= 1.0 {
                    pts.push(p);
                }
                i += 1;
            }
            pts
        };
        Ok(EvalGrid { d, points })
    }

    /// A caller-supplied point set; every point must lie in the unit ball.
    pub fn from_points(points: Vec<Vec<f64>>) -> Result<Self, EmpiricalError> {
        let d = points.first().map(|p| p.len()).unwrap_or(0);
        if d == 0 {
            return Err(EmpiricalError::InvalidInput("grid must be nonempty".into()));
        }
        for p in &points {
            if p.len() != d {
                return Err(EmpiricalError::InvalidInput("grid points have mixed dimensions".into()));
            }
            if p.iter().map(|v| v * v).sum::<f64>().sqrt() > 1.0 + NORM_SLACK {
                return Err(EmpiricalError::Domain(format!("grid point {p:?} outside the unit ball")));
            }
        }
        Ok(EvalGrid { d, points })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn count(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// Indices ordered coarse to fine so that separated pairs are usually
    /// detected after a few points.
    pub(crate) fn scan_order(&self) -> Vec<usize> {
        let n = self.points.len();
        if self.d > 1 {
            return (0..n).collect();
        }
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut stride = (n - 1).next_power_of_two();
        loop {
            for i in (0..n).step_by(stride.max(1)) {
                if !seen[i] {
                    seen[i] = true;
                    order.push(i);
                }
            }
            if stride <= 1 {
                break;
            }
            stride /= 2;
        }
        order
    }
}

fn radical_inverse(mut i: u64, base: u32) -> f64 {
    let b = base as u64;
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += (i % b) as f64 * f;
        i /= b;
        f *= inv;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inside_ball() {
        for d in 1..=4 {
            let g = EvalGrid::new(d, 500).unwrap();
            assert_eq!(g.count(), 500);
            assert!(g.points().iter().all(|p| p.iter().map(|v| v * v).sum::<f64>() <= 1.0 + 1e-15));
        }
        let g = EvalGrid::new(1, 5).unwrap();
        assert_eq!(g.points()[0], vec![-1.0]);
        assert_eq!(g.points()[4], vec![1.0]);
        assert!(EvalGrid::new(2, 3).is_err());
        assert!(EvalGrid::from_points(vec![vec![1.0, 0.5]]).is_err());
    }

    #[test]
    fn nested_prefixes() {
        let small = EvalGrid::new(3, 100).unwrap();
        let big = EvalGrid::new(3, 400).unwrap();
        assert_eq!(small.points(), &big.points()[..100]);
        assert_eq!(small.points()[0], vec![0.0; 3]);
    }

    #[test]
    fn scan_order_is_permutation() {
        for n in [2, 3, 17, 2048] {
            let g = EvalGrid::new(1, n).unwrap();
            let mut o = g.scan_order();
            assert_eq!(o[0], 0);
            o.sort();
            assert_eq!(o, (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn halton_values() {
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(3, 2), 0.75);
        assert!((radical_inverse(5, 3) - (2.0 / 3.0 + 1.0 / 9.0)).abs() < 1e-15);
    }
}
