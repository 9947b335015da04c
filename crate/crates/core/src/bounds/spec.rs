use std::fmt;

use super::BoundError;

/// Kernel width(s) of a Gaussian kernel.
#[derive(Debug, Clone, PartialEq)]
pub enum Bandwidth {
    /// `exp(-σ² ‖x - x'‖²)`.
    Isotropic(f64),
    /// `exp(-‖D_σ x - D_σ x'‖²)` with `D_σ = diag(σ_1, ..., σ_d)`.
    Anisotropic(Vec<f64>),
}

impl Bandwidth {
    /// Per-coordinate widths, expanding an isotropic width to `d` copies.
    pub fn per_coordinate(&self, d: usize) -> Vec<f64> {
        match self {
            Bandwidth::Isotropic(s) => vec![*s; d],
            Bandwidth::Anisotropic(v) => v.clone(),
        }
    }

    pub fn max(&self) -> f64 {
        match self {
            Bandwidth::Isotropic(s) => *s,
            Bandwidth::Anisotropic(v) => v.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        }
    }

    pub fn min(&self) -> f64 {
        match self {
            Bandwidth::Isotropic(s) => *s,
            Bandwidth::Anisotropic(v) => v.iter().cloned().fold(f64::INFINITY, f64::min),
        }
    }
}

impl fmt::Display for Bandwidth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bandwidth::Isotropic(s) => write!(f, "{s}"),
            Bandwidth::Anisotropic(v) => {
                let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

/// Which embedding `Id: H_σ(X) -> ℓ∞(X)` is bounded: dimension, bandwidth,
/// and a centered Euclidean ball `X = r B_2^d` as the domain.
///
/// Translating the domain does not change covering numbers, so the center is
/// not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpec {
    d: usize,
    bandwidth: Bandwidth,
    radius: f64,
}

impl KernelSpec {
    pub fn new(d: usize, bandwidth: Bandwidth, radius: f64) -> Result<Self, BoundError> {
        if d == 0 {
            return Err(BoundError::InvalidSpec("dimension must be at least 1".into()));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(BoundError::InvalidSpec(format!("radius must be positive, got {radius}")));
        }
        match &bandwidth {
            Bandwidth::Isotropic(s) => check_width(*s)?,
            Bandwidth::Anisotropic(v) => {
                if v.len() != d {
                    return Err(BoundError::InvalidSpec(format!(
                        "expected {d} bandwidths, got {}",
                        v.len()
                    )));
                }
                for s in v {
                    check_width(*s)?;
                }
            }
        }
        Ok(KernelSpec {
            d,
            bandwidth,
            radius,
        })
    }

    /// Isotropic kernel on the unit ball `B_2^d`.
    pub fn isotropic(d: usize, sigma: f64) -> Result<Self, BoundError> {
        Self::new(d, Bandwidth::Isotropic(sigma), 1.0)
    }

    pub fn anisotropic(sigmas: Vec<f64>, radius: f64) -> Result<Self, BoundError> {
        Self::new(sigmas.len(), Bandwidth::Anisotropic(sigmas), radius)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn bandwidth(&self) -> &Bandwidth {
        &self.bandwidth
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn widths(&self) -> Vec<f64> {
        self.bandwidth.per_coordinate(self.d)
    }

    /// `Some(σ)` when this is the isotropic kernel on `B_2^d`, the setting of
    /// the isotropic theorems.
    pub fn unit_ball_sigma(&self) -> Option<f64> {
        match self.bandwidth {
            Bandwidth::Isotropic(s) if self.radius == 1.0 => Some(s),
            _ => None,
        }
    }

    pub(crate) fn require_unit_ball(&self, method: &str) -> Result<f64, BoundError> {
        self.unit_ball_sigma().ok_or_else(|| {
            BoundError::InvalidSpec(format!(
                "{method} requires an isotropic bandwidth on the unit ball (r = 1), got sigma={} r={}",
                self.bandwidth, self.radius
            ))
        })
    }
}

fn check_width(s: f64) -> Result<(), BoundError> {
    if s > 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(BoundError::InvalidSpec(format!("bandwidth must be positive, got {s}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(KernelSpec::isotropic(0, 1.0).is_err());
        assert!(KernelSpec::isotropic(2, 0.0).is_err());
        assert!(KernelSpec::isotropic(2, f64::NAN).is_err());
        assert!(KernelSpec::anisotropic(vec![1.0, -2.0], 1.0).is_err());
        assert!(KernelSpec::anisotropic(vec![1.0, 2.0], 0.0).is_err());
        assert!(KernelSpec::new(3, Bandwidth::Anisotropic(vec![1.0, 2.0]), 1.0).is_err());
    }

    #[test]
    fn unit_ball_detection() {
        assert_eq!(KernelSpec::isotropic(2, 1.5).unwrap().unit_ball_sigma(), Some(1.5));
        let wide = KernelSpec::new(2, Bandwidth::Isotropic(1.5), 2.0).unwrap();
        assert_eq!(wide.unit_ball_sigma(), None);
        let aniso = KernelSpec::anisotropic(vec![1.5, 1.5], 1.0).unwrap();
        assert_eq!(aniso.unit_ball_sigma(), None);
        assert_eq!(aniso.widths(), vec![1.5, 1.5]);
    }
}
