//! Norm values and the function-space descriptors they are measured in.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Identifies the space a norm was computed in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SpaceDescriptor {
    /// `L^p` on the function's natural domain.
    Lp { p: f64 },
    /// `L^p(R_+, x^alpha dx)`.
    LpWeighted { p: f64, alpha: f64 },
    /// Hardy space of the upper half-plane.
    Hardy { p: f64 },
    /// Weighted Bergman space of the upper half-plane with weight `y^alpha`.
    Bergman { q: f64, alpha: f64 },
    /// `L^q` against a measure on the upper half-plane.
    LqMu { q: f64 },
    /// Weighted Bergman norm of a power series on the unit disk,
    /// weight `(1 - |w|^2)^gamma`.
    DiskBergman { q: f64, gamma: f64 },
    Besov {
        p: f64,
        q: f64,
        s: f64,
        homogeneous: bool,
    },
    TriebelLizorkin {
        p: f64,
        q: f64,
        s: f64,
        homogeneous: bool,
    },
    Sobolev {
        p: f64,
        s: f64,
        homogeneous: bool,
    },
}

/// A computed norm together with an absolute error estimate.
///
/// Closed-form evaluations carry `abs_error_estimate = 0`; quadrature paths
/// accumulate truncation and discretization bounds into it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormValue {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub space: SpaceDescriptor,
}

impl NormValue {
    pub fn exact(value: f64, space: SpaceDescriptor) -> Self {
        NormValue {
            value,
            abs_error_estimate: 0.0,
            space,
        }
    }

    pub fn estimated(value: f64, abs_error_estimate: f64, space: SpaceDescriptor) -> Self {
        NormValue {
            value,
            abs_error_estimate,
            space,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.value >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "norm value {} must be nonnegative",
                self.value
            )));
        }
        if !self.abs_error_estimate.is_finite() {
            return Err(Error::InvalidParameter(
                "norm error estimate must be finite".into(),
            ));
        }
        Ok(())
    }
}

/// Checks an exponent lies in `(1, ∞)`.
pub(crate) fn check_exponent(name: &str, p: f64) -> Result<()> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "{name} = {p} must lie in (1, ∞)"
        )));
    }
    Ok(())
}

/// Dual exponent `p' = p / (p - 1)`.
pub fn conjugate(p: f64) -> f64 {
    p / (p - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugate_pairs() {
        assert!((conjugate(2.0) - 2.0).abs() < 1e-15);
        assert!((conjugate(1.5) - 3.0).abs() < 1e-15);
        assert!((conjugate(4.0) - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn norm_value_serializes_with_space() {
        let nv = NormValue::exact(
            1.0,
            SpaceDescriptor::LpWeighted {
                p: 2.0,
                alpha: 0.5,
            },
        );
        let s = serde_json::to_string(&nv).unwrap();
        assert!(s.contains("\"abs_error_estimate\":0.0"));
        assert!(s.contains("\"family\":\"lp_weighted\""));
    }
}
