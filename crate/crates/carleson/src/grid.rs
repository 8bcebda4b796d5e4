//! Discretization grids with quadrature weights.
//!
//! A [`GridSpec`] describes a rectangular or logarithmic discretization of
//! the half-line, the real line, the plane, or a truncated half-plane
//! rectangle, together with the quadrature rule used on it. Grids are plain
//! data and serialize to TOML/JSON for experiment configs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Node spacing along an axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    #[default]
    Uniform,
    Log,
}

/// Quadrature rule. Composite trapezoid pairs with uniform spacing,
/// midpoint with logarithmic spacing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum QuadRule {
    #[default]
    Trapezoid,
    Midpoint,
}

/// Grid over one of the supported domains.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "domain", rename_all = "snake_case")]
pub enum GridSpec {
    /// `(0, t_max]` with `nodes` points.
    HalfLine {
        t_max: f64,
        nodes: usize,
        #[serde(default)]
        spacing: Spacing,
        #[serde(default)]
        rule: QuadRule,
    },
    /// `[-x_max, x_max)` with `nodes` uniform points (d = 1).
    RealLine { x_max: f64, nodes: usize },
    /// `[-x_max, x_max)^2` with `nodes_per_axis` uniform points per axis.
    Plane { x_max: f64, nodes_per_axis: usize },
    /// Truncated half-plane rectangle `[x_min, x_max] x [y_min, y_max]`.
    HalfPlaneRect {
        x_min: f64,
        x_max: f64,
        y_min: f64,
        y_max: f64,
        nodes_x: usize,
        nodes_y: usize,
        #[serde(default)]
        y_spacing: Spacing,
    },
}

/// One quadrature axis: nodes plus positive weights summing to the domain
/// measure.
#[derive(Debug, Clone)]
pub struct Axis {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        let check_nodes = |n: usize| {
            if n < 2 {
                Err(Error::InvalidParameter(format!(
                    "node count {n} must be at least 2"
                )))
            } else {
                Ok(())
            }
        };
        match *self {
            GridSpec::HalfLine { t_max, nodes, .. } => {
                check_nodes(nodes)?;
                if t_max <= 0.0 {
                    return Err(Error::InvalidParameter("t_max must be positive".into()));
                }
            }
            GridSpec::RealLine { x_max, nodes } => {
                check_nodes(nodes)?;
                if x_max <= 0.0 {
                    return Err(Error::InvalidParameter("x_max must be positive".into()));
                }
            }
            GridSpec::Plane {
                x_max,
                nodes_per_axis,
            } => {
                check_nodes(nodes_per_axis)?;
                if x_max <= 0.0 {
                    return Err(Error::InvalidParameter("x_max must be positive".into()));
                }
            }
            GridSpec::HalfPlaneRect {
                x_min,
                x_max,
                y_min,
                y_max,
                nodes_x,
                nodes_y,
                ..
            } => {
                check_nodes(nodes_x)?;
                check_nodes(nodes_y)?;
                if x_min >= x_max {
                    return Err(Error::InvalidParameter("x_min must be below x_max".into()));
                }
                if y_min <= 0.0 || y_min >= y_max {
                    return Err(Error::InvalidParameter(
                        "need 0 < y_min < y_max for a half-plane rectangle".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Quadrature axis for one-dimensional domains.
    pub fn axis1(&self) -> Result<Axis> {
        self.validate()?;
        match *self {
            GridSpec::HalfLine {
                t_max,
                nodes,
                spacing,
                rule,
            } => Ok(build_axis(0.0, t_max, nodes, spacing, rule, true)),
            GridSpec::RealLine { x_max, nodes } => Ok(build_axis(
                -x_max,
                x_max,
                nodes,
                Spacing::Uniform,
                QuadRule::Trapezoid,
                false,
            )),
            _ => Err(Error::GridMismatch(
                "axis1 requires a one-dimensional grid".into(),
            )),
        }
    }

    /// x- and y-axes of a half-plane rectangle.
    pub fn axes_rect(&self) -> Result<(Axis, Axis)> {
        self.validate()?;
        match *self {
            GridSpec::HalfPlaneRect {
                x_min,
                x_max,
                y_min,
                y_max,
                nodes_x,
                nodes_y,
                y_spacing,
            } => {
                let ax = build_axis(
                    x_min,
                    x_max,
                    nodes_x,
                    Spacing::Uniform,
                    QuadRule::Trapezoid,
                    false,
                );
                let rule = match y_spacing {
                    Spacing::Uniform => QuadRule::Trapezoid,
                    Spacing::Log => QuadRule::Midpoint,
                };
                let ay = build_axis(y_min, y_max, nodes_y, y_spacing, rule, false);
                Ok((ax, ay))
            }
            _ => Err(Error::GridMismatch(
                "axes_rect requires a half-plane rectangle".into(),
            )),
        }
    }
}

/// Builds a quadrature axis on `[lo, hi]`. For the half-line with an open
/// left endpoint the first trapezoid node is nudged off zero only for log
/// spacing, where zero is unreachable anyway.
fn build_axis(
    lo: f64,
    hi: f64,
    nodes: usize,
    spacing: Spacing,
    rule: QuadRule,
    half_line: bool,
) -> Axis {
    match (spacing, rule) {
        (Spacing::Uniform, QuadRule::Trapezoid) => {
            let h = (hi - lo) / (nodes - 1) as f64;
            let xs: Vec<f64> = (0..nodes).map(|i| lo + i as f64 * h).collect();
            let mut ws = vec![h; nodes];
            ws[0] = 0.5 * h;
            ws[nodes - 1] = 0.5 * h;
            Axis {
                nodes: xs,
                weights: ws,
            }
        }
        (Spacing::Uniform, QuadRule::Midpoint) => {
            let h = (hi - lo) / nodes as f64;
            let xs: Vec<f64> = (0..nodes).map(|i| lo + (i as f64 + 0.5) * h).collect();
            Axis {
                nodes: xs,
                weights: vec![h; nodes],
            }
        }
        (Spacing::Log, _) => {
            // Geometric cells with midpoint nodes; weights are cell widths.
            let lo = if half_line && lo <= 0.0 { hi * 1e-12 } else { lo };
            let ratio = (hi / lo).powf(1.0 / nodes as f64);
            let mut xs = Vec::with_capacity(nodes);
            let mut ws = Vec::with_capacity(nodes);
            let mut left = lo;
            for _ in 0..nodes {
                let right = left * ratio;
                xs.push((left * right).sqrt());
                ws.push(right - left);
                left = right;
            }
            Axis {
                nodes: xs,
                weights: ws,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn trapezoid_weights_sum_to_length() {
        let g = GridSpec::RealLine {
            x_max: 3.0,
            nodes: 17,
        };
        let axis = g.axis1().unwrap();
        let total: f64 = axis.weights.iter().sum();
        assert_relative_eq!(total, 6.0, max_relative = 1e-12);
        assert!(axis.weights.iter().all(|&w| w > 0.0));
    }

    #[test]
    fn log_axis_covers_interval() {
        let g = GridSpec::HalfLine {
            t_max: 8.0,
            nodes: 64,
            spacing: Spacing::Log,
            rule: QuadRule::Midpoint,
        };
        let axis = g.axis1().unwrap();
        let total: f64 = axis.weights.iter().sum();
        assert_relative_eq!(total, 8.0, max_relative = 1e-9);
        for pair in axis.nodes.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn rejects_degenerate_rectangles() {
        let g = GridSpec::HalfPlaneRect {
            x_min: 0.0,
            x_max: 1.0,
            y_min: 0.0,
            y_max: 1.0,
            nodes_x: 4,
            nodes_y: 4,
            y_spacing: Spacing::Log,
        };
        assert!(g.validate().is_err());
    }

    #[test]
    fn grid_round_trips_through_toml_style_json() {
        let g = GridSpec::HalfPlaneRect {
            x_min: -2.0,
            x_max: 2.0,
            y_min: 1e-3,
            y_max: 4.0,
            nodes_x: 32,
            nodes_y: 16,
            y_spacing: Spacing::Log,
        };
        let s = serde_json::to_string(&g).unwrap();
        let back: GridSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(g, back);
    }
}
