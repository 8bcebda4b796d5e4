//! Test-function dictionary on the half-line and on `R^d` (`d <= 2`).
//!
//! Every kind carries closed-form norms and transforms where they exist;
//! quadrature is the fallback. Random members are generated from a seeded
//! counter-based stream so that campaigns are bit-reproducible.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::grid::{GridSpec, QuadRule, Spacing};
use crate::norms::{check_exponent, NormValue, SpaceDescriptor};
use crate::util::{CompensatedSum, CounterRng};

const TWO_PI: f64 = std::f64::consts::TAU;

/// A single modulated mode of a band-limited function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    pub freq: f64,
    pub coeff: Complex64,
}

/// Natural domain of a dictionary function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    HalfLine,
    Line(usize),
}

/// Member of the closed-form test dictionary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TestFunction {
    /// Piecewise-constant function on the half-line: value `values[j]` on
    /// `(breakpoints[j], breakpoints[j+1])`, zero elsewhere.
    StepDyadic {
        breakpoints: Vec<f64>,
        values: Vec<Complex64>,
    },
    /// `coeff * t^power * exp(-decay * t) * exp(2πi freq t)` on the half-line,
    /// `decay > 0`.
    ExpPoly {
        coeff: Complex64,
        decay: f64,
        freq: f64,
        power: u32,
    },
    /// `exp(-π |x - center|^2 / width^2)` on `R^d`, `d = center.len()`.
    Gaussian { center: Vec<f64>, width: f64 },
    /// Gaussian-envelope sum of modes with frequencies inside the dyadic band
    /// `[2^band_lo, 2^band_hi]`; reproducible from the seed.
    BandLimited {
        seed: u64,
        band_lo: i32,
        band_hi: i32,
        envelope_width: f64,
        modes: Vec<Mode>,
    },
    /// Indicator of a finite union of disjoint intervals on the real line.
    Indicator { intervals: Vec<(f64, f64)> },
    /// Power-series coefficients for the disk module; as a function on the
    /// half-line it is the step function `Σ a_k 1_{(k, k+1)}`.
    CoeffSeries { coeffs: Vec<Complex64> },
}

impl TestFunction {
    pub fn step(breakpoints: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if breakpoints.len() < 2 || values.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidParameter(
                "step function needs n+1 breakpoints for n values".into(),
            ));
        }
        if breakpoints[0] < 0.0 {
            return Err(Error::InvalidParameter(
                "step breakpoints must be nonnegative".into(),
            ));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "step breakpoints must be strictly increasing".into(),
            ));
        }
        Ok(TestFunction::StepDyadic {
            breakpoints,
            values,
        })
    }

    /// Indicator of `(0, 1)` as a step function.
    pub fn unit_step() -> Self {
        TestFunction::StepDyadic {
            breakpoints: vec![0.0, 1.0],
            values: vec![Complex64::new(1.0, 0.0)],
        }
    }

    pub fn exp_poly(decay: f64, freq: f64, power: u32) -> Result<Self> {
        if decay <= 0.0 {
            return Err(Error::InvalidParameter("decay rate must be positive".into()));
        }
        Ok(TestFunction::ExpPoly {
            coeff: Complex64::new(1.0, 0.0),
            decay,
            freq,
            power,
        })
    }

    /// The box test exponential `exp(-2πi conj(λ) t)` attached to a point
    /// `λ = x + iy` of the upper half-plane (`y > 0`).
    pub fn box_exponential(lambda: Complex64) -> Result<Self> {
        if lambda.im <= 0.0 {
            return Err(Error::InvalidParameter(
                "box exponential needs Im λ > 0".into(),
            ));
        }
        Ok(TestFunction::ExpPoly {
            coeff: Complex64::new(1.0, 0.0),
            decay: TWO_PI * lambda.im,
            freq: -lambda.re,
            power: 0,
        })
    }

    pub fn gaussian(center: Vec<f64>, width: f64) -> Result<Self> {
        if width <= 0.0 {
            return Err(Error::InvalidParameter("width must be positive".into()));
        }
        if center.is_empty() || center.len() > 2 {
            return Err(Error::InvalidParameter(
                "gaussian center must have dimension 1 or 2".into(),
            ));
        }
        Ok(TestFunction::Gaussian { center, width })
    }

    pub fn indicator(intervals: Vec<(f64, f64)>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::InvalidParameter("empty interval union".into()));
        }
        let mut sorted = intervals.clone();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        for (a, b) in &sorted {
            if a >= b {
                return Err(Error::InvalidParameter("empty interval in union".into()));
            }
        }
        if sorted.windows(2).any(|w| w[0].1 > w[1].0) {
            return Err(Error::InvalidParameter("intervals must be disjoint".into()));
        }
        Ok(TestFunction::Indicator { intervals: sorted })
    }

    /// Indicator of the 1-d annulus `{ R < |x| < R+1 }`.
    pub fn annulus(r: f64) -> Result<Self> {
        if r <= 0.0 {
            return Err(Error::InvalidParameter("annulus radius must be positive".into()));
        }
        Self::indicator(vec![(-r - 1.0, -r), (r, r + 1.0)])
    }

    pub fn coeff_series(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("empty coefficient list".into()));
        }
        Ok(TestFunction::CoeffSeries { coeffs })
    }

    /// Band-limited function with `n_modes` modes drawn log-uniformly inside
    /// the dyadic band `[2^band_lo, 2^band_hi]`, with margin so the Gaussian
    /// envelope keeps spectral leakage outside the band negligible.
    pub fn band_limited(seed: u64, band_lo: i32, band_hi: i32, n_modes: usize) -> Result<Self> {
        if band_hi <= band_lo {
            return Err(Error::InvalidParameter("band_hi must exceed band_lo".into()));
        }
        if n_modes == 0 {
            return Err(Error::InvalidParameter("need at least one mode".into()));
        }
        let lo = 2f64.powi(band_lo);
        let hi = 2f64.powi(band_hi);
        let envelope_width = 32.0 / lo;
        let mut rng = CounterRng::stream(seed, 0x62616e64);
        let f_lo = 1.25 * lo;
        let f_hi = 0.85 * hi;
        let modes = (0..n_modes)
            .map(|_| {
                let mag = f_lo * (f_hi / f_lo).powf(rng.uniform());
                let sign = if rng.below(2) == 0 { 1.0 } else { -1.0 };
                Mode {
                    freq: sign * mag,
                    coeff: rng.complex_unit(),
                }
            })
            .collect();
        Ok(TestFunction::BandLimited {
            seed,
            band_lo,
            band_hi,
            envelope_width,
            modes,
        })
    }

    /// Band-limited function whose modes sit on the flat plateaus of the
    /// dyadic analysis masks (the central part `[2.1, 2.9] * 2^k` of each
    /// octave), one octave `k` per mode, drawn from `octaves`.
    pub fn band_limited_plateau(seed: u64, octaves: &[i32], n_modes: usize) -> Result<Self> {
        if octaves.is_empty() || n_modes == 0 {
            return Err(Error::InvalidParameter(
                "plateau family needs octaves and at least one mode".into(),
            ));
        }
        let band_lo = *octaves.iter().min().unwrap();
        let band_hi = octaves.iter().max().unwrap() + 2;
        let lo = 2f64.powi(band_lo);
        let envelope_width = 32.0 / lo;
        let mut rng = CounterRng::stream(seed, 0x706c6174);
        let modes = (0..n_modes)
            .map(|_| {
                let k = octaves[rng.below(octaves.len() as u64) as usize];
                let mag = 2f64.powi(k) * rng.uniform_in(2.1, 2.9);
                let sign = if rng.below(2) == 0 { 1.0 } else { -1.0 };
                Mode {
                    freq: sign * mag,
                    coeff: rng.complex_unit(),
                }
            })
            .collect();
        Ok(TestFunction::BandLimited {
            seed,
            band_lo,
            band_hi,
            envelope_width,
            modes,
        })
    }

    pub fn domain(&self) -> Domain {
        match self {
            TestFunction::StepDyadic { .. }
            | TestFunction::ExpPoly { .. }
            | TestFunction::CoeffSeries { .. } => Domain::HalfLine,
            TestFunction::Gaussian { center, .. } => Domain::Line(center.len()),
            TestFunction::BandLimited { .. } => Domain::Line(1),
            TestFunction::Indicator { intervals } => {
                if intervals.iter().all(|&(a, _)| a >= 0.0) {
                    Domain::HalfLine
                } else {
                    Domain::Line(1)
                }
            }
        }
    }

    /// Characteristic length scale, used to size grids and height sequences.
    pub fn scale(&self) -> f64 {
        match self {
            TestFunction::StepDyadic { breakpoints, .. } => {
                breakpoints.last().copied().unwrap_or(1.0).max(1e-6)
            }
            TestFunction::ExpPoly { decay, power, .. } => (1.0 + *power as f64) / decay,
            TestFunction::Gaussian { width, .. } => *width,
            TestFunction::BandLimited { envelope_width, .. } => *envelope_width,
            TestFunction::Indicator { intervals } => intervals
                .iter()
                .flat_map(|&(a, b)| [a.abs(), b.abs()])
                .fold(1e-6, f64::max),
            TestFunction::CoeffSeries { coeffs } => coeffs.len() as f64,
        }
    }

    /// Interval outside which the function is zero or negligible.
    pub fn support_hint(&self) -> (f64, f64) {
        match self {
            TestFunction::StepDyadic { breakpoints, .. } => {
                (breakpoints[0], *breakpoints.last().unwrap())
            }
            TestFunction::ExpPoly { decay, power, .. } => {
                (0.0, (36.0 + 6.0 * *power as f64) / decay)
            }
            TestFunction::Gaussian { center, width } => {
                let c = center[0];
                (c - 7.0 * width, c + 7.0 * width)
            }
            TestFunction::BandLimited { envelope_width, .. } => {
                (-7.0 * envelope_width, 7.0 * envelope_width)
            }
            TestFunction::Indicator { intervals } => {
                (intervals[0].0, intervals.last().unwrap().1)
            }
            TestFunction::CoeffSeries { coeffs } => (0.0, coeffs.len() as f64),
        }
    }

    /// Rescales the argument: returns `t ↦ f(t / lambda)`.
    pub fn dilate(&self, lambda: f64) -> Result<TestFunction> {
        if lambda <= 0.0 {
            return Err(Error::InvalidParameter("dilation must be positive".into()));
        }
        Ok(match self {
            TestFunction::StepDyadic {
                breakpoints,
                values,
            } => TestFunction::StepDyadic {
                breakpoints: breakpoints.iter().map(|b| b * lambda).collect(),
                values: values.clone(),
            },
            TestFunction::ExpPoly {
                coeff,
                decay,
                freq,
                power,
            } => TestFunction::ExpPoly {
                coeff: coeff * lambda.powi(-(*power as i32)),
                decay: decay / lambda,
                freq: freq / lambda,
                power: *power,
            },
            TestFunction::Gaussian { center, width } => TestFunction::Gaussian {
                center: center.iter().map(|c| c * lambda).collect(),
                width: width * lambda,
            },
            TestFunction::BandLimited {
                seed,
                band_lo,
                band_hi,
                envelope_width,
                modes,
            } => TestFunction::BandLimited {
                seed: *seed,
                band_lo: *band_lo,
                band_hi: *band_hi,
                envelope_width: envelope_width * lambda,
                modes: modes
                    .iter()
                    .map(|m| Mode {
                        freq: m.freq / lambda,
                        coeff: m.coeff,
                    })
                    .collect(),
            },
            TestFunction::Indicator { intervals } => TestFunction::Indicator {
                intervals: intervals.iter().map(|&(a, b)| (a * lambda, b * lambda)).collect(),
            },
            TestFunction::CoeffSeries { .. } => self.as_step()?.dilate(lambda)?,
        })
    }

    /// Step-function image, where one exists. Coefficient series map to
    /// `Σ a_k 1_{(k,k+1)}`; half-line indicators fill gaps with zero values.
    pub fn as_step(&self) -> Result<TestFunction> {
        match self {
            TestFunction::StepDyadic { .. } => Ok(self.clone()),
            TestFunction::CoeffSeries { coeffs } => {
                let breakpoints = (0..=coeffs.len()).map(|k| k as f64).collect();
                Ok(TestFunction::StepDyadic {
                    breakpoints,
                    values: coeffs.clone(),
                })
            }
            TestFunction::Indicator { intervals } => {
                if intervals.iter().any(|&(a, _)| a < 0.0) {
                    return Err(Error::DomainMismatch(
                        "indicator extends to negative axis; no half-line step image".into(),
                    ));
                }
                let mut breakpoints = vec![intervals[0].0];
                let mut values = Vec::new();
                for (i, &(a, b)) in intervals.iter().enumerate() {
                    if i > 0 {
                        let prev = breakpoints.last().copied().unwrap();
                        if a > prev {
                            values.push(Complex64::new(0.0, 0.0));
                            breakpoints.push(a);
                        }
                    }
                    values.push(Complex64::new(1.0, 0.0));
                    breakpoints.push(b);
                }
                Ok(TestFunction::StepDyadic {
                    breakpoints,
                    values,
                })
            }
            _ => Err(Error::UnsupportedKind {
                op: "as_step",
                kind: self.kind_name().into(),
            }),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            TestFunction::StepDyadic { .. } => "step_dyadic",
            TestFunction::ExpPoly { .. } => "exp_poly",
            TestFunction::Gaussian { .. } => "gaussian",
            TestFunction::BandLimited { .. } => "band_limited",
            TestFunction::Indicator { .. } => "indicator",
            TestFunction::CoeffSeries { .. } => "coeff_series",
        }
    }

    /// Pointwise evaluation on the line (functions on the half-line are
    /// extended by zero). At a jump the mean of the one-sided limits is
    /// returned, which keeps trapezoid sums and discrete convolutions
    /// second-order accurate.
    pub fn eval1(&self, t: f64) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        match self {
            TestFunction::StepDyadic {
                breakpoints,
                values,
            } => {
                let n = values.len();
                if t < breakpoints[0] || t > breakpoints[n] {
                    return zero;
                }
                // Jumps take the mean of the one-sided limits.
                for (j, &b) in breakpoints.iter().enumerate() {
                    if t == b {
                        let left = if j == 0 { zero } else { values[j - 1] };
                        let right = if j == n { zero } else { values[j] };
                        return 0.5 * (left + right);
                    }
                }
                match breakpoints.binary_search_by(|b| b.total_cmp(&t)) {
                    Ok(_) => unreachable!("exact hits handled above"),
                    Err(idx) => values[idx - 1],
                }
            }
            TestFunction::ExpPoly {
                coeff,
                decay,
                freq,
                power,
            } => {
                if t < 0.0 {
                    return zero;
                }
                let amp = t.powi(*power as i32) * (-decay * t).exp();
                coeff * amp * Complex64::from_polar(1.0, TWO_PI * freq * t)
            }
            TestFunction::Gaussian { center, width } => {
                debug_assert_eq!(center.len(), 1, "use eval2 for planar gaussians");
                let u = (t - center[0]) / width;
                Complex64::new((-std::f64::consts::PI * u * u).exp(), 0.0)
            }
            TestFunction::BandLimited {
                envelope_width,
                modes,
                ..
            } => {
                let u = t / envelope_width;
                let env = (-std::f64::consts::PI * u * u).exp();
                let mut acc = zero;
                for m in modes {
                    acc += m.coeff * Complex64::from_polar(1.0, TWO_PI * m.freq * t);
                }
                env * acc
            }
            TestFunction::Indicator { intervals } => {
                for &(a, b) in intervals {
                    if t == a || t == b {
                        return Complex64::new(0.5, 0.0);
                    }
                    if t > a && t < b {
                        return Complex64::new(1.0, 0.0);
                    }
                }
                zero
            }
            TestFunction::CoeffSeries { .. } => {
                self.as_step().expect("series always has a step image").eval1(t)
            }
        }
    }

    /// Planar evaluation (`d = 2` Gaussians only).
    pub fn eval2(&self, x: f64, y: f64) -> Result<Complex64> {
        match self {
            TestFunction::Gaussian { center, width } if center.len() == 2 => {
                let u = (x - center[0]) / width;
                let v = (y - center[1]) / width;
                Ok(Complex64::new(
                    (-std::f64::consts::PI * (u * u + v * v)).exp(),
                    0.0,
                ))
            }
            _ => Err(Error::UnsupportedKind {
                op: "eval2",
                kind: self.kind_name().into(),
            }),
        }
    }

    /// Exact `L^1` norm, where a closed form exists.
    pub fn l1_norm_exact(&self) -> Option<f64> {
        match self {
            TestFunction::StepDyadic {
                breakpoints,
                values,
            } => Some(
                values
                    .iter()
                    .zip(breakpoints.windows(2))
                    .map(|(v, w)| v.norm() * (w[1] - w[0]))
                    .sum(),
            ),
            TestFunction::ExpPoly {
                coeff,
                decay,
                power,
                ..
            } => Some(coeff.norm() * gamma(*power as f64 + 1.0) / decay.powi(*power as i32 + 1)),
            TestFunction::Gaussian { center, width } => Some(width.powi(center.len() as i32)),
            TestFunction::Indicator { intervals } => {
                Some(intervals.iter().map(|&(a, b)| b - a).sum())
            }
            TestFunction::CoeffSeries { .. } => self.as_step().ok()?.l1_norm_exact(),
            TestFunction::BandLimited { .. } => None,
        }
    }

    /// Upper bound for the `L^1` norm, finite for every kind.
    pub fn l1_upper_bound(&self) -> f64 {
        match self {
            TestFunction::BandLimited {
                envelope_width,
                modes,
                ..
            } => envelope_width * modes.iter().map(|m| m.coeff.norm()).sum::<f64>(),
            _ => self.l1_norm_exact().expect("all other kinds have exact L1"),
        }
    }

    /// Exact weighted norm `(∫ |f|^p t^α dt)^{1/p}` on the natural domain,
    /// where a closed form exists. Weighted (`α != 0`) norms are half-line
    /// only; on `R^d` the weight must be trivial.
    pub fn lp_weighted_norm_exact(&self, p: f64, alpha: f64) -> Option<f64> {
        if alpha <= -1.0 {
            return None;
        }
        match self {
            TestFunction::StepDyadic {
                breakpoints,
                values,
            } => {
                let mut acc = CompensatedSum::new();
                for (v, w) in values.iter().zip(breakpoints.windows(2)) {
                    acc.add(v.norm().powf(p) * power_cell(w[0], w[1], alpha));
                }
                Some(acc.value().powf(1.0 / p))
            }
            TestFunction::ExpPoly {
                coeff,
                decay,
                power,
                ..
            } => {
                let m = p * *power as f64 + alpha;
                let rate = p * decay;
                Some((coeff.norm().powf(p) * gamma(m + 1.0) / rate.powf(m + 1.0)).powf(1.0 / p))
            }
            TestFunction::Gaussian { center, width } => {
                if alpha != 0.0 {
                    return None;
                }
                let d = center.len() as f64;
                Some((width / p.sqrt()).powf(d / p))
            }
            TestFunction::Indicator { intervals } => {
                if alpha != 0.0 && intervals.iter().any(|&(a, _)| a < 0.0) {
                    return None;
                }
                let total: f64 = intervals
                    .iter()
                    .map(|&(a, b)| {
                        if alpha == 0.0 {
                            b - a
                        } else {
                            power_cell(a, b, alpha)
                        }
                    })
                    .sum();
                Some(total.powf(1.0 / p))
            }
            TestFunction::CoeffSeries { .. } => {
                self.as_step().ok()?.lp_weighted_norm_exact(p, alpha)
            }
            TestFunction::BandLimited { envelope_width, modes, .. } => {
                if alpha != 0.0 || p != 2.0 {
                    return None;
                }
                // |f|^2 integrates in closed form against the Gaussian envelope.
                let s = envelope_width;
                let mut acc = CompensatedSum::new();
                for a in modes {
                    for b in modes {
                        let d = a.freq - b.freq;
                        let g = (a.coeff * b.coeff.conj()).re;
                        acc.add(
                            g * (s / std::f64::consts::SQRT_2)
                                * (-std::f64::consts::PI * s * s * d * d / 2.0).exp(),
                        );
                    }
                }
                Some(acc.value().max(0.0).sqrt())
            }
        }
    }

    /// `∫_0^∞ |f(t)|^2 e^{-4πyt} dt` in closed form (half-line kinds only).
    /// This is the horizontal-line `L^2` energy of the transform, by the
    /// Plancherel theorem; it serves as an independent oracle in tests.
    pub fn half_line_l2_decayed_sq(&self, y: f64) -> Option<f64> {
        let r = 4.0 * std::f64::consts::PI * y;
        match self {
            TestFunction::StepDyadic {
                breakpoints,
                values,
            } => {
                let mut acc = CompensatedSum::new();
                for (v, w) in values.iter().zip(breakpoints.windows(2)) {
                    let cell = if r == 0.0 {
                        w[1] - w[0]
                    } else {
                        ((-r * w[0]).exp() - (-r * w[1]).exp()) / r
                    };
                    acc.add(v.norm_sqr() * cell);
                }
                Some(acc.value())
            }
            TestFunction::ExpPoly {
                coeff,
                decay,
                power,
                ..
            } => {
                let m = 2.0 * *power as f64;
                Some(coeff.norm_sqr() * gamma(m + 1.0) / (2.0 * decay + r).powf(m + 1.0))
            }
            TestFunction::Indicator { .. } | TestFunction::CoeffSeries { .. } => {
                self.as_step().ok()?.half_line_l2_decayed_sq(y)
            }
            _ => None,
        }
    }

    /// Segments `(a, b, value)` of the half-line step image, if any.
    pub(crate) fn half_line_segments(&self) -> Option<Vec<(f64, f64, Complex64)>> {
        match self.as_step() {
            Ok(TestFunction::StepDyadic {
                breakpoints,
                values,
            }) => Some(
                values
                    .iter()
                    .zip(breakpoints.windows(2))
                    .map(|(v, w)| (w[0], w[1], *v))
                    .collect(),
            ),
            _ => None,
        }
    }
}

/// `∫_a^b t^α dt` for `α > -1`, `0 <= a < b`.
fn power_cell(a: f64, b: f64, alpha: f64) -> f64 {
    if alpha == 0.0 {
        b - a
    } else {
        (b.powf(alpha + 1.0) - a.powf(alpha + 1.0)) / (alpha + 1.0)
    }
}

/// Uniformly sampled complex function of one variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Sampled1 {
    pub x0: f64,
    pub dx: f64,
    pub values: Vec<Complex64>,
}

impl Sampled1 {
    pub fn node(&self, j: usize) -> f64 {
        self.x0 + j as f64 * self.dx
    }

    /// Linear interpolation between samples; zero outside the range.
    pub fn value_at(&self, x: f64) -> Complex64 {
        let u = (x - self.x0) / self.dx;
        if u < 0.0 || u > (self.values.len() - 1) as f64 {
            return Complex64::new(0.0, 0.0);
        }
        let j = u.floor() as usize;
        if j + 1 >= self.values.len() {
            return self.values[j];
        }
        let frac = u - j as f64;
        self.values[j] * (1.0 - frac) + self.values[j + 1] * frac
    }
}

/// Pointwise evaluation of `f` on a one-dimensional grid.
pub fn sample(f: &TestFunction, grid: &GridSpec) -> Result<Vec<Complex64>> {
    let axis = grid.axis1()?;
    match (f.domain(), grid) {
        (Domain::HalfLine, GridSpec::HalfLine { .. })
        | (Domain::HalfLine, GridSpec::RealLine { .. })
        | (Domain::Line(1), GridSpec::RealLine { .. }) => {
            Ok(axis.nodes.iter().map(|&t| f.eval1(t)).collect())
        }
        (Domain::Line(d), _) => Err(Error::DomainMismatch(format!(
            "{}-dimensional function on a one-dimensional grid",
            d
        ))),
        _ => Err(Error::DomainMismatch(format!(
            "cannot sample {} on this grid",
            f.kind_name()
        ))),
    }
}

/// Weighted Lebesgue norm `‖f‖_{L^p(t^α dt)}`. Closed forms are exact and
/// report zero error; otherwise the grid is used with a Richardson error
/// estimate. Weighted norms (`α != 0`) require the half-line.
pub fn lp_norm(f: &TestFunction, p: f64, alpha: f64, grid: &GridSpec) -> Result<NormValue> {
    check_exponent("p", p)?;
    if alpha <= -1.0 {
        return Err(Error::DivergentNorm(format!(
            "weight exponent {alpha} <= -1 makes the weight non-integrable"
        )));
    }
    if alpha != 0.0 && f.domain() != Domain::HalfLine {
        return Err(Error::DomainMismatch(
            "weighted norms are defined on the half-line".into(),
        ));
    }
    let space = if alpha == 0.0 {
        SpaceDescriptor::Lp { p }
    } else {
        SpaceDescriptor::LpWeighted { p, alpha }
    };
    if let Some(v) = f.lp_weighted_norm_exact(p, alpha) {
        return Ok(NormValue::exact(v, space));
    }
    let (value, err) = lp_norm_quadrature_raw(f, p, alpha, grid)?;
    Ok(NormValue::estimated(value, err, space))
}

/// Quadrature evaluation of the weighted norm, bypassing closed forms.
/// Exposed so closed forms can be cross-checked against it.
pub fn lp_norm_quadrature(f: &TestFunction, p: f64, alpha: f64, grid: &GridSpec) -> Result<f64> {
    Ok(lp_norm_quadrature_raw(f, p, alpha, grid)?.0)
}

fn lp_norm_quadrature_raw(
    f: &TestFunction,
    p: f64,
    alpha: f64,
    grid: &GridSpec,
) -> Result<(f64, f64)> {
    if let Some(segments) = f.half_line_segments() {
        // Piecewise-constant integrand: integrate each cell of |v|^p t^α
        // exactly; only the weight needs the closed cell integral.
        let mut acc = CompensatedSum::new();
        for (a, b, v) in &segments {
            acc.add(v.norm().powf(p) * power_cell(*a, *b, alpha));
        }
        return Ok((acc.value().powf(1.0 / p), 0.0));
    }
    let axis = grid.axis1()?;
    let integral = |stride: usize| -> f64 {
        let mut acc = CompensatedSum::new();
        let mut i = 0;
        while i < axis.nodes.len() {
            let t = axis.nodes[i];
            let w: f64 = axis.weights[i..(i + stride).min(axis.weights.len())].iter().sum();
            let weight = if alpha == 0.0 {
                1.0
            } else if t > 0.0 {
                t.powf(alpha)
            } else {
                0.0
            };
            acc.add(f.eval1(t).norm().powf(p) * weight * w);
            i += stride;
        }
        acc.value()
    };
    let fine = integral(1);
    let coarse = integral(2);
    if !fine.is_finite() {
        return Err(Error::DivergentNorm(format!(
            "quadrature of |f|^{p} t^{alpha} did not converge"
        )));
    }
    let value = fine.powf(1.0 / p);
    // Trapezoid is second order; Richardson puts the error near |I_h - I_2h|/3.
    let err_integral = (fine - coarse).abs() / 3.0;
    let err = if fine > 0.0 {
        value * err_integral / (p * fine)
    } else {
        0.0
    };
    Ok((value, err))
}

/// Discrete linear convolution of two functions sampled on the same uniform
/// grid, scaled by the grid spacing so it approximates `(f ∗ g)(x)`.
pub fn convolve(f: &TestFunction, g: &TestFunction, grid: &GridSpec) -> Result<Sampled1> {
    let axis = grid.axis1()?;
    let (x0, x1) = (axis.nodes[0], *axis.nodes.last().unwrap());
    for h in [f, g] {
        let (lo, hi) = h.support_hint();
        if lo < x0 - 1e-12 || hi > x1 + 1e-12 {
            return Err(Error::GridMismatch(format!(
                "support [{lo}, {hi}] of {} exceeds grid [{x0}, {x1}]; convolution would alias",
                h.kind_name()
            )));
        }
    }
    let dx = axis.nodes[1] - axis.nodes[0];
    if axis
        .nodes
        .windows(2)
        .any(|w| ((w[1] - w[0]) - dx).abs() > 1e-9 * dx)
    {
        return Err(Error::GridMismatch(
            "convolution requires a uniform grid".into(),
        ));
    }
    let fs: Vec<Complex64> = axis.nodes.iter().map(|&t| f.eval1(t)).collect();
    let gs: Vec<Complex64> = axis.nodes.iter().map(|&t| g.eval1(t)).collect();
    let vals = crate::fourier::linear_convolution(&fs, &gs);
    Ok(Sampled1 {
        x0: 2.0 * x0,
        dx,
        values: vals.into_iter().map(|v| v * dx).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn unit_grid(nodes: usize) -> GridSpec {
        GridSpec::HalfLine {
            t_max: 40.0,
            nodes,
            spacing: Spacing::Uniform,
            rule: QuadRule::Trapezoid,
        }
    }

    #[test]
    fn unit_step_l4_norm_is_one() {
        let f = TestFunction::unit_step();
        let nv = lp_norm(&f, 4.0, 0.0, &unit_grid(64)).unwrap();
        assert_eq!(nv.value, 1.0);
        assert_eq!(nv.abs_error_estimate, 0.0);
    }

    #[test]
    fn exp_poly_weighted_norm_matches_gamma_integral() {
        // Oracle: fine trapezoid quadrature of ∫_0^∞ e^{-p a t} t^α dt.
        let interval = 2.0; // |I|
        let a = std::f64::consts::PI * interval;
        let f = TestFunction::exp_poly(a, 0.0, 0).unwrap();
        for &(p, alpha) in &[(2.0, 0.0), (4.0, 0.5), (3.0, 1.0), (2.5, -0.5)] {
            let closed = (gamma(alpha + 1.0) / (p * a).powf(alpha + 1.0)).powf(1.0 / p);
            let nv = lp_norm(&f, p, alpha, &unit_grid(64)).unwrap();
            assert_relative_eq!(nv.value, closed, max_relative = 1e-14);
            let grid = GridSpec::HalfLine {
                t_max: 40.0 / a,
                nodes: 1 << 14,
                spacing: Spacing::Uniform,
                rule: QuadRule::Trapezoid,
            };
            let quad = lp_norm_quadrature(&f, p, alpha, &grid).unwrap();
            assert_relative_eq!(quad, closed, max_relative = 2e-6);
        }
    }

    #[test]
    fn gaussian_l2_norm_on_line() {
        let f = TestFunction::gaussian(vec![0.0], 1.0).unwrap();
        let nv = lp_norm(
            &f,
            2.0,
            0.0,
            &GridSpec::RealLine {
                x_max: 8.0,
                nodes: 1 << 10,
            },
        )
        .unwrap();
        assert_relative_eq!(nv.value, 2f64.powf(-0.25), max_relative = 1e-14);
    }

    #[test]
    fn closed_forms_match_quadrature_at_high_resolution() {
        let dictionary: Vec<TestFunction> = vec![
            TestFunction::unit_step(),
            TestFunction::step(
                vec![0.5, 1.0, 2.5, 4.0],
                vec![
                    Complex64::new(1.0, -0.5),
                    Complex64::new(-0.25, 0.0),
                    Complex64::new(0.0, 2.0),
                ],
            )
            .unwrap(),
            TestFunction::exp_poly(std::f64::consts::PI, 1.5, 0).unwrap(),
            TestFunction::exp_poly(2.0, -0.5, 2).unwrap(),
        ];
        for f in &dictionary {
            for &(p, alpha) in &[(2.0, 0.0), (4.0, 1.0)] {
                let closed = f.lp_weighted_norm_exact(p, alpha).unwrap();
                let t_max = f.support_hint().1.max(1.0);
                let grid = GridSpec::HalfLine {
                    t_max,
                    nodes: 1 << 14,
                    spacing: Spacing::Uniform,
                    rule: QuadRule::Trapezoid,
                };
                let quad = lp_norm_quadrature(f, p, alpha, &grid).unwrap();
                assert_relative_eq!(quad, closed, max_relative = 1e-6);
            }
        }
    }

    #[test]
    fn quadrature_converges_monotonically_for_smooth_members() {
        let f = TestFunction::exp_poly(1.0, 0.0, 1).unwrap();
        let closed = f.lp_weighted_norm_exact(2.0, 0.0).unwrap();
        let mut prev_gap = f64::INFINITY;
        for k in [8u32, 9, 10, 11, 12] {
            let grid = GridSpec::HalfLine {
                t_max: 42.0,
                nodes: 1 << k,
                spacing: Spacing::Uniform,
                rule: QuadRule::Trapezoid,
            };
            let v = lp_norm_quadrature(&f, 2.0, 0.0, &grid).unwrap();
            let gap = (v - closed).abs();
            assert!(gap <= prev_gap * 1.0001, "gap {gap} grew past {prev_gap}");
            prev_gap = gap;
        }
    }

    #[test]
    fn dilation_scales_lp_norms_exactly() {
        let funcs = vec![
            TestFunction::unit_step(),
            TestFunction::exp_poly(2.0, 1.0, 1).unwrap(),
        ];
        for f in funcs {
            let base = f.lp_weighted_norm_exact(3.0, 0.0).unwrap();
            for &lambda in &[0.25, 4.0] {
                let g = f.dilate(lambda).unwrap();
                let scaled = g.lp_weighted_norm_exact(3.0, 0.0).unwrap();
                assert_relative_eq!(
                    scaled,
                    lambda.powf(1.0 / 3.0) * base,
                    max_relative = 1e-13
                );
            }
        }
    }

    #[test]
    fn sample_unit_step_at_spec_nodes() {
        let f = TestFunction::unit_step();
        assert_eq!(f.eval1(0.25), Complex64::new(1.0, 0.0));
        assert_eq!(f.eval1(0.75), Complex64::new(1.0, 0.0));
        assert_eq!(f.eval1(1.25), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn gaussian_peak_value() {
        let f = TestFunction::gaussian(vec![0.0], 1.0).unwrap();
        assert_eq!(f.eval1(0.0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn band_limited_sampling_is_deterministic() {
        let f = TestFunction::band_limited(7, 0, 3, 6).unwrap();
        let g = TestFunction::band_limited(7, 0, 3, 6).unwrap();
        let grid = GridSpec::RealLine {
            x_max: 64.0,
            nodes: 1 << 10,
        };
        assert_eq!(sample(&f, &grid).unwrap(), sample(&g, &grid).unwrap());
    }

    #[test]
    fn band_limited_l2_closed_form_matches_quadrature() {
        let f = TestFunction::band_limited(11, 0, 3, 5).unwrap();
        let closed = f.lp_weighted_norm_exact(2.0, 0.0).unwrap();
        let grid = GridSpec::RealLine {
            x_max: 8.0 * f.scale(),
            nodes: 1 << 16,
        };
        let quad = lp_norm_quadrature(&f, 2.0, 0.0, &grid).unwrap();
        assert_relative_eq!(quad, closed, max_relative = 1e-8);
    }

    #[test]
    fn tent_function_values() {
        let f = TestFunction::unit_step();
        let grid = GridSpec::HalfLine {
            t_max: 4.0,
            nodes: (1 << 12) + 1,
            spacing: Spacing::Uniform,
            rule: QuadRule::Trapezoid,
        };
        let conv = convolve(&f, &f, &grid).unwrap();
        assert_relative_eq!(conv.value_at(1.0).re, 1.0, epsilon = 1e-3);
        assert_relative_eq!(conv.value_at(0.5).re, 0.5, epsilon = 1e-3);
    }

    #[test]
    fn gaussian_convolution_closed_form() {
        let w = 1.0;
        let f = TestFunction::gaussian(vec![0.0], w).unwrap();
        let grid = GridSpec::RealLine {
            x_max: 8.0,
            nodes: 1 << 12,
        };
        let conv = convolve(&f, &f, &grid).unwrap();
        // (f ∗ f)(x) = (w/√2) exp(-π x² / (2w²))
        let mut max_err = 0f64;
        for j in 0..conv.values.len() {
            let x = conv.node(j);
            if x.abs() > 6.0 {
                continue;
            }
            let exact = (w / std::f64::consts::SQRT_2)
                * (-std::f64::consts::PI * x * x / (2.0 * w * w)).exp();
            max_err = max_err.max((conv.values[j].re - exact).abs());
        }
        assert!(max_err < 1e-6, "max convolution error {max_err}");
    }

    #[test]
    fn indicator_annulus_has_unit_cells() {
        let f = TestFunction::annulus(4.0).unwrap();
        let norm = f.lp_weighted_norm_exact(4.0, 0.0).unwrap();
        assert_relative_eq!(norm, 2f64.powf(0.25), max_relative = 1e-14);
    }

    #[test]
    fn coeff_series_step_image() {
        let f = TestFunction::coeff_series(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(-2.0, 0.0),
        ])
        .unwrap();
        let norm = f.lp_weighted_norm_exact(4.0, 0.0).unwrap();
        // (1 + 16)^{1/4}
        assert_relative_eq!(norm, 17f64.powf(0.25), max_relative = 1e-14);
    }

    #[test]
    fn rejects_bad_constructions() {
        assert!(TestFunction::step(vec![1.0, 0.5], vec![Complex64::new(1.0, 0.0)]).is_err());
        assert!(TestFunction::exp_poly(-1.0, 0.0, 0).is_err());
        assert!(TestFunction::gaussian(vec![0.0, 0.0, 0.0], 1.0).is_err());
        assert!(TestFunction::indicator(vec![(0.0, 1.0), (0.5, 2.0)]).is_err());
    }

    #[test]
    fn divergent_weight_is_reported() {
        let f = TestFunction::unit_step();
        let err = lp_norm(&f, 2.0, -1.5, &unit_grid(16)).unwrap_err();
        assert!(matches!(err, Error::DivergentNorm(_)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn convolution_is_symmetric(seed in 0u64..500) {
            let mut rng = CounterRng::stream(seed, 1);
            let mk = |rng: &mut CounterRng| {
                let n = 2 + rng.below(4) as usize;
                let mut bps = vec![rng.uniform_in(0.0, 1.0)];
                for _ in 0..n {
                    let last = *bps.last().unwrap();
                    bps.push(last + rng.uniform_in(0.1, 1.0));
                }
                let vals = (0..n).map(|_| rng.complex_unit()).collect();
                TestFunction::step(bps, vals).unwrap()
            };
            let f = mk(&mut rng);
            let g = mk(&mut rng);
            let grid = GridSpec::HalfLine {
                t_max: 8.0,
                nodes: 1 << 10,
                spacing: Spacing::Uniform,
                rule: QuadRule::Trapezoid,
            };
            let fg = convolve(&f, &g, &grid).unwrap();
            let gf = convolve(&g, &f, &grid).unwrap();
            for (a, b) in fg.values.iter().zip(gf.values.iter()) {
                prop_assert!((a - b).norm() < 1e-12);
            }
        }

        #[test]
        fn weighted_dilation_scaling(seed in 0u64..200, lam_pow in -2i32..3) {
            let lambda = 2f64.powi(lam_pow);
            let mut rng = CounterRng::stream(seed, 2);
            let a = rng.uniform_in(0.5, 4.0);
            let f = TestFunction::exp_poly(a, rng.uniform_in(-2.0, 2.0), rng.below(3) as u32).unwrap();
            let p = rng.uniform_in(1.5, 5.0);
            let alpha = rng.uniform_in(-0.5, 2.0);
            let base = f.lp_weighted_norm_exact(p, alpha).unwrap();
            let scaled = f.dilate(lambda).unwrap().lp_weighted_norm_exact(p, alpha).unwrap();
            prop_assert!((scaled / base - lambda.powf((alpha + 1.0) / p)).abs() < 1e-10);
        }
    }
}
