//! DFT wrappers with continuous-transform normalization.
//!
//! A signal sampled as `f_j = f(x_min + j dx)`, `j = 0..n`, transforms to
//! spectrum values `F_m ≈ ∫ f(x) e^{-2πi x ξ_m} dx` on the reciprocal bins
//! `ξ_m = m̃ / (n dx)` with `m̃` the signed bin index. The pair
//! (`forward`, `inverse`) is exact to rounding, and discrete Plancherel
//! `dx Σ|f|² = δξ Σ|F|²` holds by construction.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

const TWO_PI: f64 = std::f64::consts::TAU;

/// Uniform one-dimensional sampling lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice1 {
    pub n: usize,
    pub x_min: f64,
    pub dx: f64,
}

impl Lattice1 {
    /// Centered lattice `[-x_max, x_max)` with `n` nodes.
    pub fn centered(x_max: f64, n: usize) -> Self {
        Lattice1 {
            n,
            x_min: -x_max,
            dx: 2.0 * x_max / n as f64,
        }
    }

    pub fn node(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx
    }

    /// Signed frequency of bin `m`.
    pub fn freq(&self, m: usize) -> f64 {
        let signed = if m < self.n / 2 {
            m as i64
        } else {
            m as i64 - self.n as i64
        };
        signed as f64 / (self.n as f64 * self.dx)
    }

    /// Reciprocal lattice carrying the spectrum, ordered by signed bin.
    pub fn reciprocal(&self) -> Lattice1 {
        let dxi = 1.0 / (self.n as f64 * self.dx);
        Lattice1 {
            n: self.n,
            x_min: -(self.n as f64 / 2.0).floor() * dxi,
            dx: dxi,
        }
    }

    pub fn nyquist(&self) -> f64 {
        0.5 / self.dx
    }

    pub fn bin_spacing(&self) -> f64 {
        1.0 / (self.n as f64 * self.dx)
    }
}

/// Cached transform plans for one lattice size.
pub struct Dft1 {
    pub lattice: Lattice1,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl Dft1 {
    pub fn new(lattice: Lattice1) -> Self {
        let mut planner = FftPlanner::new();
        Dft1 {
            lattice,
            fwd: planner.plan_fft_forward(lattice.n),
            inv: planner.plan_fft_inverse(lattice.n),
        }
    }

    /// `F_m = dx e^{-2πi x_min ξ_m} FFT[f]_m ≈ ∫ f e^{-2πi x ξ_m} dx`,
    /// indexed by raw (wrapped) bin `m`.
    pub fn forward(&self, samples: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(samples.len(), self.lattice.n);
        let mut buf = samples.to_vec();
        self.fwd.process(&mut buf);
        for (m, v) in buf.iter_mut().enumerate() {
            let xi = self.lattice.freq(m);
            *v *= self.lattice.dx * Complex64::from_polar(1.0, -TWO_PI * self.lattice.x_min * xi);
        }
        buf
    }

    /// Inverse of [`Dft1::forward`]: recovers samples from spectrum bins.
    pub fn inverse(&self, spectrum: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(spectrum.len(), self.lattice.n);
        let mut buf: Vec<Complex64> = spectrum
            .iter()
            .enumerate()
            .map(|(m, v)| {
                let xi = self.lattice.freq(m);
                v * Complex64::from_polar(1.0, TWO_PI * self.lattice.x_min * xi)
            })
            .collect();
        self.inv.process(&mut buf);
        let scale = 1.0 / (self.lattice.n as f64 * self.lattice.dx);
        for v in buf.iter_mut() {
            *v *= scale;
        }
        buf
    }
}

/// Square two-dimensional lattice with row-column transforms.
pub struct Dft2 {
    pub lattice: Lattice1,
}

impl Dft2 {
    pub fn new(lattice: Lattice1) -> Self {
        Dft2 { lattice }
    }

    fn axis_pass(
        &self,
        data: &mut [Complex64],
        plan: &Arc<dyn Fft<f64>>,
        phase_sign: f64,
        scale: f64,
        phase_first: bool,
    ) {
        let n = self.lattice.n;
        let mut row = vec![Complex64::default(); n];
        // Rows.
        for r in 0..n {
            row.copy_from_slice(&data[r * n..(r + 1) * n]);
            if phase_first {
                for (m, v) in row.iter_mut().enumerate() {
                    let xi = self.lattice.freq(m);
                    *v *= Complex64::from_polar(1.0, -phase_sign * TWO_PI * self.lattice.x_min * xi);
                }
            }
            plan.process(&mut row);
            if !phase_first {
                for (m, v) in row.iter_mut().enumerate() {
                    let xi = self.lattice.freq(m);
                    *v *= scale
                        * Complex64::from_polar(1.0, -phase_sign * TWO_PI * self.lattice.x_min * xi);
                }
            } else {
                for v in row.iter_mut() {
                    *v *= scale;
                }
            }
            data[r * n..(r + 1) * n].copy_from_slice(&row);
        }
    }

    fn transpose(data: &mut [Complex64], n: usize) {
        for r in 0..n {
            for c in (r + 1)..n {
                data.swap(r * n + c, c * n + r);
            }
        }
    }

    /// Forward 2-d transform of row-major samples.
    pub fn forward(&self, samples: &[Complex64]) -> Vec<Complex64> {
        let n = self.lattice.n;
        assert_eq!(samples.len(), n * n);
        let mut planner = FftPlanner::new();
        let plan = planner.plan_fft_forward(n);
        let mut data = samples.to_vec();
        self.axis_pass(&mut data, &plan, 1.0, self.lattice.dx, false);
        Self::transpose(&mut data, n);
        self.axis_pass(&mut data, &plan, 1.0, self.lattice.dx, false);
        Self::transpose(&mut data, n);
        data
    }

    /// Inverse 2-d transform.
    pub fn inverse(&self, spectrum: &[Complex64]) -> Vec<Complex64> {
        let n = self.lattice.n;
        assert_eq!(spectrum.len(), n * n);
        let mut planner = FftPlanner::new();
        let plan = planner.plan_fft_inverse(n);
        let scale = 1.0 / (n as f64 * self.lattice.dx);
        let mut data = spectrum.to_vec();
        self.axis_pass(&mut data, &plan, -1.0, scale, true);
        Self::transpose(&mut data, n);
        self.axis_pass(&mut data, &plan, -1.0, scale, true);
        Self::transpose(&mut data, n);
        data
    }
}

/// Zero-padded linear convolution of equal-length sample vectors.
/// The result has length `2n - 1`; no grid scaling is applied.
pub fn linear_convolution(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    assert_eq!(a.len(), b.len());
    let n = a.len();
    let m = (2 * n - 1).next_power_of_two();
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(m);
    let inv = planner.plan_fft_inverse(m);
    let mut fa = vec![Complex64::default(); m];
    let mut fb = vec![Complex64::default(); m];
    fa[..n].copy_from_slice(a);
    fb[..n].copy_from_slice(b);
    fwd.process(&mut fa);
    fwd.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(fb.iter()) {
        *x *= y;
    }
    inv.process(&mut fa);
    let scale = 1.0 / m as f64;
    fa.truncate(2 * n - 1);
    fa.into_iter().map(|v| v * scale).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::csum;
    use approx::assert_relative_eq;

    #[test]
    fn forward_inverse_round_trip() {
        let lat = Lattice1::centered(8.0, 256);
        let dft = Dft1::new(lat);
        let samples: Vec<Complex64> = (0..lat.n)
            .map(|j| {
                let x = lat.node(j);
                Complex64::new((-x * x).exp(), 0.3 * x.sin())
            })
            .collect();
        let spec = dft.forward(&samples);
        let back = dft.inverse(&spec);
        for (a, b) in samples.iter().zip(back.iter()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn discrete_plancherel_is_exact() {
        let lat = Lattice1::centered(16.0, 1 << 12);
        let dft = Dft1::new(lat);
        let samples: Vec<Complex64> = (0..lat.n)
            .map(|j| {
                let x = lat.node(j);
                Complex64::new((x * 0.7).cos() * (-0.1 * x * x).exp(), (x * 1.3).sin())
            })
            .collect();
        let spec = dft.forward(&samples);
        let e_x = csum(samples.iter().map(|v| v.norm_sqr())) * lat.dx;
        let e_k = csum(spec.iter().map(|v| v.norm_sqr())) * lat.bin_spacing();
        assert_relative_eq!(e_x, e_k, max_relative = 1e-12);
    }

    #[test]
    fn gaussian_transforms_to_gaussian() {
        let lat = Lattice1::centered(32.0, 1 << 12);
        let dft = Dft1::new(lat);
        let samples: Vec<Complex64> = (0..lat.n)
            .map(|j| {
                let x = lat.node(j);
                Complex64::new((-std::f64::consts::PI * x * x).exp(), 0.0)
            })
            .collect();
        let spec = dft.forward(&samples);
        for m in 0..lat.n {
            let xi = lat.freq(m);
            if xi.abs() < 4.0 {
                let exact = (-std::f64::consts::PI * xi * xi).exp();
                assert!((spec[m].re - exact).abs() < 1e-12, "bin {m}");
                assert!(spec[m].im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn double_transform_is_reflection() {
        let lat = Lattice1::centered(8.0, 128);
        let dft = Dft1::new(lat);
        let samples: Vec<Complex64> = (0..lat.n)
            .map(|j| {
                let x = lat.node(j);
                Complex64::new((-x * x).exp() * (1.0 + 0.5 * x), 0.0)
            })
            .collect();
        let spec = dft.forward(&samples);
        let rec = dft.reciprocal_dft();
        let twice = rec.forward(&spec);
        // ℱ² f (u) = f(-u): compare at mirrored nodes.
        for j in 1..lat.n {
            let mirrored = lat.n - j;
            assert!(
                (twice[j] - samples[mirrored]).norm() < 1e-10,
                "node {j}: {} vs {}",
                twice[j],
                samples[mirrored]
            );
        }
    }

    #[test]
    fn convolution_matches_direct_sum() {
        let a: Vec<Complex64> = (0..8).map(|j| Complex64::new(j as f64, 0.0)).collect();
        let b: Vec<Complex64> = (0..8).map(|j| Complex64::new(1.0, -(j as f64))).collect();
        let fast = linear_convolution(&a, &b);
        for k in 0..15 {
            let mut direct = Complex64::default();
            for i in 0..8 {
                if k >= i && k - i < 8 {
                    direct += a[i] * b[k - i];
                }
            }
            assert!((fast[k] - direct).norm() < 1e-9);
        }
    }

    #[test]
    fn dft2_round_trip_and_plancherel() {
        let lat = Lattice1::centered(4.0, 64);
        let dft = Dft2::new(lat);
        let samples: Vec<Complex64> = (0..lat.n * lat.n)
            .map(|idx| {
                let (r, c) = (idx / lat.n, idx % lat.n);
                let (x, y) = (lat.node(c), lat.node(r));
                Complex64::new((-0.3 * (x * x + y * y)).exp(), 0.1 * (x - y))
            })
            .collect();
        let spec = dft.forward(&samples);
        let back = dft.inverse(&spec);
        for (a, b) in samples.iter().zip(back.iter()) {
            assert!((a - b).norm() < 1e-10);
        }
        let e_x = csum(samples.iter().map(|v| v.norm_sqr())) * lat.dx * lat.dx;
        let d_xi = lat.bin_spacing();
        let e_k = csum(spec.iter().map(|v| v.norm_sqr())) * d_xi * d_xi;
        assert_relative_eq!(e_x, e_k, max_relative = 1e-12);
    }
}

impl Dft1 {
    /// Plans for the reciprocal lattice (used to transform spectra back to
    /// the original side as functions in their own right).
    pub fn reciprocal_dft(&self) -> Dft1 {
        Dft1::new(self.lattice.reciprocal())
    }
}
