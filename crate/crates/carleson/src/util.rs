//! Small numeric helpers: compensated summation and the seeded
//! counter-based generator behind every random family.

use num_complex::Complex64;

/// Neumaier compensated accumulator. All norm reductions go through this so
/// results do not depend on how work is chunked.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated sum of an iterator.
pub fn csum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = CompensatedSum::new();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

/// Counter-based generator (splitmix64). Stateless: the n-th draw of a
/// stream is a pure function of (seed, n), so campaigns are bit-reproducible
/// regardless of evaluation order.
#[derive(Debug, Clone, Copy)]
pub struct CounterRng {
    seed: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        Self { seed, counter: 0 }
    }

    /// Independent substream derived from a label.
    pub fn stream(seed: u64, label: u64) -> Self {
        Self {
            seed: mix64(seed ^ mix64(label.wrapping_add(0x9e37_79b9_7f4a_7c15))),
            counter: 0,
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(self.seed.wrapping_add(self.counter.wrapping_mul(0x9e37_79b9_7f4a_7c15)))
    }

    /// Uniform in `[0, 1)`.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    #[inline]
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform integer in `[0, n)`.
    #[inline]
    pub fn below(&mut self, n: u64) -> u64 {
        // Modulo bias is irrelevant at the sizes used here.
        self.next_u64() % n
    }

    /// Complex number with both parts uniform in `[-1, 1)`.
    #[inline]
    pub fn complex_unit(&mut self) -> Complex64 {
        Complex64::new(self.uniform_in(-1.0, 1.0), self.uniform_in(-1.0, 1.0))
    }
}

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Relative difference `|a - b| / max(|a|, |b|)`, zero when both vanish.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    let m = a.abs().max(b.abs());
    if m == 0.0 {
        0.0
    } else {
        (a - b).abs() / m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_beats_naive() {
        let n = 1_000_000;
        let mut naive = 0.0f64;
        let mut comp = CompensatedSum::new();
        for _ in 0..n {
            naive += 0.1;
            comp.add(0.1);
        }
        let exact = 0.1 * n as f64;
        assert!((comp.value() - exact).abs() <= (naive - exact).abs());
        assert!((comp.value() - exact).abs() < 1e-9);
    }

    #[test]
    fn counter_rng_is_reproducible() {
        let mut a = CounterRng::new(7);
        let mut b = CounterRng::new(7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut c = CounterRng::new(8);
        assert_ne!(CounterRng::new(7).next_u64(), c.next_u64());
    }

    #[test]
    fn uniform_in_range() {
        let mut rng = CounterRng::stream(3, 11);
        for _ in 0..1000 {
            let x = rng.uniform_in(2.0, 5.0);
            assert!((2.0..5.0).contains(&x));
        }
    }
}
