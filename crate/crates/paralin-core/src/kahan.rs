//! Compensated (Neumaier) accumulators for real and complex sums.

use num_complex::Complex64;

/// Neumaier-compensated running sum of `f64` terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanF64 {
    sum: f64,
    comp: f64,
}

impl KahanF64 {
    pub fn new(init: f64) -> Self {
        Self {
            sum: init,
            comp: 0.0,
        }
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Componentwise compensated sum of complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanC64 {
    re: KahanF64,
    im: KahanF64,
}

impl KahanC64 {
    pub fn new(init: Complex64) -> Self {
        Self {
            re: KahanF64::new(init.re),
            im: KahanF64::new(init.im),
        }
    }

    pub fn add(&mut self, x: Complex64) {
        self.re.add(x.re);
        self.im.add(x.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensates_harmonic_tail() {
        // Sum 1e8 + many tiny terms that a naive sum would drop.
        let mut k = KahanF64::new(1e8);
        for _ in 0..1_000_000 {
            k.add(1e-9);
        }
        let exact = 1e8 + 1e-3;
        assert!((k.value() - exact).abs() < 1e-9, "got {}", k.value());
    }

    #[test]
    fn complex_accumulator_matches_components() {
        let mut k = KahanC64::new(Complex64::new(1.0, -1.0));
        for n in 1..100 {
            k.add(Complex64::new(1.0 / n as f64, -2.0 / n as f64));
        }
        let v = k.value();
        let h: f64 = (1..100).map(|n| 1.0 / n as f64).sum();
        assert!((v.re - (1.0 + h)).abs() < 1e-12);
        assert!((v.im - (-1.0 - 2.0 * h)).abs() < 1e-12);
    }
}
