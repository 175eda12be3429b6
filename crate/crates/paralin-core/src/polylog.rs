//! Polylogarithm `Li_s(z) = Σ_{n≥1} z^n/n^s` on the unit disk for
//! 0 < Re s ≤ 1, and the growth bound `|Li_s(z)| ≤ C ε^{−1/(1+σ)}` with
//! ε = 1 − |z| that controls the convergence of the `B_ε` series.

use alloc::vec::Vec;
use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::kahan::{KahanC64, KahanF64};

/// Hard cap on series length; beyond this the caller must loosen `tol`.
pub const N_MAX_TERMS: u64 = 1_000_000_000;

/// The checked constant of the growth bound (the sharper `2e^{1/e} < 3` is
/// reported but not gated on, absorbing the `ε ≪ 1` slack).
pub const BOUND_CONSTANT: f64 = 3.0;

/// Sharp constant `2 e^{1/e}` from the Hölder estimate.
pub fn sharp_constant() -> f64 {
    2.0 * (1.0f64 / core::f64::consts::E).exp()
}

/// A validated evaluation request: 0 < Re s ≤ 1, |z| < 1.
#[derive(Debug, Clone, Copy)]
pub struct PolylogQuery {
    s: Complex64,
    z: Complex64,
    tol: f64,
}

impl PolylogQuery {
    pub fn new(s: Complex64, z: Complex64, tol: f64) -> Result<Self> {
        if !(s.re > 0.0 && s.re <= 1.0) {
            return Err(Error::Domain("Re s must lie in (0, 1]"));
        }
        if !(z.norm() < 1.0) {
            return Err(Error::Domain("z must lie in the open unit disk"));
        }
        if !(tol > 0.0) {
            return Err(Error::Domain("tolerance must be positive"));
        }
        Ok(Self { s, z, tol })
    }

    pub fn s(&self) -> Complex64 {
        self.s
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn sigma(&self) -> f64 {
        self.s.re
    }

    /// ε = 1 − |z| > 0.
    pub fn eps(&self) -> f64 {
        1.0 - self.z.norm()
    }
}

/// Partial sum with the tail certificate
/// `|z|^{N+1} / ((N+1)^σ (1−|z|)) < tol`. Compensated summation in ascending
/// order; `n^s` is evaluated as `exp(s ln n)` with the principal real log.
pub fn li(q: &PolylogQuery) -> Result<Complex64> {
    let z = q.z;
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let sigma = q.sigma();
    let modulus = z.norm();
    let denom = 1.0 - modulus;

    // Real fast path: real exponent, real non-negative argument.
    if q.s.im == 0.0 && z.im == 0.0 && z.re > 0.0 {
        let x = z.re;
        let mut sum = KahanF64::default();
        let mut xpow = 1.0f64;
        for n in 1..=N_MAX_TERMS {
            xpow *= x;
            let nf = n as f64;
            sum.add(xpow / nf.powf(sigma));
            let tail = xpow * x / ((nf + 1.0).powf(sigma) * denom);
            if tail < q.tol {
                return Ok(Complex64::new(sum.value(), 0.0));
            }
        }
        return Err(Error::SlowConvergence {
            required: N_MAX_TERMS,
        });
    }

    let mut sum = KahanC64::default();
    let mut zpow = Complex64::new(1.0, 0.0);
    let mut mpow = 1.0f64;
    for n in 1..=N_MAX_TERMS {
        zpow *= z;
        mpow *= modulus;
        let nf = n as f64;
        // n^{−s} = exp(−s ln n).
        let n_pow = (-q.s * nf.ln()).exp();
        sum.add(zpow * n_pow);
        let tail = mpow * modulus / ((nf + 1.0).powf(sigma) * denom);
        if tail < q.tol {
            return Ok(sum.value());
        }
    }
    Err(Error::SlowConvergence {
        required: N_MAX_TERMS,
    })
}

/// One row of the growth-bound table at `z = 1 − ε`.
#[derive(Debug, Clone, Copy)]
pub struct BoundRow {
    pub eps: f64,
    /// |Li_s(1−ε)|.
    pub li_abs: f64,
    /// Gated bound `3 ε^{−1/(1+σ)}`.
    pub bound: f64,
    /// Reported sharp bound `2e^{1/e} ε^{−1/(1+σ)}`.
    pub sharp_bound: f64,
    /// |(z−1) Li_s(z)| = ε·|Li_s(1−ε)|.
    pub edge_abs: f64,
    /// `3 ε^{σ/(1+σ)}`.
    pub edge_bound: f64,
    pub pass: bool,
}

/// Evaluates `Li_s(1−ε)` over the ε grid and checks both displayed bounds
/// with C = 3. Each ε must be small (< 0.1).
pub fn bound_check(s: Complex64, eps_list: &[f64], tol: f64) -> Result<Vec<BoundRow>> {
    let sigma = s.re;
    let mut rows = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        if !(eps > 0.0 && eps < 0.1) {
            return Err(Error::Domain("each eps must lie in (0, 0.1)"));
        }
        let z = Complex64::new(1.0 - eps, 0.0);
        let q = PolylogQuery::new(s, z, tol)?;
        let li_abs = li(&q)?.norm();
        let scale = eps.powf(-1.0 / (1.0 + sigma));
        let bound = BOUND_CONSTANT * scale;
        let sharp_bound = sharp_constant() * scale;
        let edge_abs = eps * li_abs;
        let edge_bound = BOUND_CONSTANT * eps.powf(sigma / (1.0 + sigma));
        let pass = li_abs <= bound && edge_abs <= edge_bound;
        rows.push(BoundRow {
            eps,
            li_abs,
            bound,
            sharp_bound,
            edge_abs,
            edge_bound,
            pass,
        });
    }
    Ok(rows)
}

/// The Hölder-step majorant: returns `(max_n Σ_{k≤n} k^{−σp}, p)` with
/// `p = 1/σ + 1`; the partial sums stay below `p = 1 + 1/σ`.
pub fn holder_partial_bound(sigma: f64, n_max: u64) -> (f64, f64) {
    let p = 1.0 / sigma + 1.0;
    let exponent = sigma * p; // = 1 + σ
    let mut sum = KahanF64::default();
    let mut max = 0.0f64;
    for k in 1..=n_max {
        sum.add((k as f64).powf(-exponent));
        let v = sum.value();
        if v > max {
            max = v;
        }
    }
    (max, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn li_one_is_minus_log() {
        // Closed form Li_1(z) = −log(1−z).
        let q = PolylogQuery::new(c(1.0, 0.0), c(0.5, 0.0), 1e-14).unwrap();
        let v = li(&q).unwrap();
        assert!((v.re - 2.0f64.ln()).abs() < 1e-12, "{v}");
        assert!(v.im == 0.0);

        // And off the real axis.
        let z = c(0.3, -0.6);
        let q = PolylogQuery::new(c(1.0, 0.0), z, 1e-14).unwrap();
        let v = li(&q).unwrap();
        let expected = -(Complex64::new(1.0, 0.0) - z).ln();
        assert!((v - expected).norm() < 1e-12);
    }

    #[test]
    fn li_zero_argument() {
        let q = PolylogQuery::new(c(0.5, 2.0), c(0.0, 0.0), 1e-12).unwrap();
        assert_eq!(li(&q).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn li_half_against_brute_force() {
        // Independent oracle: 1e6-term compensated sum with explicit tail.
        let (s, z) = (c(0.5, 0.0), c(0.9, 0.0));
        let mut brute = KahanF64::default();
        let mut xpow = 1.0f64;
        for n in 1..=1_000_000u64 {
            xpow *= 0.9;
            brute.add(xpow / (n as f64).sqrt());
        }
        // Tail of the oracle itself is below 0.9^1e6/(0.1) ≈ 0: negligible.
        let q = PolylogQuery::new(s, z, 1e-13).unwrap();
        let v = li(&q).unwrap();
        assert!(
            (v.re - brute.value()).abs() < 1e-12,
            "{} vs {}",
            v.re,
            brute.value()
        );
    }

    #[test]
    fn tail_certificate_is_monotone_and_tight() {
        // Halving the tolerance (forcing larger N) moves the value by < tol.
        let z = c(0.95, 0.02);
        let s = c(0.7, 1.5);
        let v1 = li(&PolylogQuery::new(s, z, 1e-8).unwrap()).unwrap();
        let v2 = li(&PolylogQuery::new(s, z, 1e-12).unwrap()).unwrap();
        assert!((v1 - v2).norm() < 1e-8);
    }

    #[test]
    fn bound_table_passes() {
        for &sigma in &[0.25, 0.5, 1.0] {
            let rows = bound_check(c(sigma, 0.0), &[1e-2, 1e-3, 1e-4, 1e-5, 1e-6], 1e-6).unwrap();
            assert!(rows.iter().all(|r| r.pass), "sigma = {sigma}: {rows:?}");
        }
        // Imaginary part of s is irrelevant for the majorant.
        let rows = bound_check(c(0.25, 5.0), &[1e-2, 1e-3, 1e-4], 1e-6).unwrap();
        assert!(rows.iter().all(|r| r.pass));
    }

    #[test]
    fn bound_example_sigma_one() {
        let rows = bound_check(c(1.0, 0.0), &[1e-4], 1e-10).unwrap();
        let r = &rows[0];
        // |Li_1(1−ε)| = |log ε| ≈ 9.21 against 3·ε^{−1/2} = 300.
        assert!((r.li_abs - (1e-4f64).ln().abs()).abs() < 1e-6);
        assert!((r.bound - 300.0).abs() < 1e-9);
        assert!(r.pass);
    }

    #[test]
    fn bound_check_rejects_large_eps() {
        assert!(bound_check(c(0.5, 0.0), &[0.5], 1e-6).is_err());
    }

    #[test]
    fn holder_majorant_stays_below_p() {
        for &sigma in &[0.25, 0.5, 1.0] {
            let (max, p) = holder_partial_bound(sigma, 100_000);
            assert!(max <= p, "sigma {sigma}: {max} > {p}");
        }
    }

    #[test]
    fn query_validation() {
        assert!(PolylogQuery::new(c(0.0, 0.0), c(0.5, 0.0), 1e-6).is_err());
        assert!(PolylogQuery::new(c(1.5, 0.0), c(0.5, 0.0), 1e-6).is_err());
        assert!(PolylogQuery::new(c(0.5, 0.0), c(1.0, 0.0), 1e-6).is_err());
    }
}
