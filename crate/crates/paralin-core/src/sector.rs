//! Invariant domain geometry: the height function `N_ε`, the domains
//! `V_ε(R)`, and the sector `Π(R)` that sits inside all of them.

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Base radius and radial-access angle describing `V_ε(R)`, `Π(R)` and the
/// base-point sector geometry. δ = cos(α)/2 is the per-step height gain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorDomain {
    r: f64,
    alpha: f64,
}

impl SectorDomain {
    pub fn new(r: f64, alpha: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain("sector radius must be positive"));
        }
        if !(0.0..core::f64::consts::FRAC_PI_2).contains(&alpha) {
            return Err(Error::Domain("alpha must lie in [0, pi/2)"));
        }
        Ok(Self { r, alpha })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn delta(&self) -> f64 {
        self.alpha.cos() / 2.0
    }

    /// The height function: `N_ε(z) = |z − b_ε| − |b_ε|` with
    /// `b_ε = 1/(1−τ)` when τ ≠ 1, and the α-sector support function
    /// `N_0(z) = sup { Re(e^{iθ}z) : |θ| < α }` at τ = 1.
    pub fn ueda_modulus(&self, tau: Complex64, z: Complex64) -> f64 {
        if tau == ONE {
            let m = z.norm();
            if m == 0.0 {
                return 0.0;
            }
            let gap = (z.arg().abs() - self.alpha).max(0.0);
            m * gap.cos()
        } else {
            let b = ONE / (ONE - tau);
            (z - b).norm() - b.norm()
        }
    }

    /// Membership in `V_ε(R') = { N_ε ≥ R' }`.
    pub fn in_v(&self, tau: Complex64, z: Complex64, radius: f64) -> bool {
        self.ueda_modulus(tau, z) >= radius
    }

    /// Membership in the closed sector `Π(R')`, whose apex sits at
    /// `R'' = R'/cos α` on the positive real axis:
    /// `Re(z − R'') ≥ |z − R''| sin α`. Contained in `V_ε(R')` for every ε.
    pub fn in_pi(&self, z: Complex64, radius: f64) -> bool {
        let apex = Complex64::new(radius / self.alpha.cos(), 0.0);
        let d = z - apex;
        d.re >= d.norm() * self.alpha.sin()
    }

    /// Base point `a = 2R(1 + cos α)/cos α` on the positive real axis; lies in
    /// `Π(2R)` and hence in `V_ε(2R)` for every ε.
    pub fn base_point(&self) -> Complex64 {
        let ca = self.alpha.cos();
        Complex64::new(2.0 * self.r * (1.0 + ca) / ca, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_4, PI, SQRT_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn modulus_parabolic_is_real_part_at_alpha_zero() {
        let sd = SectorDomain::new(10.0, 0.0).unwrap();
        assert!((sd.ueda_modulus(ONE, c(3.0, -7.0)) - 3.0).abs() < 1e-12);
        assert_eq!(sd.ueda_modulus(ONE, c(0.0, 0.0)), 0.0);
    }

    #[test]
    fn modulus_hyperbolic_example() {
        let sd = SectorDomain::new(10.0, 0.0).unwrap();
        // τ = 2 ⟹ b = −1; N(0) = |0+1| − 1 = 0.
        let n = sd.ueda_modulus(c(2.0, 0.0), c(0.0, 0.0));
        assert!(n.abs() < 1e-15);
    }

    #[test]
    fn modulus_sector_sup_closed_form() {
        let sd = SectorDomain::new(10.0, FRAC_PI_4).unwrap();
        let n = sd.ueda_modulus(ONE, c(1.0, 1.0));
        assert!((n - SQRT_2).abs() < 1e-14);
        // Behind the sector: boundary value, negative.
        let n = sd.ueda_modulus(ONE, c(-1.0, 0.0));
        assert!((n - SQRT_2 * (PI - FRAC_PI_4).cos() * 1.0).abs() < 1e-12 || n < 0.0);
    }

    #[test]
    fn base_point_lies_in_sector() {
        for &alpha in &[0.0, PI / 6.0, FRAC_PI_4] {
            let sd = SectorDomain::new(10.0, alpha).unwrap();
            let a = sd.base_point();
            assert!(sd.in_pi(a, 2.0 * sd.r()), "alpha = {alpha}");
            assert!(sd.in_v(ONE, a, 2.0 * sd.r()));
        }
    }

    #[test]
    fn delta_positive() {
        let sd = SectorDomain::new(5.0, PI / 6.0).unwrap();
        assert!(sd.delta() > 0.0);
        assert!((sd.delta() - (PI / 6.0).cos() / 2.0).abs() < 1e-16);
    }

    #[test]
    fn rejects_bad_geometry() {
        assert!(SectorDomain::new(0.0, 0.0).is_err());
        assert!(SectorDomain::new(10.0, PI / 2.0).is_err());
        assert!(SectorDomain::new(10.0, -0.1).is_err());
    }
}
