//! The quadratic family `f_λ(w) = λw + w²`, its conjugate near infinity, and
//! orbit/membership primitives.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Escape radius: for |λ| ≤ 1 and |w| ≥ 3, |f(w)| = |w||w+λ| ≥ |w|(|w|−1) ≥ 2|w|.
pub const R_ESC: f64 = 3.0;

/// Default iteration budget for membership tests; near-parabolic orbits need
/// roughly π/ε steps to traverse the gate, so 1e5 covers λ ≥ 1 − 2⁻¹⁴.
pub const MEMBERSHIP_MAX_ITER: usize = 100_000;

/// The single knob of the whole artifact: λ ∈ (0,1] with the derived
/// quantities ε = 1/λ − 1 and τ = 1/λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParams {
    lambda: f64,
    epsilon: f64,
    tau: f64,
}

impl FamilyParams {
    pub fn new(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda <= 0.0 || lambda > 1.0 {
            return Err(Error::Domain("lambda must lie in (0, 1]"));
        }
        let tau = 1.0 / lambda;
        Ok(Self {
            lambda,
            epsilon: tau - 1.0,
            tau,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// λ = 1 ⟺ ε = 0 ⟺ τ = 1: the parabolic map g(w) = w + w².
    pub fn is_parabolic(&self) -> bool {
        self.lambda == 1.0
    }

    /// Critical point −λ/2 of f_λ.
    pub fn critical_point(&self) -> Complex64 {
        Complex64::new(-self.lambda / 2.0, 0.0)
    }
}

/// `f_λ(w) = λw + w²`. Entire; overflow propagates as non-finite values.
pub fn apply_f(p: &FamilyParams, w: Complex64) -> Complex64 {
    p.lambda * w + w * w
}

/// Coordinate change `χ_λ(w) = −λ²/w`.
pub fn chi(p: &FamilyParams, w: Complex64) -> Result<Complex64> {
    if w == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole);
    }
    Ok(-(p.lambda * p.lambda) / w)
}

/// Inverse coordinate change; the same Möbius involution `z ↦ −λ²/z`.
pub fn chi_inv(p: &FamilyParams, z: Complex64) -> Result<Complex64> {
    chi(p, z)
}

/// Deviation of the conjugated map from its affine model:
/// `g_ε(z) = F(z) − (τz + 1) = λ/(z − λ)`, exactly.
pub fn conjugated_deviation(p: &FamilyParams, z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(p.lambda, 0.0) {
        return Err(Error::Pole);
    }
    Ok(p.lambda / (z - p.lambda))
}

/// The conjugated map `F = χ_λ ∘ f_λ ∘ χ_λ⁻¹`, i.e. `F(z) = τz + 1 + λ/(z−λ)`
/// (equivalently `z²/(λ(z−λ))`).
pub fn apply_f_conjugated(p: &FamilyParams, z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole);
    }
    let g = conjugated_deviation(p, z)?;
    Ok(p.tau * z + 1.0 + g)
}

/// A finite stretch of forward orbit under `f_λ` with escape bookkeeping.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub points: Vec<Complex64>,
    pub escaped: bool,
    pub escape_index: Option<usize>,
}

fn is_escaping(w: Complex64) -> bool {
    !w.re.is_finite() || !w.im.is_finite() || w.norm_sqr() > R_ESC * R_ESC
}

/// Iterates `apply_f` from `w0` until escape (|w| > R_esc, or a non-finite
/// value) or `max_iter` applications.
pub fn orbit(p: &FamilyParams, w0: Complex64, max_iter: usize) -> Orbit {
    let mut points = Vec::with_capacity(16.min(max_iter + 1));
    let mut w = w0;
    let mut escaped = false;
    let mut escape_index = None;
    for k in 0..=max_iter {
        points.push(w);
        if is_escaping(w) {
            escaped = true;
            escape_index = Some(k);
            break;
        }
        if k == max_iter {
            break;
        }
        w = apply_f(p, w);
    }
    Orbit {
        points,
        escaped,
        escape_index,
    }
}

/// One-sided membership proxy for the interior of the filled Julia set:
/// true iff the orbit reaches the attractor's capture region (the
/// linearization disk |w| < (1−λ)/4 for λ < 1, the invariant petal
/// |w + r| ≤ r with r = 0.05 at λ = 1) or stays bounded for `max_iter`
/// steps. True answers may be wrong arbitrarily close to the Julia boundary.
pub fn in_filled_julia_interior(p: &FamilyParams, w: Complex64, max_iter: usize) -> bool {
    let mut w = w;
    for _ in 0..=max_iter {
        if is_escaping(w) {
            return false;
        }
        if p.is_parabolic() {
            let r = 0.05;
            if w != Complex64::new(0.0, 0.0) && (w + r).norm_sqr() <= r * r {
                return true;
            }
        } else if w.norm() < (1.0 - p.lambda) / 4.0 {
            return true;
        }
        w = apply_f(p, w);
    }
    true
}
