//! Königs and Fatou coordinates of the quadratic family, the Möbius
//! normalization `S_f`, and the two construction paths of the normalized
//! coordinate `Φ_f` (direct through the Schröder equation, and through the
//! simultaneous linearizer with an affine adjustment pinned on the critical
//! orbit).

use alloc::vec::Vec;
use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::family::{self, FamilyParams, R_ESC};
use crate::linearizer::{geometric_sum, ConjugatedQuadratic, Linearizer, LinearizerConfig};
use crate::sector::SectorDomain;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Closed petal disk `{ |w + r| ≤ r }` minus the parabolic point 0 itself.
fn in_petal(w: Complex64, radius: f64) -> bool {
    w != ZERO && (w + radius).norm_sqr() <= radius * radius
}

fn orbit_is_lost(w: Complex64) -> bool {
    !w.is_finite() || w.norm_sqr() > R_ESC * R_ESC
}

/// Möbius map `S_f(w̃) = λ(w̃−1)/((λ−1) w̃)` sending {0, 1, λ} to {∞, 0, 1}.
pub fn s_f(p: &FamilyParams, wt: Complex64) -> Result<Complex64> {
    if p.is_parabolic() {
        return Err(Error::DegenerateParams("S_f requires lambda < 1"));
    }
    if wt == ZERO {
        return Err(Error::Pole);
    }
    Ok(p.lambda() * (wt - 1.0) / ((p.lambda() - 1.0) * wt))
}

/// Königs coordinate of an attracting λ < 1: `φ(w) = lim f^n(w)/λ^n`,
/// normalized so `φ_f(0) = 0` and `φ_f(−λ/2) = 1`.
#[derive(Debug, Clone)]
pub struct KoenigsCoordinate {
    params: FamilyParams,
    /// Direct-limit radius (1−λ)/4: inside it the quotient iteration
    /// converges geometrically at rate ~λ.
    r_lin: f64,
    crit_value: Complex64,
    n_max: u32,
}

impl KoenigsCoordinate {
    pub fn new(params: FamilyParams) -> Result<Self> {
        Self::with_budget(params, 1_000_000)
    }

    pub fn with_budget(params: FamilyParams, n_max: u32) -> Result<Self> {
        if params.is_parabolic() {
            return Err(Error::DegenerateParams(
                "Koenigs coordinate requires lambda < 1",
            ));
        }
        let mut kc = Self {
            params,
            r_lin: (1.0 - params.lambda()) / 4.0,
            crit_value: ONE,
            n_max,
        };
        let cv = kc.raw(params.critical_point())?;
        if cv == ZERO || !cv.is_finite() {
            return Err(Error::DegenerateNormalization);
        }
        kc.crit_value = cv;
        Ok(kc)
    }

    pub fn params(&self) -> &FamilyParams {
        &self.params
    }

    pub fn r_lin(&self) -> f64 {
        self.r_lin
    }

    /// Pre-normalization value at the critical point −λ/2.
    pub fn crit_value(&self) -> Complex64 {
        self.crit_value
    }

    /// Unnormalized Königs limit: pulls `w` into `|w| < r_lin` along the
    /// orbit, takes the direct limit there, and divides by λ^n.
    fn raw(&self, w: Complex64) -> Result<Complex64> {
        let lambda = self.params.lambda();
        let mut w_cur = w;
        let mut pushes: u32 = 0;
        while w_cur.norm() >= self.r_lin {
            if orbit_is_lost(w_cur) {
                return Err(Error::NotInBasin);
            }
            if pushes >= self.n_max {
                return Err(Error::NotInBasin);
            }
            w_cur = family::apply_f(&self.params, w_cur);
            pushes += 1;
        }
        // Direct limit of f^k(w)/λ^k via the quotient 1 + w_k/λ. The steps
        // decay at rate ~λ, so the remaining tail is ~step·λ/(1−λ); stop on
        // that bound, not on the raw step, or the limit is short by a factor
        // 1/(1−λ) near the parabolic parameter.
        let mut q = w_cur;
        let mut wk = w_cur;
        let tail_scale = lambda / (1.0 - lambda);
        let mut converged = false;
        for _ in 0..self.n_max {
            let q_next = q * (1.0 + wk / lambda);
            wk = family::apply_f(&self.params, wk);
            let step = (q_next - q).norm();
            q = q_next;
            if step * tail_scale <= 1e-13 * q.norm() {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence {
                iterations: self.n_max as u64,
            });
        }
        let scale = lambda.powi(pushes as i32);
        if scale == 0.0 {
            return Err(Error::NoConvergence {
                iterations: pushes as u64,
            });
        }
        Ok(q / scale)
    }

    /// Normalized coordinate: `φ_f(f(w)) = λ φ_f(w)`, `φ_f(0) = 0`,
    /// `φ_f(−λ/2) = 1`.
    pub fn phi(&self, w: Complex64) -> Result<Complex64> {
        Ok(self.raw(w)? / self.crit_value)
    }
}

/// The normalized coordinate `Φ_f = S_f ∘ φ_f` built through the Schröder
/// equation: satisfies `Φ_f(f(w)) = τ Φ_f(w) + 1` and `Φ_f(−λ/2) = 0`.
#[derive(Debug, Clone)]
pub struct PhiDirect {
    kc: KoenigsCoordinate,
}

impl PhiDirect {
    pub fn new(params: FamilyParams) -> Result<Self> {
        Ok(Self {
            kc: KoenigsCoordinate::new(params)?,
        })
    }

    pub fn koenigs(&self) -> &KoenigsCoordinate {
        &self.kc
    }

    pub fn eval(&self, w: Complex64) -> Result<Complex64> {
        let t = self.kc.phi(w)?;
        s_f(self.kc.params(), t)
    }
}

/// Fatou coordinate of the parabolic map `g(w) = w + w²`: satisfies the Abel
/// equation `φ_g(g(w)) = φ_g(w) + 1` with `φ_g(−1/2) = 0`. Built through the
/// linearizer `u_0` on `Π(2R)` with `R = 1/(2r)`.
#[derive(Debug, Clone)]
pub struct FatouCoordinate {
    params: FamilyParams,
    r: f64,
    /// Petal radius whose χ-image is Π(2R).
    inner_r: f64,
    lin: Linearizer<ConjugatedQuadratic>,
    m_crit: u32,
    kappa0: Complex64,
    n_max: u32,
}

impl FatouCoordinate {
    /// `r` is the petal-disk parameter (default 0.05, so R = 10 matches the
    /// linearizer's base radius).
    pub fn new(r: f64, tol: f64) -> Result<Self> {
        let params = FamilyParams::new(1.0).unwrap();
        if !(r > 0.0 && r < 0.2) {
            return Err(Error::Domain("petal parameter r must lie in (0, 0.2)"));
        }
        let big_r = 1.0 / (2.0 * r);
        let sector = SectorDomain::new(big_r, 0.0)?;
        let cfg = LinearizerConfig::new(sector, 1.0, 1.2, tol, 1_000_000)?;
        let lin = Linearizer::new(ConjugatedQuadratic::new(params), cfg)?;
        let n_max = 100_000;

        // First index at which the critical orbit enters P_r.
        let mut w = params.critical_point();
        let mut m_crit = 0;
        while !in_petal(w, r) {
            if orbit_is_lost(w) || m_crit >= n_max {
                return Err(Error::NotInBasin);
            }
            w = family::apply_f(&params, w);
            m_crit += 1;
        }

        let mut fc = Self {
            params,
            r,
            inner_r: 1.0 / (4.0 * big_r),
            lin,
            m_crit,
            kappa0: ZERO,
            n_max,
        };
        fc.kappa0 = fc.raw(params.critical_point())?;
        Ok(fc)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// R = 1/(2r).
    pub fn big_r(&self) -> f64 {
        1.0 / (2.0 * self.r)
    }

    pub fn m_crit(&self) -> u32 {
        self.m_crit
    }

    pub fn linearizer(&self) -> &Linearizer<ConjugatedQuadratic> {
        &self.lin
    }

    /// `u_0(χ_1(g^N(w))) − N` with N minimal so the χ-image lies in Π(2R).
    fn raw(&self, w: Complex64) -> Result<Complex64> {
        if w == ZERO {
            // The parabolic point is on ∂K_g, not in the interior.
            return Err(Error::NotInBasin);
        }
        let mut w_cur = w;
        let mut pushes: u32 = 0;
        while !in_petal(w_cur, self.inner_r) {
            if orbit_is_lost(w_cur) || pushes >= self.n_max {
                return Err(Error::NotInBasin);
            }
            w_cur = family::apply_f(&self.params, w_cur);
            pushes += 1;
        }
        let z = -ONE / w_cur; // χ_1
        let u = self.lin.u_value(z)?;
        Ok(u - pushes as f64)
    }

    /// The normalized Fatou coordinate.
    pub fn phi(&self, w: Complex64) -> Result<Complex64> {
        Ok(self.raw(w)? - self.kappa0)
    }
}

/// Affine adjustment `T_ε`: fixes `1/(1−τ)` and sends `b ↦ c` when τ > 1;
/// pure translation `W ↦ W + (c − b)` when τ = 1 (so that `T(b) = c` holds in
/// both cases).
#[derive(Debug, Clone, Copy)]
pub struct AffineAdjustment {
    tau: f64,
    b: Complex64,
    c: Complex64,
    scale: Complex64,
    offset: Complex64,
}

impl AffineAdjustment {
    pub fn new(tau: f64, b: Complex64, c: Complex64) -> Result<Self> {
        let (scale, offset) = if tau > 1.0 {
            let p = c64(1.0 / (1.0 - tau));
            if b == p {
                return Err(Error::DegenerateNormalization);
            }
            let scale = (c - p) / (b - p);
            (scale, p - scale * p)
        } else {
            (ONE, c - b)
        };
        Ok(Self {
            tau,
            b,
            c,
            scale,
            offset,
        })
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    pub fn apply(&self, w: Complex64) -> Complex64 {
        self.scale * w + self.offset
    }

    /// Fixed point 1/(1−τ) when τ > 1.
    pub fn fixed_point(&self) -> Option<Complex64> {
        (self.tau > 1.0).then(|| c64(1.0 / (1.0 - self.tau)))
    }
}

/// `Φ_f` built through the simultaneous linearizer:
/// `Ψ(w) = u_ε(χ_λ(w))` followed by the affine adjustment that matches the
/// critical orbit, `Φ = T ∘ Ψ`. Because `T ∘ Ψ` satisfies the same
/// intertwining `Φ(f(w)) = τΦ(w) + 1`, the pullback `ℓ^{−N}` along the orbit
/// is implicit in `Ψ`'s own push-forward.
#[derive(Debug, Clone)]
pub struct PhiViaLinearizer {
    params: FamilyParams,
    r: f64,
    /// Petal radius whose χ_λ-image is Π(2R); scales with λ².
    inner_r: f64,
    lin: Linearizer<ConjugatedQuadratic>,
    m_crit: u32,
    adjust: AffineAdjustment,
    n_max: u32,
}

impl PhiViaLinearizer {
    pub fn new(params: FamilyParams, r: f64, tol: f64) -> Result<Self> {
        if !(r > 0.0 && r < 0.2) {
            return Err(Error::Domain("petal parameter r must lie in (0, 0.2)"));
        }
        let big_r = 1.0 / (2.0 * r);
        let sector = SectorDomain::new(big_r, 0.0)?;
        let cfg = LinearizerConfig::new(sector, 1.0, 1.2, tol, 1_000_000)?;
        let lin = Linearizer::new(ConjugatedQuadratic::new(params), cfg)?;
        let n_max = 100_000;
        let lambda = params.lambda();

        let mut w = params.critical_point();
        let mut m_crit = 0;
        while !in_petal(w, r) {
            if orbit_is_lost(w) || m_crit >= n_max {
                return Err(Error::NotInBasin);
            }
            w = family::apply_f(&params, w);
            m_crit += 1;
        }
        let a_eps = w;

        let mut this = Self {
            params,
            r,
            inner_r: lambda * lambda / (4.0 * big_r),
            lin,
            m_crit,
            // Placeholder until the critical-orbit value is measured below.
            adjust: AffineAdjustment::new(1.0, ZERO, ZERO)?,
            n_max,
        };
        let b = this.psi(a_eps)?;
        let c = c64(geometric_sum(params.tau(), m_crit));
        let adjust = AffineAdjustment::new(params.tau(), b, c)?;
        if (adjust.apply(b) - c).norm() > 1e-12 * c.norm().max(1.0) {
            return Err(Error::InconsistentNormalization);
        }
        this.adjust = adjust;
        Ok(this)
    }

    pub fn params(&self) -> &FamilyParams {
        &self.params
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn m_crit(&self) -> u32 {
        self.m_crit
    }

    pub fn adjustment(&self) -> &AffineAdjustment {
        &self.adjust
    }

    pub fn linearizer(&self) -> &Linearizer<ConjugatedQuadratic> {
        &self.lin
    }

    /// `Ψ(w) = u_ε(χ_λ(w))`, extended along the orbit by
    /// `Ψ = ℓ^{−j} ∘ Ψ ∘ f^j` with `ℓ^{−j}(W) = (W − c_j)/τ^j` in closed
    /// form, `c_j = ℓ^j(0)`.
    pub fn psi(&self, w: Complex64) -> Result<Complex64> {
        if w == ZERO {
            return Err(Error::NotInBasin);
        }
        let mut w_cur = w;
        let mut pushes: u32 = 0;
        while !in_petal(w_cur, self.inner_r) {
            if orbit_is_lost(w_cur) || pushes >= self.n_max {
                return Err(Error::NotInBasin);
            }
            w_cur = family::apply_f(&self.params, w_cur);
            pushes += 1;
        }
        let lambda = self.params.lambda();
        let z = -c64(lambda * lambda) / w_cur; // χ_λ
        let u = self.lin.u_value(z)?;
        let c_j = geometric_sum(self.params.tau(), pushes);
        Ok((u - c_j) / self.params.tau().powi(pushes as i32))
    }

    /// The normalized coordinate `Φ_f(w) = T(Ψ(w))`; vanishes at the critical
    /// point by the critical-orbit pinning.
    pub fn eval(&self, w: Complex64) -> Result<Complex64> {
        Ok(self.adjust.apply(self.psi(w)?))
    }
}

/// One row of the Koenigs-to-Fatou convergence table.
#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub lambda: f64,
    /// sup over E of |Φ_f − Φ_g| (NaN when no point evaluated).
    pub sup_raw: f64,
    /// The same sup after re-basing Φ_f at the common interior point −1/2.
    pub sup_rebased: f64,
    /// Indices of points of E that failed the K_f° membership proxy or whose
    /// evaluation failed.
    pub failures: Vec<usize>,
}

/// Verifies `E ⊂ K_g°`, computes `Φ_g` once, and for each λ in the list
/// checks `E ⊂ K_f°` and reports `sup_E |Φ_f − Φ_g|` (raw, and re-based at
/// −1/2).
pub fn convergence_experiment(
    e_points: &[Complex64],
    lambdas: &[f64],
    max_iter: usize,
) -> Result<Vec<ConvergenceRow>> {
    let g = FamilyParams::new(1.0).unwrap();
    for &w in e_points {
        if !family::in_filled_julia_interior(&g, w, max_iter) {
            return Err(Error::NotInBasin);
        }
    }
    let fatou = FatouCoordinate::new(0.05, 1e-10)?;
    let phi_g: Vec<Complex64> = e_points
        .iter()
        .map(|&w| fatou.phi(w))
        .collect::<Result<_>>()?;

    let rebase_point = c64(-0.5);
    let mut rows = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let params = FamilyParams::new(lambda)?;
        if params.is_parabolic() {
            return Err(Error::Domain("lambda list must approach 1 from below"));
        }
        let direct = PhiDirect::new(params)?;
        let base = if family::in_filled_julia_interior(&params, rebase_point, max_iter) {
            direct.eval(rebase_point).ok()
        } else {
            None
        };
        let mut failures = Vec::new();
        let mut sup_raw = 0.0f64;
        let mut sup_rebased = 0.0f64;
        let mut evaluated = false;
        for (i, &w) in e_points.iter().enumerate() {
            if !family::in_filled_julia_interior(&params, w, max_iter) {
                failures.push(i);
                continue;
            }
            match direct.eval(w) {
                Ok(v) => {
                    evaluated = true;
                    sup_raw = sup_raw.max((v - phi_g[i]).norm());
                    if let Some(b) = base {
                        sup_rebased = sup_rebased.max((v - b - phi_g[i]).norm());
                    }
                }
                Err(_) => failures.push(i),
            }
        }
        if !evaluated {
            sup_raw = f64::NAN;
        }
        if base.is_none() || !evaluated {
            sup_rebased = f64::NAN;
        }
        rows.push(ConvergenceRow {
            lambda,
            sup_raw,
            sup_rebased,
            failures,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn koenigs_normalization_chain() {
        for &l in &[0.5, 0.9, 0.99] {
            let p = FamilyParams::new(l).unwrap();
            let kc = KoenigsCoordinate::new(p).unwrap();
            assert_eq!(kc.phi(ZERO).unwrap(), ZERO, "λ={l}");
            let at_crit = kc.phi(p.critical_point()).unwrap();
            assert!((at_crit - ONE).norm() < 1e-10, "λ={l}: {at_crit}");
            let next = family::apply_f(&p, p.critical_point());
            let at_next = kc.phi(next).unwrap();
            assert!((at_next - c64(l)).norm() < 1e-10, "λ={l}: {at_next}");
        }
    }

    #[test]
    fn koenigs_schroeder_residual() {
        for &l in &[0.5, 0.9, 0.99] {
            let p = FamilyParams::new(l).unwrap();
            let kc = KoenigsCoordinate::new(p).unwrap();
            for &w in &[c(0.1, 0.05), c(-0.3, 0.1), c(-0.45, 0.0), c(0.05, -0.2)] {
                if !family::in_filled_julia_interior(&p, w, 10_000) {
                    continue;
                }
                let lhs = kc.phi(family::apply_f(&p, w)).unwrap();
                let rhs = kc.phi(w).unwrap() * l;
                assert!((lhs - rhs).norm() < 1e-9, "λ={l}, w={w}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn koenigs_rejects_parabolic_and_escapers() {
        assert!(KoenigsCoordinate::new(FamilyParams::new(1.0).unwrap()).is_err());
        let p = FamilyParams::new(0.5).unwrap();
        let kc = KoenigsCoordinate::new(p).unwrap();
        assert_eq!(kc.phi(c(2.0, 0.0)), Err(Error::NotInBasin));
    }

    #[test]
    fn moebius_triple() {
        let p = FamilyParams::new(0.7).unwrap();
        assert!((s_f(&p, ONE).unwrap()).norm() < 1e-15);
        assert!((s_f(&p, c64(0.7)).unwrap() - ONE).norm() < 1e-14);
        assert_eq!(s_f(&p, ZERO), Err(Error::Pole));
        assert!(s_f(&FamilyParams::new(1.0).unwrap(), ONE).is_err());
    }

    #[test]
    fn fatou_abel_chain() {
        let fc = FatouCoordinate::new(0.05, 1e-10).unwrap();
        let v0 = fc.phi(c64(-0.5)).unwrap();
        assert!(v0.norm() < 1e-10, "{v0}");
        let v1 = fc.phi(c64(-0.25)).unwrap();
        assert!((v1 - ONE).norm() < 1e-9, "{v1}");
        let v2 = fc.phi(c64(-3.0 / 16.0)).unwrap();
        assert!((v2 - c64(2.0)).norm() < 1e-9, "{v2}");
    }

    #[test]
    fn fatou_rejects_fixed_point_and_exterior() {
        let fc = FatouCoordinate::new(0.05, 1e-10).unwrap();
        assert_eq!(fc.phi(ZERO), Err(Error::NotInBasin));
        assert_eq!(fc.phi(c64(1.0)), Err(Error::NotInBasin));
    }

    #[test]
    fn fatou_path_independence() {
        // The Fatou coordinate is unique given the normalization; two petal
        // radii must give the same function.
        let fa = FatouCoordinate::new(0.05, 1e-10).unwrap();
        let fb = FatouCoordinate::new(0.02, 1e-10).unwrap();
        for &w in &[c(-0.4, 0.05), c(-0.25, 0.0), c(-0.1, 0.02), c(-0.5, 0.0)] {
            let va = fa.phi(w).unwrap();
            let vb = fb.phi(w).unwrap();
            assert!((va - vb).norm() < 1e-8, "w={w}: {va} vs {vb}");
        }
    }

    #[test]
    fn phi_direct_normalization_and_equation() {
        let p = FamilyParams::new(0.99).unwrap();
        let direct = PhiDirect::new(p).unwrap();
        let at_crit = direct.eval(p.critical_point()).unwrap();
        assert!(at_crit.norm() < 1e-9, "{at_crit}");
        let next = family::apply_f(&p, p.critical_point());
        let at_next = direct.eval(next).unwrap();
        assert!((at_next - ONE).norm() < 1e-8, "{at_next}");

        // Functional equation Φ(f(w)) = τΦ(w) + 1 on petal samples.
        for k in 0..20 {
            let t = k as f64 / 20.0;
            let w = c(-0.09 + 0.07 * t, 0.02 * (1.0 - t));
            if !family::in_filled_julia_interior(&p, w, 100_000) {
                continue;
            }
            let lhs = direct.eval(family::apply_f(&p, w)).unwrap();
            let rhs = direct.eval(w).unwrap() * p.tau() + 1.0;
            assert!((lhs - rhs).norm() < 1e-8, "w={w}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn via_linearizer_zero_at_critical_point() {
        for &l in &[1.0, 0.999, 0.99] {
            let p = FamilyParams::new(l).unwrap();
            let via = PhiViaLinearizer::new(p, 0.05, 1e-10).unwrap();
            let v = via.eval(p.critical_point()).unwrap();
            assert!(v.norm() < 1e-9, "λ={l}: {v}");
        }
    }

    #[test]
    fn via_linearizer_matches_fatou_at_parabolic() {
        let p = FamilyParams::new(1.0).unwrap();
        let via = PhiViaLinearizer::new(p, 0.05, 1e-10).unwrap();
        let fc = FatouCoordinate::new(0.05, 1e-10).unwrap();
        for k in 0..10 {
            let t = k as f64 / 10.0;
            let w = c(-0.08 + 0.06 * t, 0.015 * t);
            let a = via.eval(w).unwrap();
            let b = fc.phi(w).unwrap();
            assert!((a - b).norm() < 1e-9, "w={w}: {a} vs {b}");
        }
    }

    #[test]
    fn two_path_equality_perturbed() {
        let p = FamilyParams::new(0.99).unwrap();
        let via = PhiViaLinearizer::new(p, 0.05, 1e-10).unwrap();
        let direct = PhiDirect::new(p).unwrap();
        for k in 0..10 {
            let t = k as f64 / 10.0;
            let w = c(-0.08 + 0.06 * t, 0.015 * (1.0 - t));
            let a = via.eval(w).unwrap();
            let b = direct.eval(w).unwrap();
            assert!((a - b).norm() < 1e-6, "w={w}: {a} vs {b}");
        }
    }

    #[test]
    fn critical_orbit_images() {
        // Φ_f(f^n(−λ/2)) = ℓ^n(0) for n ≤ 20.
        for &l in &[1.0, 0.99] {
            let p = FamilyParams::new(l).unwrap();
            let via = PhiViaLinearizer::new(p, 0.05, 1e-10).unwrap();
            let mut w = p.critical_point();
            for n in 0..=20u32 {
                let v = via.eval(w).unwrap();
                let target = c64(geometric_sum(p.tau(), n));
                assert!((v - target).norm() < 1e-8, "λ={l}, n={n}: {v} vs {target}");
                w = family::apply_f(&p, w);
            }
        }
    }

    #[test]
    fn affine_adjustment_laws() {
        let t = AffineAdjustment::new(1.25, c(3.0, 1.0), c(5.0, 0.0)).unwrap();
        assert!((t.apply(c(3.0, 1.0)) - c(5.0, 0.0)).norm() < 1e-12);
        let p = t.fixed_point().unwrap();
        assert!((t.apply(p) - p).norm() < 1e-12);

        let t0 = AffineAdjustment::new(1.0, c(3.0, 1.0), c(5.0, 0.0)).unwrap();
        assert!((t0.apply(c(3.0, 1.0)) - c(5.0, 0.0)).norm() < 1e-15);
        assert!(t0.fixed_point().is_none());
        // Translation: unit scale.
        assert!((t0.apply(ZERO) - c(2.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn convergence_experiment_critical_point_only() {
        // Re-based at −1/2 the single-point column is identically zero; the
        // raw column carries |Φ_f(−1/2)| (the critical points −λ/2 and −1/2
        // differ), a small offset that shrinks with λ → 1.
        let rows = convergence_experiment(&[c64(-0.5)], &[0.9375, 0.96875], 100_000).unwrap();
        let mut prev_raw = f64::INFINITY;
        for row in rows {
            assert!(row.failures.is_empty());
            assert!(
                row.sup_rebased < 1e-9,
                "λ={}: {}",
                row.lambda,
                row.sup_rebased
            );
            assert!(row.sup_raw < 0.05, "λ={}: {}", row.lambda, row.sup_raw);
            assert!(row.sup_raw < prev_raw);
            prev_raw = row.sup_raw;
        }
    }

    #[test]
    fn convergence_experiment_rejects_exterior_point() {
        let err = convergence_experiment(&[c64(10.0)], &[0.9], 1_000);
        assert_eq!(err.unwrap_err(), Error::NotInBasin);
    }
}
