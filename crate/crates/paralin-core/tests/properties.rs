//! Randomized invariants of the domain geometry and the conjugation.

use num_complex::Complex64;
use proptest::prelude::*;

use paralin_core::linearizer::{geometric_sum, increasing_step_check};
use paralin_core::{family, FamilyParams, PerturbedMap, SectorDomain};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn lambda_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![Just(1.0), 0.05f64..1.0]
}

proptest! {
    /// N_ε(z) ≤ |z| for every τ and every α (triangle inequality for the
    /// hyperbolic form, cosine contraction for the sector form).
    #[test]
    fn ueda_modulus_below_modulus(
        alpha in 0.0..1.5f64,
        t in 1.0..5.0f64,
        zr in -100.0..100.0f64,
        zi in -100.0..100.0f64,
    ) {
        let sd = SectorDomain::new(10.0, alpha).unwrap();
        let z = c(zr, zi);
        for tau in [c(1.0, 0.0), c(t, 0.0)] {
            prop_assert!(sd.ueda_modulus(tau, z) <= z.norm() + 1e-12);
        }
    }

    /// Π(R) sits inside V_ε(R) for every radial τ with |arg(τ−1)| ≤ α.
    #[test]
    fn sector_contained_in_invariant_domain(
        alpha in 0.0..1.5f64,
        x in 0.0..80.0f64,
        y in -80.0..80.0f64,
        rho in 0.0..2.0f64,
        dir in -1.0..1.0f64,
    ) {
        let sd = SectorDomain::new(10.0, alpha).unwrap();
        let z = c(10.0 / alpha.cos() + x, y);
        prop_assume!(sd.in_pi(z, 10.0));
        let theta = alpha * dir;
        let tau = c(1.0, 0.0) + rho * c(theta.cos(), theta.sin());
        prop_assert!(sd.in_v(tau, z, 10.0));
    }

    /// One orbit step of the conjugated map raises the height by at least δ
    /// anywhere in V(R).
    #[test]
    fn orbit_step_raises_height(
        lambda in lambda_strategy(),
        x in 20.0..80.0f64,
        y in -40.0..40.0f64,
    ) {
        let sd = SectorDomain::new(10.0, 0.0).unwrap();
        let map = FamilyParams::new(lambda).unwrap().conjugated();
        prop_assert!(increasing_step_check(&map, &sd, c(x, y)).unwrap());
    }

    /// The change of variables intertwines the two forms of the map:
    /// χ_λ(f(w)) = F(χ_λ(w)).
    #[test]
    fn conjugation_intertwines(
        lambda in lambda_strategy(),
        wr in -1.0..1.0f64,
        wi in -1.0..1.0f64,
    ) {
        let p = FamilyParams::new(lambda).unwrap();
        let w = c(wr, wi);
        prop_assume!(w.norm() > 1e-3);
        let fw = family::apply_f(&p, w);
        prop_assume!(fw.norm() > 1e-6);
        let lhs = family::chi(&p, fw).unwrap();
        let rhs = p.conjugated().apply(family::chi(&p, w).unwrap());
        let scale = lhs.norm().max(rhs.norm()).max(1.0);
        prop_assert!((lhs - rhs).norm() <= 1e-9 * scale);
    }

    /// χ_λ is an involution up to the λ² factor: χ(χ(w)) = w.
    #[test]
    fn conjugation_round_trips(
        lambda in lambda_strategy(),
        wr in -2.0..2.0f64,
        wi in -2.0..2.0f64,
    ) {
        let p = FamilyParams::new(lambda).unwrap();
        let w = c(wr, wi);
        prop_assume!(w.norm() > 1e-3);
        let z = family::chi(&p, w).unwrap();
        let back = family::chi_inv(&p, z).unwrap();
        prop_assert!((back - w).norm() <= 1e-12 * w.norm().max(1.0));
    }

    /// The closed form of ℓ^n(0) matches the iteration of ℓ(x) = τx + 1.
    #[test]
    fn geometric_sum_matches_iteration(
        tau in prop_oneof![Just(1.0), 1.0..1.5f64],
        n in 0u32..200,
    ) {
        let mut x = 0.0f64;
        for _ in 0..n {
            x = tau * x + 1.0;
        }
        let closed = geometric_sum(tau, n);
        prop_assert!((closed - x).abs() <= 1e-9 * x.max(1.0));
    }
}
