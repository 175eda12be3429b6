//! Numerical linearization of the quadratic family `f_λ(w) = λw + w²` through
//! the parabolic limit λ = 1.
//!
//! The crate builds three kinds of linearizing coordinates and checks their
//! functional equations to numerical tolerance:
//!
//! * Königs coordinates `φ_f` with `φ_f(f(w)) = λ φ_f(w)` for attracting λ < 1,
//! * the Fatou coordinate `φ_g` with `φ_g(g(w)) = φ_g(w) + 1` at λ = 1,
//! * a simultaneously linearizing family `u_ε` with
//!   `u_ε(f_ε(z)) = τ_ε u_ε(z) + 1` on invariant domains `V_ε(R)`, continuous
//!   through ε = 0.
//!
//! The [`polylog`] module evaluates `Li_s(z)` on the unit disk and checks the
//! growth bound that controls the normalization constant `B_ε`.
//!
//! The crate is `no_std`-compatible (with `alloc`); disable the default `std`
//! feature for embedded use.

#![cfg_attr(not(feature = "std"), no_std)]
// Validation guards are written as `!(x > 0.0)` on purpose: the negated form
// rejects NaN, which `x <= 0.0` would accept.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod coordinates;
pub mod error;
pub mod family;
pub mod kahan;
pub mod linearizer;
pub mod polylog;
pub mod sector;

pub use error::{Error, Result};
pub use family::{FamilyParams, Orbit, R_ESC};
pub use linearizer::{
    ConjugatedQuadratic, LinearizationResult, Linearizer, LinearizerConfig, PerturbedMap,
    SyntheticSigma,
};
pub use sector::SectorDomain;

/// The complex scalar type used throughout: IEEE-754 double pairs.
pub type Complex = num_complex::Complex64;
