//! Coxeter group arithmetic and numerics on the reduced group C*-algebra.
//!
//! The crate is organised bottom-up:
//!
//! * [`coxeter`]: presentations, ShortLex normal forms, word-metric balls.
//! * [`geometry`]: the reflection representation, root signs, inversion sets.
//! * [`algebra`]: finitely supported functions on the group, i.e. symbols of
//!   convolution operators `λ(f)` on `ℓ²(G)`.
//! * [`linalg`]: dense matrices, power iteration and Jacobi eigensolves.
//! * [`operator`]: finite sections of `λ(f)`, norm brackets and positive /
//!   negative definiteness certificates for the length function.
//! * [`semigroup`]: the heat multipliers `λ(f) ↦ λ(e^{-t l}·f)`, their
//!   generator, truncations, membership in the unit "Lipschitz ball" `K` and
//!   the ε-net parameters showing `K` is totally bounded.

pub mod algebra;
pub mod coxeter;
pub mod error;
pub mod format;
pub mod geometry;
pub mod linalg;
pub mod operator;
pub mod semigroup;

pub use algebra::GroupFunction;
pub use coxeter::{Ball, BraidOrder, CoxeterGroup, CoxeterMatrix, GroupElement};
pub use error::{Error, Result};
pub use geometry::{BilinearForm, RootVector, ScalarMode};
