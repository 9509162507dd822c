//! Lagrangian representation of oriented tangles over Λ = Z[t, t⁻¹].
//!
//! Everything here is exact: coefficients are integers, rational functions
//! are kept reduced, and submodules of free Λ-modules are carried as
//! generator matrices together with a saturation verdict.
//!
//! Module map:
//!
//! - [`laurent`]: the ring Λ, its involution, gcd and unit normalisation,
//!   plus the fraction field.
//! - [`linalg`]: matrices over Λ, determinants, kernels, order ideals.
//! - [`lagrangian`]: Hermitian modules and Lagrangian relations.
//! - [`diskhomology`]: the objects H₁ of punctured disks/spheres.
//! - [`tanglecat`]: tangle words and their relations.
//! - [`burau`]: Burau matrices and oriented braid matrices.
//! - [`alexander`]: Alexander polynomials of closures.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod alexander;
pub mod burau;
pub mod diskhomology;
mod error;
pub mod lagrangian;
pub mod laurent;
pub mod linalg;
pub mod tanglecat;

pub use error::{Error, Result};
pub use laurent::{LaurentPoly, RatFunc};
pub use linalg::{GeneratorSet, LambdaMatrix, Verdict};
