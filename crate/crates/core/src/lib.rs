//! Exact computations around the theta correspondence for symplectic and
//! even orthogonal dual pairs.
//!
//! The crate is organised bottom-up:
//!
//! * [`partitions`]: partitions, bipartitions, dominance and interleaving
//!   orders, enumeration.
//! * [`weyl`]: root data, finite Weyl groups with lexicographically least
//!   reduced words, and the reflection action on the character lattice.
//! * [`laurent`]: sparse Laurent polynomials in square roots of the Hecke
//!   parameters, with exact rational coefficients.
//! * [`hecke`]: Iwahori-Hecke and affine Hecke algebras in the Bernstein
//!   presentation, crossed products with finite R-groups.
//! * [`finite_howe`]: the unipotent Howe correspondence over finite fields
//!   on bipartition labels, extremal correspondents, Lusztig-series checks.
//! * [`classical`]: orders of finite classical groups, centralizers of
//!   semisimple elements and the Lusztig dimension formula.
//! * [`theta_transfer`]: inertial classes of p-adic symplectic and
//!   orthogonal groups and their theta transfer.

#![allow(clippy::needless_range_loop)]

pub mod classical;
pub mod error;
pub mod finite_howe;
pub mod hecke;
pub mod laurent;
pub mod partitions;
pub mod sign;
pub mod theta_transfer;
pub mod weyl;

pub use error::{Error, Result};
pub use sign::Sign;
