//! Exact Kazhdan-Lusztig theory for small finite Weyl groups.
//!
//! The pipeline runs bottom-up:
//!
//! * [`coxeter`] enumerates the group and its Bruhat order,
//! * [`hecke`] builds the Iwahori-Hecke algebra, the Kazhdan-Lusztig basis
//!   and the structure constants `h_{x,y,z}`,
//! * [`cells`] extracts the a-function, distinguished involutions and cells,
//! * [`jring`] builds Lusztig's asymptotic ring `J` and the map `phi`,
//! * [`jreps`] finds integral irreducible representations of `J` with their
//!   invariant forms,
//! * [`cellular`] assembles the cellular basis and checks the cell datum
//!   axioms,
//! * [`cellmod`] covers cell modules, Gram matrices, specializations and
//!   decomposition matrices.
//!
//! All arithmetic is exact. The polynomial and matrix types are generic over
//! the coefficient ring; the aliases below fix the instances used by the
//! pipeline.

pub mod cellmod;
pub mod cells;
pub mod cellular;
pub mod coxeter;
pub mod error;
pub mod exactalg;
pub mod hecke;
pub mod jreps;
pub mod jring;
pub mod pipeline;
pub mod report;

pub use error::{Error, Result};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Integers of arbitrary size.
pub type Int = BigInt;
/// Rationals of arbitrary size.
pub type Rational = BigRational;
/// The ring `A = Z[v, v^-1]`.
pub type Poly = exactalg::LaurentPoly<BigInt>;
/// Integer matrices.
pub type IntMatrix = exactalg::Matrix<BigInt>;
/// Rational matrices.
pub type QMatrix = exactalg::Matrix<BigRational>;
/// Matrices over `A`.
pub type PolyMatrix = exactalg::Matrix<Poly>;
