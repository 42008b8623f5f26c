//! Exact arithmetic substrate: scalars, Laurent polynomials, matrices and
//! linear algebra.

pub mod fields;
pub mod integer;
pub mod json;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod scalar;

pub use fields::{Cyclotomic, Fp};
pub use integer::{gcd_normalize, IntMatrix, QMatrix};
pub use matrix::Matrix;
pub use poly::LaurentPoly;
pub use scalar::{Field, Ring};
