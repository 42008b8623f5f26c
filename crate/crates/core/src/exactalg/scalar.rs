//! Scalar traits shared by the polynomial and matrix code.
//!
//! Everything in this crate is exact, so the traits only promise ring (or
//! field) arithmetic. Hot loops work on references to avoid cloning big
//! integers, hence the `*_ref` methods.

use std::fmt::Debug;
use std::ops::{AddAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A commutative ring with exact arithmetic.
pub trait Ring: Clone + Debug + PartialEq + Zero + One + Neg<Output = Self> + AddAssign + SubAssign {
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a.mul_ref(b);
    }

    fn from_i64(n: i64) -> Self {
        let mut acc = Self::zero();
        let unit = if n < 0 { -Self::one() } else { Self::one() };
        // Doubling keeps this logarithmic for the generic fallback.
        let mut base = unit;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc += base.clone();
            }
            base = base.add_ref(&base);
            k >>= 1;
        }
        acc
    }
}

/// A field: every nonzero element has an inverse.
pub trait Field: Ring {
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn div_ref(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul_ref(&i))
    }
}

macro_rules! impl_ring_via_ref_ops {
    ($($t:ty),*) => {$(
        impl Ring for $t {
            #[inline]
            fn add_ref(&self, other: &Self) -> Self { self + other }
            #[inline]
            fn sub_ref(&self, other: &Self) -> Self { self - other }
            #[inline]
            fn mul_ref(&self, other: &Self) -> Self { self * other }
        }
    )*};
}

impl_ring_via_ref_ops!(BigInt, BigRational, i64, i128);

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}
