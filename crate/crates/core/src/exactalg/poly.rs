//! Laurent polynomials in one variable `v` with exact coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::scalar::Ring;

/// A Laurent polynomial `sum c_k v^k`.
///
/// Stored as a list of `(exponent, coefficient)` pairs sorted by exponent with
/// no zero coefficients, so equality is structural and the zero polynomial is
/// the empty list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<R> {
    terms: Vec<(i32, R)>,
}

impl<R: Ring> LaurentPoly<R> {
    pub fn constant(c: R) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: R, exp: i32) -> Self {
        if c.is_zero() {
            Self { terms: Vec::new() }
        } else {
            Self { terms: vec![(exp, c)] }
        }
    }

    /// `v^exp`
    pub fn v_pow(exp: i32) -> Self {
        Self::monomial(R::one(), exp)
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs;
    /// repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i32, R)>>(terms: I) -> Self {
        let mut v: Vec<(i32, R)> = terms.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, R)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out }
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> &[(i32, R)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff_at(&self, k: i32) -> R {
        match self.terms.binary_search_by_key(&k, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => R::zero(),
        }
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    /// Highest-degree term.
    pub fn leading(&self) -> Option<(i32, &R)> {
        self.terms.last().map(|(e, c)| (*e, c))
    }

    /// The involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        Self { terms: self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms: Vec<_> = self.terms.iter().map(|(e, x)| (*e, x.mul_ref(c))).filter(|(_, x)| !x.is_zero()).collect();
        Self { terms }
    }

    /// True if every exponent is `>= 0`.
    pub fn is_polynomial(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 0)
    }

    /// Keeps only the terms whose exponent satisfies `keep`.
    pub fn filter_exponents(&self, keep: impl Fn(i32) -> bool) -> Self {
        Self { terms: self.terms.iter().filter(|(e, _)| keep(*e)).cloned().collect() }
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> LaurentPoly<S> {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Image under the ring map `v -> x`, coefficients sent through `f`.
    /// `x_inv` must be the inverse of `x` in the target ring.
    pub fn evaluate<K: Ring>(&self, x: &K, x_inv: &K, f: impl Fn(&R) -> K) -> K {
        let mut acc = K::zero();
        for (e, c) in &self.terms {
            let base = if *e >= 0 { x } else { x_inv };
            let mut p = K::one();
            for _ in 0..e.unsigned_abs() {
                p = p.mul_ref(base);
            }
            acc += f(c).mul_ref(&p);
        }
        acc
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate_other { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { a[i].1.sub_ref(&b[j].1) } else { a[i].1.add_ref(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self { terms: out }
    }

    pub fn mul_poly(&self, other: &Self) -> Self {
        if self.terms.is_empty() || other.terms.is_empty() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return other.scale(c).shift(*e);
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return self.scale(c).shift(*e);
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.max_exp().unwrap() + other.max_exp().unwrap();
        let width = (hi - lo) as usize + 1;
        let mut dense = vec![R::zero(); width];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                dense[(ea + eb - lo) as usize].add_mul(ca, cb);
            }
        }
        let terms =
            dense.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (lo + k as i32, c)).collect();
        Self { terms }
    }
}

impl<R: Ring> Zero for LaurentPoly<R> {
    fn zero() -> Self {
        Self { terms: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Ring> Default for LaurentPoly<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Ring> One for LaurentPoly<R> {
    fn one() -> Self {
        Self::constant(R::one())
    }
}

impl<R: Ring> Add for LaurentPoly<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.merge(&rhs, false)
    }
}

impl<R: Ring> Sub for LaurentPoly<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.merge(&rhs, true)
    }
}

impl<R: Ring> Mul for LaurentPoly<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_poly(&rhs)
    }
}

impl<R: Ring> Neg for LaurentPoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl<R: Ring> AddAssign for LaurentPoly<R> {
    fn add_assign(&mut self, rhs: Self) {
        if rhs.is_zero() {
            return;
        }
        *self = self.merge(&rhs, false);
    }
}

impl<R: Ring> SubAssign for LaurentPoly<R> {
    fn sub_assign(&mut self, rhs: Self) {
        if rhs.is_zero() {
            return;
        }
        *self = self.merge(&rhs, true);
    }
}

impl<R: Ring> Ring for LaurentPoly<R> {
    fn add_ref(&self, other: &Self) -> Self {
        self.merge(other, false)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.merge(other, true)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul_poly(other)
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let p = a.mul_poly(b);
        *self = self.merge(&p, false);
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(R::from_i64(n))
    }
}

impl<R: Ring> LaurentPoly<R> {
    fn render(&self, f: &mut fmt::Formatter<'_>, show: impl Fn(&R) -> String) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest power first.
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let s = show(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = mag == "1";
            match *e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "v")?,
                1 => write!(f, "{mag}v")?,
                _ if unit => write!(f, "v^{e}")?,
                _ => write!(f, "{mag}v^{e}")?,
            }
        }
        Ok(())
    }
}

impl<R: Ring + fmt::Display> fmt::Display for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, |c| c.to_string())
    }
}

impl<R: Ring> fmt::Debug for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, |c| format!("{c:?}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type P = LaurentPoly<BigInt>;

    fn p(terms: &[(i32, i64)]) -> P {
        P::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn square_of_v_plus_inverse() {
        let x = p(&[(1, 1), (-1, 1)]);
        assert_eq!(x.mul_ref(&x), p(&[(2, 1), (0, 2), (-2, 1)]));
    }

    #[test]
    fn product_with_zero() {
        let x = p(&[(3, 4), (-2, -1)]);
        assert!(x.mul_ref(&P::zero()).is_zero());
        assert!(P::zero().mul_ref(&x).is_zero());
    }

    #[test]
    fn quadratic_factor_times_inverse_power() {
        // (v^2 - v^-2) v^-2 = 1 - v^-4
        let x = p(&[(2, 1), (-2, -1)]);
        assert_eq!(x.mul_ref(&P::v_pow(-2)), p(&[(0, 1), (-4, -1)]));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(p(&[(2, 1), (-1, 3)]).bar(), p(&[(-2, 1), (1, 3)]));
        assert_eq!(p(&[(0, 5)]).bar(), p(&[(0, 5)]));
        let sym = p(&[(1, 1), (-1, 1)]);
        assert_eq!(sym.bar(), sym);
    }

    #[test]
    fn coefficient_extraction() {
        assert_eq!(p(&[(2, 1), (0, 2), (-2, 1)]).coeff_at(0), BigInt::from(2));
        for k in -3..3 {
            assert_eq!(P::zero().coeff_at(k), BigInt::from(0));
        }
        // shift by a(z) = 1 then read the constant term
        let h = p(&[(-1, 1), (-3, 1)]);
        assert_eq!(h.shift(1).coeff_at(0), BigInt::from(1));
    }

    #[test]
    fn cancellation_leaves_canonical_zero() {
        let x = p(&[(1, 2), (-1, 3)]);
        let d = x.clone() - x;
        assert!(d.is_zero());
        assert_eq!(d, P::zero());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[(1, 1), (0, -2), (-3, 1)]).to_string(), "v - 2 + v^-3");
        assert_eq!(p(&[(-1, -1)]).to_string(), "-v^-1");
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        prop::collection::vec((-4i32..5, -6i64..7), 0..5).prop_map(|ts| p(&ts))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
            prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
            prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
            prop_assert_eq!(a.add_ref(&b).sub_ref(&b), a.clone());
        }

        #[test]
        fn bar_is_multiplicative_involution(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.mul_ref(&b).bar(), a.bar().mul_ref(&b.bar()));
            prop_assert_eq!(a.bar().bar(), a);
        }
    }
}
