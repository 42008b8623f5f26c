//! Finite prime fields and cyclotomic number fields used as targets of
//! specializations.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::linalg;
use super::matrix::Matrix;
use super::scalar::{Field, Ring};

/// The prime field `F_P`. `P` must be prime; see [`is_prime`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(x: u64) -> Self {
        Self(x % P)
    }

    pub fn from_bigint(x: &BigInt) -> Self {
        let r = x.mod_floor(&BigInt::from(P));
        Self(r.to_u64().unwrap())
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Self(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Self(1 % P)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self(((self.0 as u128 + o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self(((self.0 as u128 + P as u128 - o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Self((P - self.0) % P)
    }
}

impl<const P: u64> AddAssign for Fp<P> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<const P: u64> SubAssign for Fp<P> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<const P: u64> Ring for Fp<P> {
    fn add_ref(&self, o: &Self) -> Self {
        *self + *o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        *self - *o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        *self * *o
    }
    fn from_i64(n: i64) -> Self {
        Self(n.rem_euclid(P as i64) as u64)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(mod {})", self.0, P)
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Integer coefficients (ascending) of the cyclotomic polynomial `Phi_e`.
pub fn cyclotomic_polynomial(e: u32) -> Vec<BigInt> {
    assert!(e >= 1);
    // x^e - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![BigInt::zero(); e as usize + 1];
    num[0] = -BigInt::one();
    num[e as usize] = BigInt::one();
    for d in 1..e {
        if e.is_multiple_of(d) {
            num = poly_exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dl = den.len() - 1;
    let lead = &den[dl];
    let mut q = vec![BigInt::zero(); num.len() - dl];
    for k in (0..q.len()).rev() {
        let c = &rem[k + dl] / lead;
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    q
}

fn cyclotomic_modulus(e: u32) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard.entry(e).or_insert_with(|| Arc::new(cyclotomic_polynomial(e))).clone()
}

/// The cyclotomic field `Q(zeta_E) = Q[x]/Phi_E(x)`, elements stored as
/// reduced coefficient vectors of length `phi(E)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic<const E: u32> {
    coeffs: Vec<BigRational>,
}

impl<const E: u32> Cyclotomic<E> {
    pub fn degree() -> usize {
        cyclotomic_modulus(E).len() - 1
    }

    /// The generator `zeta = x`.
    pub fn zeta() -> Self {
        Self::reduce(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::reduce(vec![q])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn reduce(mut c: Vec<BigRational>) -> Self {
        let m = cyclotomic_modulus(E);
        let n = m.len() - 1;
        // Phi is monic.
        while c.len() > n {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let k = c.len() - n;
            for (i, mi) in m.iter().take(n).enumerate() {
                c[k + i] -= &top * BigRational::from_integer(mi.clone());
            }
        }
        c.resize(n, BigRational::zero());
        Self { coeffs: c }
    }

    fn mul_matrix(&self) -> Matrix<BigRational> {
        let n = Self::degree();
        let mut cols = Vec::with_capacity(n);
        let mut basis = vec![BigRational::zero(); n];
        for j in 0..n {
            basis.iter_mut().for_each(|x| *x = BigRational::zero());
            basis[j] = BigRational::one();
            let prod = self.mul_ref(&Self { coeffs: basis.clone() });
            cols.push(prod.coeffs);
        }
        Matrix::from_fn(n, n, |i, j| cols[j][i].clone())
    }
}

impl<const E: u32> Zero for Cyclotomic<E> {
    fn zero() -> Self {
        Self { coeffs: vec![BigRational::zero(); Self::degree()] }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|x| x.is_zero())
    }
}

impl<const E: u32> One for Cyclotomic<E> {
    fn one() -> Self {
        Self::from_rational(BigRational::one())
    }
}

impl<const E: u32> Add for Cyclotomic<E> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.add_ref(&o)
    }
}

impl<const E: u32> Sub for Cyclotomic<E> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.sub_ref(&o)
    }
}

impl<const E: u32> Mul for Cyclotomic<E> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl<const E: u32> Neg for Cyclotomic<E> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { coeffs: self.coeffs.into_iter().map(|x| -x).collect() }
    }
}

impl<const E: u32> AddAssign for Cyclotomic<E> {
    fn add_assign(&mut self, o: Self) {
        for (a, b) in self.coeffs.iter_mut().zip(o.coeffs) {
            *a += b;
        }
    }
}

impl<const E: u32> SubAssign for Cyclotomic<E> {
    fn sub_assign(&mut self, o: Self) {
        for (a, b) in self.coeffs.iter_mut().zip(o.coeffs) {
            *a -= b;
        }
    }
}

impl<const E: u32> Ring for Cyclotomic<E> {
    fn add_ref(&self, o: &Self) -> Self {
        Self { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
    fn sub_ref(&self, o: &Self) -> Self {
        Self { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
    fn mul_ref(&self, o: &Self) -> Self {
        let n = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * n.max(1) - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::reduce(prod)
    }
    fn from_i64(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }
}

impl<const E: u32> Field for Cyclotomic<E> {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let m = self.mul_matrix();
        let inv = linalg::inverse(&m)?;
        Some(Self { coeffs: inv.column(0) })
    }
}

impl<const E: u32> fmt::Display for Cyclotomic<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "z^{k}")?,
                _ => write!(f, "{mag}*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<const E: u32> fmt::Debug for Cyclotomic<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in Q(zeta_{E})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        type F = Fp<7>;
        assert_eq!(F::new(3) * F::new(5), F::new(1));
        assert_eq!(F::new(3).inv().unwrap(), F::new(5));
        assert_eq!(-F::new(2), F::new(5));
        assert_eq!(F::from_i64(-1), F::new(6));
        assert_eq!(F::from_bigint(&BigInt::from(-8)), F::new(6));
        assert!(F::zero().inv().is_none());
    }

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(97));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(0));
    }

    #[test]
    fn cyclotomic_polynomials() {
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
    }

    #[test]
    fn cyclotomic_field_ops() {
        type K = Cyclotomic<3>;
        let z = K::zeta();
        // z^2 + z + 1 = 0
        let s = z.mul_ref(&z).add_ref(&z).add_ref(&K::one());
        assert!(s.is_zero());
        let zi = z.inv().unwrap();
        assert_eq!(zi.mul_ref(&z), K::one());
        assert_eq!(zi, z.mul_ref(&z));
    }
}
