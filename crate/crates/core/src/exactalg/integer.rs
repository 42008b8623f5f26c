//! Integer-specific routines: content normalization, fraction-free
//! determinants, lattice bases and prime factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::Matrix;
use crate::error::{Error, Result};

pub type IntMatrix = Matrix<BigInt>;
pub type QMatrix = Matrix<BigRational>;

/// Gcd of all entries (zero for an all-zero slice).
pub fn content(xs: &[BigInt]) -> BigInt {
    xs.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides a nonzero integer matrix by the gcd of its entries.
///
/// Returns the primitive matrix together with the positive divisor.
pub fn gcd_normalize(m: &IntMatrix) -> Result<(IntMatrix, BigInt)> {
    let g = content(m.data());
    if g.is_zero() {
        return Err(Error::Degenerate("gcd normalization of the zero matrix".into()));
    }
    Ok((m.map(|x| x / &g), g))
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn det_int(m: &IntMatrix) -> BigInt {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                let t = a[(p, j)].clone();
                a[(p, j)] = a[(k, j)].clone();
                a[(k, j)] = t;
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = num / &prev;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * a[(n - 1, n - 1)].clone()
}

/// True if every leading principal minor is positive.
pub fn is_positive_definite(m: &IntMatrix) -> bool {
    if !m.is_symmetric() {
        return false;
    }
    (1..=m.rows()).all(|k| {
        let idx: Vec<usize> = (0..k).collect();
        det_int(&m.select(&idx, &idx)).is_positive()
    })
}

pub fn to_rational(m: &IntMatrix) -> QMatrix {
    m.map(|x| BigRational::from_integer(x.clone()))
}

/// Converts a rational matrix with integral entries; `None` otherwise.
pub fn to_integer(m: &QMatrix) -> Option<IntMatrix> {
    if m.data().iter().all(|x| x.is_integer()) {
        Some(m.map(|x| x.to_integer()))
    } else {
        None
    }
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction (sign of the first nonzero entry preserved).
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = content(&ints);
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Row-style Hermite normal form of the lattice spanned by `gens`: returns
/// a basis (rows) of the same Z-lattice in echelon form with positive pivots.
pub fn lattice_basis(gens: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut basis = Vec::new();
    for col in 0..dim {
        // Euclid on the column among the remaining rows.
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            let pv = rows[piv][col].clone();
            for &i in &nz {
                if i == piv {
                    continue;
                }
                let q = rows[i][col].div_floor(&pv);
                let prow = rows[piv].clone();
                for (x, p) in rows[i].iter_mut().zip(&prow) {
                    *x -= &q * p;
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| !rows[i][col].is_zero()) {
            let mut r = rows.swap_remove(i);
            if r[col].is_negative() {
                r.iter_mut().for_each(|x| *x = -x.clone());
            }
            basis.push(r);
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    // Reduce entries above pivots.
    for k in 0..basis.len() {
        let col = basis[k].iter().position(|x| !x.is_zero()).unwrap();
        for i in 0..k {
            let q = basis[i][col].div_floor(&basis[k][col]);
            if !q.is_zero() {
                let prow = basis[k].clone();
                for (x, p) in basis[i].iter_mut().zip(&prow) {
                    *x -= &q * p;
                }
            }
        }
    }
    basis
}

/// Prime factors (ascending, without multiplicity) of `|n|`, by trial
/// division. Panics on zero.
pub fn prime_factors(n: &BigInt) -> Vec<u64> {
    assert!(!n.is_zero(), "prime factors of zero");
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while BigInt::from(p) * BigInt::from(p) <= n {
        let bp = BigInt::from(p);
        if (&n % &bp).is_zero() {
            out.push(p);
            while (&n % &bp).is_zero() {
                n /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push(n.to_u64().expect("prime factor beyond trial-division range"));
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut ds = vec![BigInt::one()];
    let mut m = n.clone();
    for p in prime_factors(&n) {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        let cur = ds.clone();
        let mut pk = BigInt::one();
        for _ in 0..e {
            pk *= &bp;
            ds.extend(cur.iter().map(|d| d * &pk));
        }
    }
    ds.sort();
    ds
}

/// Distinct rational roots of a polynomial given by ascending rational
/// coefficients.
pub fn rational_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    let den = coeffs.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let mut ints: Vec<BigInt> =
        coeffs.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    while ints.last().is_some_and(|x| x.is_zero()) {
        ints.pop();
    }
    let mut roots = Vec::new();
    if ints.len() <= 1 {
        return roots;
    }
    if ints[0].is_zero() {
        roots.push(BigRational::zero());
        let k = ints.iter().position(|x| !x.is_zero()).unwrap();
        ints.drain(..k);
    }
    if ints.len() <= 1 {
        return roots;
    }
    let eval = |x: &BigRational| {
        ints.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    };
    let lead = ints.last().unwrap().clone();
    for p in divisors(&ints[0]) {
        for q in divisors(&lead) {
            for s in [BigInt::one(), -BigInt::one()] {
                let cand = BigRational::new(&s * &p, q.clone());
                if eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}
