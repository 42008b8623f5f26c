//! Exact linear algebra over a field: echelon forms, kernels, determinants,
//! inverses and minimal polynomials.

use super::matrix::Matrix;
use super::scalar::Field;

/// Reduced row echelon form and the pivot columns.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let t = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = t;
            }
        }
        let inv = a[(r, c)].inv().expect("nonzero pivot");
        for j in c..cols {
            a[(r, j)] = a[(r, j)].mul_ref(&inv);
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                let t = f.mul_ref(&a[(r, j)]);
                a[(i, j)] -= t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn nullspace<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let (r, pivots) = rref(m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![F::zero(); cols];
            x[f] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = -r[(row, f)].clone();
            }
            x
        })
        .collect()
}

/// Basis (as rows in echelon form) of the span of `vectors`.
pub fn span_basis<F: Field>(vectors: &[Vec<F>], dim: usize) -> Vec<Vec<F>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.to_vec());
    debug_assert_eq!(m.cols(), dim);
    let (r, pivots) = rref(&m);
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

pub fn det<F: Field>(m: &Matrix<F>) -> F {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut d = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return F::zero();
        };
        if p != c {
            for j in 0..n {
                let t = a[(p, j)].clone();
                a[(p, j)] = a[(c, j)].clone();
                a[(c, j)] = t;
            }
            d = -d;
        }
        let piv = a[(c, c)].clone();
        d = d.mul_ref(&piv);
        let inv = piv.inv().expect("nonzero pivot");
        for i in c + 1..n {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].mul_ref(&inv);
            for j in c..n {
                let t = f.mul_ref(&a[(c, j)]);
                a[(i, j)] -= t;
            }
        }
    }
    d
}

/// Exact inverse, `None` if singular.
pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    assert!(m.is_square());
    let n = m.rows();
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            F::one()
        } else {
            F::zero()
        }
    });
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
}

/// Solves `x * a = b` for the matrix unknown `x` when `a` is square and
/// invertible.
pub fn solve_right<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Option<Matrix<F>> {
    inverse(a).map(|ai| b.mul(&ai))
}

/// Minimal polynomial of a square matrix, monic, coefficients in ascending
/// degree order.
pub fn minimal_polynomial<F: Field>(m: &Matrix<F>) -> Vec<F> {
    assert!(m.is_square());
    let n = m.rows();
    let mut powers: Vec<Vec<F>> = vec![Matrix::<F>::identity(n).data().to_vec()];
    let mut cur = Matrix::<F>::identity(n);
    loop {
        cur = cur.mul(m);
        let target = cur.data().to_vec();
        // Solve sum c_i powers[i] = target.
        let k = powers.len();
        let sys = Matrix::from_fn(n * n, k + 1, |r, c| if c < k { powers[c][r].clone() } else { target[r].clone() });
        let (red, pivots) = rref(&sys);
        if !pivots.contains(&k) {
            // Consistent: target lies in the span of lower powers.
            let mut coeffs = vec![F::zero(); k + 1];
            for (row, &pc) in pivots.iter().enumerate() {
                coeffs[pc] = -red[(row, k)].clone();
            }
            coeffs[k] = F::one();
            return coeffs;
        }
        powers.push(target);
    }
}

/// Evaluates a polynomial (ascending coefficients) at a square matrix.
pub fn poly_at_matrix<F: Field>(coeffs: &[F], m: &Matrix<F>) -> Matrix<F> {
    let n = m.rows();
    let mut acc = Matrix::zeros(n, n);
    for c in coeffs.iter().rev() {
        acc = acc.mul(m);
        for i in 0..n {
            acc[(i, i)] += c.clone();
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn qm(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn determinant_and_inverse() {
        let m = qm(&[&[2, 1], &[7, 4]]);
        assert_eq!(det(&m), q(1));
        let inv = inverse(&m).unwrap();
        assert!(inv.mul(&m).is_identity());
        assert!(inverse(&qm(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&m), 1);
        let ker = nullspace(&m);
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn minimal_polynomial_of_projection() {
        let m = qm(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 1]]);
        // x^2 - x
        assert_eq!(minimal_polynomial(&m), vec![q(0), q(-1), q(1)]);
        assert!(poly_at_matrix(&minimal_polynomial(&m), &m).is_zero());
    }
}
