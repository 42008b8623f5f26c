//! Structure constants `c_x c_y = sum_z h_{x,y,z} c_z`.
//!
//! For fixed `y` the products `c_x c_y` are computed in c-coordinates by
//! induction on `x`, replaying the recursion `c_x = c_s c_{x'} - sum m_z c_z`
//! and using a precomputed table for left multiplication by each `c_s`.

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::algebra::HeckeAlgebra;
use super::kl::KlTable;
use crate::coxeter::Elem;
use crate::exactalg::Ring;
use crate::Poly;

type Sparse = Vec<(Elem, Poly)>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HTable {
    n: usize,
    // entry x * n + y, sorted by z
    entries: Vec<Sparse>,
}

fn sparse_of(dense: Vec<Poly>) -> Sparse {
    dense.into_iter().enumerate().filter(|(_, p)| !p.is_zero()).collect()
}

/// `c_s c_z` in c-coordinates, for every generator `s` and element `z`.
pub fn left_c_table(alg: &HeckeAlgebra, kl: &KlTable) -> Vec<Vec<Sparse>> {
    let g = alg.group();
    (0..g.rank())
        .map(|s| {
            let vl = alg.v_l(s);
            let cs = kl.c(g.generator(s));
            let sum = vl.add_ref(&vl.bar());
            g.elements()
                .map(|z| {
                    if g.is_left_descent(s, z) {
                        vec![(z, sum.clone())]
                    } else {
                        sparse_of(kl.to_c_basis(&alg.multiply(&cs, &kl.c(z))))
                    }
                })
                .collect()
        })
        .collect()
}

impl HTable {
    pub fn build(alg: &HeckeAlgebra, kl: &KlTable) -> Self {
        let n = alg.size();
        let left = left_c_table(alg, kl);
        let columns: Vec<Vec<Sparse>> = (0..n).into_par_iter().map(|y| Self::column(n, kl, &left, y)).collect();
        let mut entries = vec![Vec::new(); n * n];
        for (y, col) in columns.into_iter().enumerate() {
            for (x, e) in col.into_iter().enumerate() {
                entries[x * n + y] = e;
            }
        }
        Self { n, entries }
    }

    // c_x c_y for all x
    fn column(n: usize, kl: &KlTable, left: &[Vec<Sparse>], y: Elem) -> Vec<Sparse> {
        let mut dense: Vec<Vec<Poly>> = Vec::with_capacity(n);
        let mut e = vec![Poly::zero(); n];
        e[y] = Poly::from_i64(1);
        dense.push(e);
        for x in 1..n {
            let st = kl.step(x);
            let mut acc = vec![Poly::zero(); n];
            for (z, a) in dense[st.prev].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (u, b) in &left[st.s][z] {
                    acc[*u].add_mul(a, b);
                }
            }
            for (z, m) in &st.corrections {
                for (u, b) in dense[*z].iter().enumerate() {
                    if !b.is_zero() {
                        acc[u] -= m.mul_ref(b);
                    }
                }
            }
            dense.push(acc);
        }
        dense.into_iter().map(sparse_of).collect()
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Nonzero `h_{x,y,z}` as `(z, h)` pairs sorted by `z`.
    pub fn row(&self, x: Elem, y: Elem) -> &[(Elem, Poly)] {
        &self.entries[x * self.n + y]
    }

    pub fn get(&self, x: Elem, y: Elem, z: Elem) -> Option<&Poly> {
        let r = self.row(x, y);
        r.binary_search_by_key(&z, |t| t.0).ok().map(|i| &r[i].1)
    }

    pub fn h(&self, x: Elem, y: Elem, z: Elem) -> Poly {
        self.get(x, y, z).cloned().unwrap_or_else(Poly::zero)
    }

    /// All `(x, y, z, h)` with `h != 0`.
    pub fn iter(&self) -> impl Iterator<Item = (Elem, Elem, Elem, &Poly)> {
        let n = self.n;
        self.entries.iter().enumerate().flat_map(move |(i, r)| r.iter().map(move |(z, p)| (i / n, i % n, *z, p)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::algebra;

    #[test]
    fn generator_squares() {
        let h = algebra("B2", "2,1");
        let kl = KlTable::build(&h);
        let t = HTable::build(&h, &kl);
        for s in 0..2 {
            let w = h.group().generator(s);
            let l = h.weights().of_generator(s);
            assert_eq!(t.row(w, w), &[(w, Poly::v_pow(l) + Poly::v_pow(-l))]);
        }
        for y in h.group().elements() {
            assert_eq!(t.row(0, y), &[(y, Poly::from_i64(1))]);
        }
    }

    // Oracle: expand c_x c_y directly in the T-basis.
    #[test]
    fn reproduces_products() {
        for (ty, wts) in [("A3", "1,1,1"), ("B2", "2,1"), ("G2", "1,1"), ("G2", "3,1")] {
            let h = algebra(ty, wts);
            let kl = KlTable::build(&h);
            let t = HTable::build(&h, &kl);
            let g = h.group();
            for x in g.elements() {
                for y in g.elements() {
                    let direct = h.multiply(&kl.c(x), &kl.c(y));
                    let mut rebuilt = h.zero();
                    for (z, p) in t.row(x, y) {
                        rebuilt.add_scaled(p, &kl.c(*z));
                    }
                    assert_eq!(rebuilt, direct, "{ty} {wts} x={x} y={y}");
                }
            }
        }
    }

    #[test]
    fn associativity_in_c_coordinates() {
        let h = algebra("A3", "1,1,1");
        let kl = KlTable::build(&h);
        let t = HTable::build(&h, &kl);
        let n = h.size();
        let prod = |a: &[Poly], b: &[Poly]| -> Vec<Poly> {
            let mut out = vec![Poly::zero(); n];
            for (x, p) in a.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                for (y, q) in b.iter().enumerate().filter(|(_, q)| !q.is_zero()) {
                    let pq = p.mul_ref(q);
                    for (z, r) in t.row(x, y) {
                        out[*z].add_mul(&pq, r);
                    }
                }
            }
            out
        };
        let basis = |w: usize| -> Vec<Poly> {
            let mut e = vec![Poly::zero(); n];
            e[w] = Poly::from_i64(1);
            e
        };
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let l = prod(&prod(&basis(x), &basis(y)), &basis(z));
                    let r = prod(&basis(x), &prod(&basis(y), &basis(z)));
                    assert_eq!(l, r);
                }
            }
        }
    }
}
