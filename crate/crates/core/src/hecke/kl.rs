//! The Kazhdan-Lusztig basis `c_w = T_w + sum_{y<w} p_{y,w} T_y`.
//!
//! `c_w` is built from `c_s c_{w'}` with `w = s w'` (`s` the first letter of
//! the shortlex word) by subtracting bar-invariant multiples of lower `c_y`
//! until every lower coefficient lies in `v^-1 Z[v^-1]`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::algebra::{HeckeAlgebra, HeckeElement};
use crate::coxeter::Elem;
use crate::error::{Error, Result};
use crate::exactalg::Ring;
use crate::Poly;

/// How `c_w` was obtained: `c_w = c_s c_prev - sum m_z c_z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KlStep {
    pub s: usize,
    pub prev: Elem,
    pub corrections: Vec<(Elem, Poly)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KlTable {
    // column w: (y, p_{y,w}) sorted by y, including (w, 1)
    columns: Vec<Vec<(Elem, Poly)>>,
    // steps[0] is unused
    steps: Vec<KlStep>,
}

/// Bar-invariant polynomial agreeing with `a` in degrees `>= 0`.
fn symmetric_part(a: &Poly) -> Poly {
    let mut terms = Vec::new();
    for (e, c) in a.terms() {
        if *e > 0 {
            terms.push((*e, c.clone()));
            terms.push((-*e, c.clone()));
        } else if *e == 0 {
            terms.push((0, c.clone()));
        }
    }
    Poly::from_terms(terms)
}

impl KlTable {
    pub fn build(alg: &HeckeAlgebra) -> Self {
        let g = alg.group();
        let n = g.order();
        let mut columns: Vec<Vec<(Elem, Poly)>> = Vec::with_capacity(n);
        let mut steps = Vec::with_capacity(n);
        columns.push(vec![(0, Poly::one())]);
        steps.push(KlStep { s: 0, prev: 0, corrections: Vec::new() });
        for w in 1..n {
            let s = g.word(w)[0] as usize;
            let prev = g.left_mul(s, w);
            let c_prev = Self::element_from(n, &columns[prev]);
            let mut h = alg.left_t(s, &c_prev);
            h.add_scaled(&Poly::v_pow(-alg.weights().of_generator(s)), &c_prev);
            let mut corrections = Vec::new();
            for y in (0..w).rev() {
                let m = symmetric_part(h.coeff(y));
                if m.is_zero() {
                    continue;
                }
                for (x, p) in &columns[y] {
                    let d = m.mul_ref(p);
                    h.add_term(*x, &-d);
                }
                corrections.push((y, m));
            }
            corrections.reverse();
            columns.push(h.support().map(|(y, p)| (y, p.clone())).collect());
            steps.push(KlStep { s, prev, corrections });
        }
        Self { columns, steps }
    }

    fn element_from(n: usize, column: &[(Elem, Poly)]) -> HeckeElement {
        let mut h = HeckeElement::zero(n);
        for (y, p) in column {
            h.add_term(*y, p);
        }
        h
    }

    pub fn size(&self) -> usize {
        self.columns.len()
    }

    /// `p_{y,w}`; zero unless `y <= w`.
    pub fn p(&self, y: Elem, w: Elem) -> Poly {
        let col = &self.columns[w];
        match col.binary_search_by_key(&y, |t| t.0) {
            Ok(i) => col[i].1.clone(),
            Err(_) => Poly::zero(),
        }
    }

    pub fn column(&self, w: Elem) -> &[(Elem, Poly)] {
        &self.columns[w]
    }

    pub fn step(&self, w: Elem) -> &KlStep {
        &self.steps[w]
    }

    /// `c_w` in the T-basis.
    pub fn c(&self, w: Elem) -> HeckeElement {
        Self::element_from(self.size(), &self.columns[w])
    }

    /// All `c_w^dagger`, obtained by applying the dagger involution to the
    /// recursion: `c_s^dagger = -T_s + v^L(s)`.
    pub fn dagger_basis(&self, alg: &HeckeAlgebra) -> Vec<HeckeElement> {
        let n = self.size();
        let mut out: Vec<HeckeElement> = Vec::with_capacity(n);
        out.push(alg.one());
        for w in 1..n {
            let st = &self.steps[w];
            let prev = &out[st.prev];
            let mut h = alg.left_t(st.s, prev);
            h = h.scale(&-Poly::one());
            h.add_scaled(&alg.v_l(st.s), prev);
            for (z, m) in &st.corrections {
                h.add_scaled(&-m.clone(), &out[*z]);
            }
            out.push(h);
        }
        out
    }

    /// Coordinates of `h` in the c-basis (unitriangular back-substitution).
    pub fn to_c_basis(&self, h: &HeckeElement) -> Vec<Poly> {
        let n = self.size();
        let mut rest = h.coeffs().to_vec();
        let mut out = vec![Poly::zero(); n];
        for w in (0..n).rev() {
            if rest[w].is_zero() {
                continue;
            }
            let a = std::mem::take(&mut rest[w]);
            for (y, p) in &self.columns[w] {
                if *y != w {
                    rest[*y] -= a.mul_ref(p);
                }
            }
            out[w] = a;
        }
        out
    }

    /// Coordinates of `h` in the basis `{c_w^dagger}`, where
    /// `c_w^dagger = (-1)^l(w) T_w + lower terms`.
    pub fn to_dagger_basis(&self, alg: &HeckeAlgebra, dagger: &[HeckeElement], h: &HeckeElement) -> Vec<Poly> {
        let g = alg.group();
        let n = self.size();
        let mut rest = h.clone();
        let mut out = vec![Poly::zero(); n];
        for w in (0..n).rev() {
            if rest.coeff(w).is_zero() {
                continue;
            }
            let mut a = rest.coeff(w).clone();
            if g.length(w) % 2 == 1 {
                a = -a;
            }
            rest.add_scaled(&-a.clone(), &dagger[w]);
            out[w] = a;
        }
        out
    }

    /// Checks triangularity, the degree condition, Bruhat support and
    /// bar-invariance (the last only when `|W| <= bar_limit`).
    pub fn validate(&self, alg: &HeckeAlgebra, bar_limit: usize) -> Result<()> {
        let g = alg.group();
        for w in g.elements() {
            for (y, p) in &self.columns[w] {
                if *y == w {
                    if !p.is_one() {
                        return Err(Error::property("KL normalization", format!("p(w,w) != 1 at {}", g.name(w))));
                    }
                    continue;
                }
                if p.max_exp().is_some_and(|e| e >= 0) {
                    return Err(Error::property("KL degree bound", format!("p({},{}) = {p:?}", g.name(*y), g.name(w))));
                }
                if !g.bruhat_leq(*y, w) {
                    return Err(Error::property("KL Bruhat support", format!("p({},{}) != 0", g.name(*y), g.name(w))));
                }
            }
        }
        if g.order() <= bar_limit {
            for w in g.elements() {
                let c = self.c(w);
                if alg.bar(&c) != c {
                    return Err(Error::property("bar invariance", format!("c_{}", g.name(w))));
                }
            }
        }
        Ok(())
    }
}
