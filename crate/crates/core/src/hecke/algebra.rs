//! Arithmetic in the T-basis.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coxeter::{CoxeterGroup, Elem, WeightFunction};
use crate::exactalg::Ring;
use crate::Poly;

/// An element `sum_w a_w T_w`, stored densely by element index. Absent terms
/// are zero polynomials, which do not allocate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeckeElement {
    coeffs: Vec<Poly>,
}

impl HeckeElement {
    pub fn zero(size: usize) -> Self {
        Self { coeffs: vec![Poly::zero(); size] }
    }

    pub fn basis(size: usize, w: Elem) -> Self {
        let mut h = Self::zero(size);
        h.coeffs[w] = Poly::one();
        h
    }

    pub fn from_coeffs(coeffs: Vec<Poly>) -> Self {
        Self { coeffs }
    }

    pub fn coeff(&self, w: Elem) -> &Poly {
        &self.coeffs[w]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Poly> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Nonzero terms in increasing element order.
    pub fn support(&self) -> impl Iterator<Item = (Elem, &Poly)> {
        self.coeffs.iter().enumerate().filter(|(_, p)| !p.is_zero())
    }

    pub fn add_scaled(&mut self, c: &Poly, other: &HeckeElement) {
        for (w, p) in other.support() {
            self.coeffs[w].add_mul(c, p);
        }
    }

    pub fn add_assign(&mut self, other: &HeckeElement) {
        for (w, p) in other.support() {
            self.coeffs[w] += p.clone();
        }
    }

    pub fn sub_assign(&mut self, other: &HeckeElement) {
        for (w, p) in other.support() {
            self.coeffs[w] -= p.clone();
        }
    }

    pub fn scale(&self, c: &Poly) -> Self {
        Self { coeffs: self.coeffs.iter().map(|p| p.mul_ref(c)).collect() }
    }

    pub fn add_term(&mut self, w: Elem, c: &Poly) {
        self.coeffs[w] += c.clone();
    }
}

/// The generic Iwahori-Hecke algebra of `(W, L)` over `Z[v, v^-1]`, with
/// `T_s^2 = T_1 + (v^L(s) - v^-L(s)) T_s`.
#[derive(Debug, Clone)]
pub struct HeckeAlgebra {
    group: CoxeterGroup,
    weights: WeightFunction,
    // v^L(s) - v^-L(s)
    xi: Vec<Poly>,
}

impl HeckeAlgebra {
    pub fn new(group: CoxeterGroup, weights: WeightFunction) -> Self {
        let xi = weights.values().iter().map(|&l| Poly::v_pow(l) - Poly::v_pow(-l)).collect();
        Self { group, weights, xi }
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    pub fn weights(&self) -> &WeightFunction {
        &self.weights
    }

    pub fn size(&self) -> usize {
        self.group.order()
    }

    pub fn zero(&self) -> HeckeElement {
        HeckeElement::zero(self.size())
    }

    pub fn one(&self) -> HeckeElement {
        self.t(0)
    }

    pub fn t(&self, w: Elem) -> HeckeElement {
        HeckeElement::basis(self.size(), w)
    }

    /// `v^L(s)`.
    pub fn v_l(&self, s: usize) -> Poly {
        Poly::v_pow(self.weights.of_generator(s))
    }

    /// `T_s * h`.
    pub fn left_t(&self, s: usize, h: &HeckeElement) -> HeckeElement {
        let g = &self.group;
        let mut out = self.zero();
        for (w, a) in h.support() {
            let sw = g.left_mul(s, w);
            out.coeffs[sw] += a.clone();
            if g.length(sw) < g.length(w) {
                out.coeffs[w].add_mul(a, &self.xi[s]);
            }
        }
        out
    }

    /// `h * T_s`.
    pub fn right_t(&self, h: &HeckeElement, s: usize) -> HeckeElement {
        let g = &self.group;
        let mut out = self.zero();
        for (w, a) in h.support() {
            let ws = g.right_mul(w, s);
            out.coeffs[ws] += a.clone();
            if g.length(ws) < g.length(w) {
                out.coeffs[w].add_mul(a, &self.xi[s]);
            }
        }
        out
    }

    /// `T_s^-1 * h`, using `T_s^-1 = T_s - (v^L(s) - v^-L(s))`.
    pub fn left_t_inv(&self, s: usize, h: &HeckeElement) -> HeckeElement {
        let mut out = self.left_t(s, h);
        for (w, a) in h.support() {
            let d = a.mul_ref(&self.xi[s]);
            out.coeffs[w] -= d;
        }
        out
    }

    /// `T_w * h`.
    pub fn t_times(&self, w: Elem, h: &HeckeElement) -> HeckeElement {
        self.group.word(w).iter().rev().fold(h.clone(), |acc, &s| self.left_t(s as usize, &acc))
    }

    pub fn multiply(&self, a: &HeckeElement, b: &HeckeElement) -> HeckeElement {
        let mut out = self.zero();
        for (x, c) in a.support() {
            out.add_scaled(c, &self.t_times(x, b));
        }
        out
    }

    /// `T_{w^-1}^-1`, the image of `T_w` under the bar involution.
    pub fn t_inv_of_inverse(&self, w: Elem) -> HeckeElement {
        self.group.word(w).iter().rev().fold(self.one(), |acc, &s| self.left_t_inv(s as usize, &acc))
    }

    /// The ring involution `T_w -> T_{w^-1}^-1`, `v -> v^-1`.
    pub fn bar(&self, h: &HeckeElement) -> HeckeElement {
        let mut out = self.zero();
        for (w, a) in h.support() {
            out.add_scaled(&a.bar(), &self.t_inv_of_inverse(w));
        }
        out
    }

    /// The algebra involution `T_w -> (-1)^l(w) T_{w^-1}^-1`; coefficients
    /// are left alone.
    pub fn dagger(&self, h: &HeckeElement) -> HeckeElement {
        let mut out = self.zero();
        for (w, a) in h.support() {
            let c = if self.group.length(w).is_multiple_of(2) { a.clone() } else { -a.clone() };
            out.add_scaled(&c, &self.t_inv_of_inverse(w));
        }
        out
    }

    /// The anti-involution `T_w -> T_{w^-1}`.
    pub fn star(&self, h: &HeckeElement) -> HeckeElement {
        let mut out = self.zero();
        for (w, a) in h.support() {
            out.coeffs[self.group.inverse(w)] = a.clone();
        }
        out
    }

    /// Coefficient of `T_1`, the standard trace form.
    pub fn tau(&self, h: &HeckeElement) -> Poly {
        h.coeff(0).clone()
    }

    pub fn from_int(&self, n: i64) -> HeckeElement {
        let mut h = self.zero();
        h.coeffs[0] = Poly::constant(BigInt::from(n));
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::algebra;

    fn v(k: i32) -> Poly {
        Poly::v_pow(k)
    }

    #[test]
    fn quadratic_relation() {
        let h = algebra("B2", "2,1");
        for s in 0..2 {
            let ts = h.t(h.group().generator(s));
            let sq = h.multiply(&ts, &ts);
            let l = h.weights().of_generator(s);
            let mut expected = h.one();
            expected.add_scaled(&(v(l) - v(-l)), &ts);
            assert_eq!(sq, expected);
        }
    }

    #[test]
    fn length_additive_products() {
        let h = algebra("A2", "1,1");
        let g = h.group();
        let s1 = g.generator(0);
        let s2s1 = g.parse_element("s2s1").unwrap();
        assert_eq!(h.multiply(&h.t(s1), &h.t(s2s1)), h.t(g.longest()));
        for w in g.elements() {
            assert_eq!(h.multiply(&h.one(), &h.t(w)), h.t(w));
        }
    }

    #[test]
    fn left_and_right_agree_on_generators() {
        let h = algebra("G2", "1,1");
        for w in h.group().elements() {
            for s in 0..2 {
                let gs = h.t(h.group().generator(s));
                assert_eq!(h.left_t(s, &h.t(w)), h.multiply(&gs, &h.t(w)));
                assert_eq!(h.right_t(&h.t(w), s), h.multiply(&h.t(w), &gs));
            }
        }
    }

    #[test]
    fn inverse_of_generator() {
        let h = algebra("B2", "2,1");
        for s in 0..2 {
            let ts = h.t(h.group().generator(s));
            let inv = h.left_t_inv(s, &h.one());
            assert_eq!(h.multiply(&ts, &inv), h.one());
        }
    }

    #[test]
    fn bar_is_a_ring_involution() {
        let h = algebra("B2", "2,1");
        let g = h.group();
        let elems: Vec<HeckeElement> = g
            .elements()
            .map(|w| {
                let mut e = h.t(w);
                e.add_scaled(&(v(1) + Poly::from_i64(3)), &h.t(g.inverse(w)));
                e
            })
            .collect();
        for a in &elems {
            assert_eq!(h.bar(&h.bar(a)), *a);
            for b in &elems {
                assert_eq!(h.bar(&h.multiply(a, b)), h.multiply(&h.bar(a), &h.bar(b)));
            }
        }
    }

    #[test]
    fn dagger_is_an_algebra_involution_commuting_with_star() {
        let h = algebra("B2", "1,1");
        let g = h.group();
        for x in g.elements() {
            let tx = h.t(x);
            assert_eq!(h.dagger(&h.dagger(&tx)), tx);
            assert_eq!(h.star(&h.dagger(&tx)), h.dagger(&h.star(&tx)));
            for y in g.elements() {
                let ty = h.t(y);
                let prod = h.multiply(&tx, &ty);
                assert_eq!(h.dagger(&prod), h.multiply(&h.dagger(&tx), &h.dagger(&ty)));
                assert_eq!(h.star(&prod), h.multiply(&h.star(&ty), &h.star(&tx)));
            }
        }
    }

    #[test]
    fn star_examples() {
        let h = algebra("B2", "1,1");
        let g = h.group();
        let s1s2 = g.parse_element("s1s2").unwrap();
        let s2s1 = g.parse_element("s2s1").unwrap();
        assert_eq!(h.star(&h.t(s1s2)), h.t(s2s1));
        assert_eq!(h.star(&h.t(1)), h.t(1));
    }
}
