//! Lusztig's asymptotic ring `J` with basis `t_w`, its identity and the
//! homomorphism `phi : H -> J_A`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cells::CellData;
use crate::coxeter::Elem;
use crate::exactalg::{linalg, QMatrix, Ring};
use crate::hecke::{HTable, HeckeAlgebra, HeckeElement, KlTable};
use crate::report::{ensure, Report};
use crate::Poly;

/// `sum_w a_w t_w`, stored densely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JElement<R> {
    pub coeffs: Vec<R>,
}

impl<R: Ring> JElement<R> {
    pub fn zero(n: usize) -> Self {
        Self { coeffs: vec![R::zero(); n] }
    }

    pub fn basis(n: usize, w: Elem) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[w] = R::one();
        e
    }

    pub fn support(&self) -> impl Iterator<Item = (Elem, &R)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

#[derive(Debug, Clone)]
pub struct JRing {
    n: usize,
    // t_x t_y = sum (z, c) t_z, entry x * n + y, sorted by z
    products: Vec<Vec<(Elem, BigInt)>>,
    inverse: Vec<Elem>,
    identity: JElement<BigInt>,
}

impl JRing {
    /// `gamma_{x,y,z^-1}` is the constant term of `v^a(z) h_{x,y,z}`.
    pub fn build(h: &HTable, cells: &CellData, inverse: Vec<Elem>) -> Self {
        let n = h.size();
        let a = &cells.adata.a;
        let products = (0..n * n)
            .map(|i| {
                h.row(i / n, i % n)
                    .iter()
                    .filter_map(|(z, p)| {
                        let c = p.coeff_at(-(a[*z] as i32));
                        (!c.is_zero()).then_some((*z, c))
                    })
                    .collect()
            })
            .collect();
        let mut identity = JElement::zero(n);
        for &d in &cells.adata.dset {
            identity.coeffs[d] = cells.adata.nz[d].clone();
        }
        Self { n, products, inverse, identity }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Nonzero terms of `t_x t_y`.
    pub fn product(&self, x: Elem, y: Elem) -> &[(Elem, BigInt)] {
        &self.products[x * self.n + y]
    }

    /// `gamma_{x,y,z}`, the coefficient of `t_{z^-1}` in `t_x t_y`.
    pub fn gamma(&self, x: Elem, y: Elem, z: Elem) -> BigInt {
        let zi = self.inverse[z];
        let p = self.product(x, y);
        p.binary_search_by_key(&zi, |t| t.0).map_or_else(|_| BigInt::zero(), |i| p[i].1.clone())
    }

    pub fn identity(&self) -> &JElement<BigInt> {
        &self.identity
    }

    /// Nonzero `(x, y, z, gamma_{x,y,z})`.
    pub fn gammas(&self) -> impl Iterator<Item = (Elem, Elem, Elem, &BigInt)> {
        let n = self.n;
        self.products
            .iter()
            .enumerate()
            .flat_map(move |(i, p)| p.iter().map(move |(z, c)| (i / n, i % n, self.inverse[*z], c)))
    }

    /// Product of two elements with coefficients in any ring containing Z.
    pub fn multiply<R: Ring>(&self, a: &JElement<R>, b: &JElement<R>, lift: impl Fn(&BigInt) -> R) -> JElement<R> {
        let mut out = JElement::<R>::zero(self.n);
        for (x, p) in a.support() {
            for (y, q) in b.support() {
                let pq = p.mul_ref(q);
                for (z, c) in self.product(x, y) {
                    out.coeffs[*z].add_mul(&pq, &lift(c));
                }
            }
        }
        out
    }

    pub fn multiply_int(&self, a: &JElement<BigInt>, b: &JElement<BigInt>) -> JElement<BigInt> {
        self.multiply(a, b, BigInt::clone)
    }

    pub fn multiply_poly(&self, a: &JElement<Poly>, b: &JElement<Poly>) -> JElement<Poly> {
        self.multiply(a, b, |c| Poly::constant(c.clone()))
    }

    pub fn check(&self, alg: &HeckeAlgebra, cells: &CellData) -> Report {
        let g = alg.group();
        let n = self.n;
        let ad = &cells.adata;
        let cp = &cells.partition;
        let inv = |w: Elem| g.inverse(w);
        let mut r = Report::new();
        let find = |pred: &dyn Fn(Elem, Elem, Elem, &BigInt) -> bool| {
            self.gammas()
                .find(|&(x, y, z, c)| pred(x, y, z, c))
                .map_or(Ok(()), |(x, y, z, c)| Err(format!("gamma({},{},{}) = {c}", g.name(x), g.name(y), g.name(z))))
        };
        r.record("P5 gamma(x,y,d) != 0 implies x = y^-1", find(&|x, y, z, _| ad.in_d(z) && x != inv(y)));
        r.record("P5 gamma(x^-1,x,d) = n_d", find(&|x, y, z, c| ad.in_d(z) && x == inv(y) && *c != ad.nz[z]));
        r.record("P7", find(&|x, y, z, c| self.gamma(y, z, x) != *c));
        r.record("gamma inverse symmetry", find(&|x, y, z, c| self.gamma(inv(y), inv(x), inv(z)) != *c));
        r.record(
            "P8",
            find(&|x, y, z, _| !(cp.left_equiv(x, inv(y)) && cp.left_equiv(y, inv(z)) && cp.left_equiv(z, inv(x)))),
        );
        let one = &self.identity;
        let ident = (0..n).find(|&w| {
            let t = JElement::basis(n, w);
            self.multiply_int(one, &t) != t || self.multiply_int(&t, one) != t
        });
        r.record("1_J is a two-sided identity", ident.map_or(Ok(()), |w| Err(format!("fails on t_{}", g.name(w)))));
        r.record("associativity", self.check_associativity());
        r
    }

    // exhaustive up to 48 elements, a fixed sample beyond
    fn check_associativity(&self) -> Result<(), String> {
        let n = self.n;
        let triples: Box<dyn Iterator<Item = (Elem, Elem, Elem)>> = if n <= 48 {
            Box::new((0..n).flat_map(move |x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z)))))
        } else {
            Box::new((0..20_000usize).map(move |k| (k * 7919 % n, k * 104_729 % n, k * 1_299_709 % n)))
        };
        for (x, y, z) in triples {
            let tx = JElement::basis(n, x);
            let ty = JElement::basis(n, y);
            let tz = JElement::basis(n, z);
            let l = self.multiply_int(&self.multiply_int(&tx, &ty), &tz);
            let r = self.multiply_int(&tx, &self.multiply_int(&ty, &tz));
            if l != r {
                return Err(format!("({x},{y},{z})"));
            }
        }
        Ok(())
    }
}

/// `phi(c_w^dagger) = sum_{z, d in D, a(z) = a(d)} h_{w,d,z} nhat_z t_z`.
#[derive(Debug, Clone)]
pub struct PhiMap {
    images: Vec<JElement<Poly>>,
}

impl PhiMap {
    pub fn build(h: &HTable, cells: &CellData) -> Self {
        let n = h.size();
        let ad = &cells.adata;
        let images = (0..n)
            .map(|w| {
                let mut e = JElement::zero(n);
                for &d in &ad.dset {
                    for (z, p) in h.row(w, d) {
                        if ad.a[*z] == ad.a[d] {
                            e.coeffs[*z] += p.scale(&BigInt::from(ad.nhat[*z]));
                        }
                    }
                }
                e
            })
            .collect();
        Self { images }
    }

    pub fn of_dagger_basis(&self, w: Elem) -> &JElement<Poly> {
        &self.images[w]
    }

    /// `phi(h)` for `h` given by its coordinates in the `c^dagger` basis.
    pub fn apply(&self, dagger_coords: &[Poly]) -> JElement<Poly> {
        let n = self.images.len();
        let mut out = JElement::<Poly>::zero(n);
        for (w, a) in dagger_coords.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (z, p) in self.images[w].support() {
                out.coeffs[z].add_mul(a, p);
            }
        }
        out
    }

    /// Matrix of `phi_1 : Q[W] -> J_Q`; column `w` is `phi(T_w)` at `v = 1`.
    pub fn phi_one(&self, alg: &HeckeAlgebra, kl: &KlTable, dagger: &[HeckeElement]) -> QMatrix {
        let n = self.images.len();
        let one = BigRational::one();
        let mut m = QMatrix::zeros(n, n);
        for w in 0..n {
            let coords = kl.to_dagger_basis(alg, dagger, &alg.t(w));
            let img = self.apply(&coords);
            for (z, p) in img.support() {
                m[(z, w)] = p.evaluate(&one, &one, |c| BigRational::from_integer(c.clone()));
            }
        }
        m
    }

    pub fn check(&self, alg: &HeckeAlgebra, kl: &KlTable, dagger: &[HeckeElement], j: &JRing) -> Report {
        let g = alg.group();
        let n = g.order();
        let mut r = Report::new();
        let one = JElement { coeffs: j.identity().coeffs.iter().map(|c| Poly::constant(c.clone())).collect() };
        r.record("phi(1) = 1_J", ensure(self.images[0] == one, || format!("{:?}", self.images[0].coeffs)));
        let mut mult = Ok(());
        'outer: for s in 0..g.rank() {
            let cs = g.generator(s);
            for y in 0..n {
                let prod = alg.multiply(&dagger[cs], &dagger[y]);
                let lhs = self.apply(&kl.to_dagger_basis(alg, dagger, &prod));
                let rhs = j.multiply_poly(&self.images[cs], &self.images[y]);
                if lhs != rhs {
                    mult = Err(format!("s{} * {}", s + 1, g.name(y)));
                    break 'outer;
                }
            }
        }
        r.record("phi multiplicative", mult);
        let m = self.phi_one(alg, kl, dagger);
        let inv = linalg::inverse(&m);
        r.record(
            "phi_1 invertible",
            match &inv {
                Some(i) => ensure(m.mul(i).is_identity(), || "inverse check failed".into()),
                None => Err("singular".into()),
            },
        );
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::algebra;

    struct Fixture {
        alg: HeckeAlgebra,
        kl: KlTable,
        cells: CellData,
        j: JRing,
        phi: PhiMap,
        dagger: Vec<HeckeElement>,
    }

    fn fixture(t: &str, w: &str) -> Fixture {
        let alg = algebra(t, w);
        let kl = KlTable::build(&alg);
        let h = HTable::build(&alg, &kl);
        let cells = CellData::build(&alg, &kl, &h).unwrap();
        let inv = alg.group().elements().map(|w| alg.group().inverse(w)).collect();
        let j = JRing::build(&h, &cells, inv);
        let phi = PhiMap::build(&h, &cells);
        let dagger = kl.dagger_basis(&alg);
        Fixture { alg, kl, cells, j, phi, dagger }
    }

    #[test]
    fn a1() {
        let f = fixture("A1", "1");
        assert_eq!(f.j.gamma(1, 1, 1), BigInt::one());
        assert_eq!(f.j.identity().coeffs, vec![BigInt::one(), BigInt::one()]);
        let m = f.phi.phi_one(&f.alg, &f.kl, &f.dagger);
        assert!(linalg::det(&m) != BigRational::zero());
    }

    fn t(f: &Fixture, name: &str) -> JElement<BigInt> {
        JElement::basis(f.j.size(), f.alg.group().parse_element(name).unwrap())
    }

    fn sum(f: &Fixture, terms: &[(&str, i64)]) -> JElement<BigInt> {
        let mut e = JElement::zero(f.j.size());
        for (name, c) in terms {
            e.coeffs[f.alg.group().parse_element(name).unwrap()] += BigInt::from(*c);
        }
        e
    }

    // The multiplication table of J for B2 with equal parameters.
    #[test]
    fn b2_relations() {
        let f = fixture("B2", "1,1");
        let j = &f.j;
        let m = |a: &str, b: &str| j.multiply_int(&t(&f, a), &t(&f, b));
        let w0 = "s1s2s1s2";
        assert_eq!(m(w0, w0), t(&f, w0));
        assert_eq!(m("s1", "s1"), t(&f, "s1"));
        assert_eq!(m("s2", "s2"), t(&f, "s2"));
        assert_eq!(m("s1", "s1s2"), t(&f, "s1s2"));
        assert_eq!(m("s1s2", "s2"), t(&f, "s1s2"));
        assert_eq!(m("s1s2", "s2s1"), sum(&f, &[("s1", 1), ("s1s2s1", 1)]));
        assert_eq!(m("s2s1", "s1s2"), sum(&f, &[("s2", 1), ("s2s1s2", 1)]));
        assert_eq!(m("s1s2s1", "s1s2s1"), t(&f, "s1"));
        assert_eq!(m("s2s1s2", "s2s1s2"), t(&f, "s2"));
        assert_eq!(m("s1s2s1", "s1s2"), t(&f, "s1s2"));
        assert_eq!(m("s1", "s2"), JElement::zero(8));
        assert_eq!(f.j.identity().clone(), sum(&f, &[("1", 1), ("s1", 1), ("s2", 1), (w0, 1)]));
        let id = f.j.identity();
        assert_eq!(&f.j.multiply_int(id, id), id);
    }

    #[test]
    fn checks_pass() {
        for (ty, w) in [("A1", "1"), ("A2", "1,1"), ("B2", "1,1"), ("B2", "2,1"), ("G2", "1,1"), ("A3", "1,1,1")] {
            let f = fixture(ty, w);
            let mut r = f.j.check(&f.alg, &f.cells);
            r.extend(f.phi.check(&f.alg, &f.kl, &f.dagger, &f.j));
            assert!(r.all_passed(), "{ty} {w}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }
}
