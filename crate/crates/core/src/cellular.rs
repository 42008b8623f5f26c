//! The cell datum built from the `J`-representations, and checks of the
//! cellular axioms.
//!
//! The basis element `C^lambda_{s,t}` has coefficient
//! `nhat_w nhat_{w^-1} (B^lambda rho^lambda(t_{w^-1}))_{t,s}` on `c_w^dagger`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cells::CellData;
use crate::coxeter::Elem;
use crate::exactalg::integer::{det_int, prime_factors};
use crate::exactalg::{linalg, IntMatrix, QMatrix};
use crate::hecke::{HeckeAlgebra, HeckeElement, KlTable};
use crate::jreps::JIrrep;
use crate::jring::{JElement, JRing, PhiMap};
use crate::report::{ensure, Report};
use crate::{Poly, PolyMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellElement {
    pub lambda: usize,
    pub s: usize,
    pub t: usize,
    /// Nonzero coefficients on the `c^dagger` basis, by element.
    pub coeffs: Vec<(Elem, BigInt)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellDatum {
    /// `a_lambda` per label; `lambda <= mu` iff equal or `a_lambda > a_mu`.
    pub a: Vec<u32>,
    pub dims: Vec<usize>,
    /// Ordered by `(lambda, s, t)`.
    pub elements: Vec<CellElement>,
}

impl CellDatum {
    pub fn build(n: usize, inverse: &[Elem], cells: &CellData, reps: &[JIrrep]) -> Self {
        let nhat = &cells.adata.nhat;
        let mut elements = Vec::new();
        for rep in reps {
            let m: Vec<IntMatrix> = (0..n).map(|w| rep.b.mul(&rep.matrices[inverse[w]])).collect();
            for s in 0..rep.dim {
                for t in 0..rep.dim {
                    let coeffs = (0..n)
                        .filter_map(|w| {
                            let c = &m[w][(t, s)] * BigInt::from(nhat[w] * nhat[inverse[w]]);
                            (!c.is_zero()).then_some((w, c))
                        })
                        .collect();
                    elements.push(CellElement { lambda: rep.label, s, t, coeffs });
                }
            }
        }
        Self { a: reps.iter().map(|r| r.a).collect(), dims: reps.iter().map(|r| r.dim).collect(), elements }
    }

    pub fn precedes(&self, lambda: usize, mu: usize) -> bool {
        lambda == mu || self.a[lambda] > self.a[mu]
    }

    pub fn get(&self, lambda: usize, s: usize, t: usize) -> &CellElement {
        self.elements.iter().find(|e| e.lambda == lambda && e.s == s && e.t == t).expect("index in range")
    }

    /// Column `k` holds the coordinates of the `k`-th basis element.
    pub fn transition_matrix(&self, n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, self.elements.len());
        for (k, e) in self.elements.iter().enumerate() {
            for (w, c) in &e.coeffs {
                m[(*w, k)] = c.clone();
            }
        }
        m
    }

    /// `C^lambda_{s,t}` in the T-basis.
    pub fn element(&self, e: &CellElement, dagger: &[HeckeElement]) -> HeckeElement {
        let mut h = HeckeElement::zero(dagger.len());
        for (w, c) in &e.coeffs {
            h.add_scaled(&Poly::constant(c.clone()), &dagger[*w]);
        }
        h
    }

    /// `Some(signs)` if every element is `delta_w c_w^dagger` for a distinct
    /// `w`, with `signs[w] = delta_w`.
    pub fn signed_dagger_basis(&self, n: usize) -> Option<Vec<i32>> {
        let mut signs = vec![0i32; n];
        for e in &self.elements {
            match e.coeffs.as_slice() {
                [(w, c)] if c.abs().is_one() && signs[*w] == 0 => signs[*w] = if c.is_positive() { 1 } else { -1 },
                _ => return None,
            }
        }
        signs.iter().all(|&s| s != 0).then_some(signs)
    }
}

/// `r_h(s', s) = sum_x a_h(x) rho_{s's}(t_x)` where `phi(h) = sum_x a_h(x) t_x`.
pub fn r_matrix(rep: &JIrrep, phi_h: &JElement<Poly>) -> PolyMatrix {
    let d = rep.dim;
    let mut m = PolyMatrix::zeros(d, d);
    for (x, a) in phi_h.support() {
        let rho = &rep.matrices[x];
        for i in 0..d {
            for k in 0..d {
                if !rho[(i, k)].is_zero() {
                    m[(i, k)] += a.scale(&rho[(i, k)]);
                }
            }
        }
    }
    m
}

/// Everything the axiom checks read.
pub struct AxiomInputs<'a> {
    pub alg: &'a HeckeAlgebra,
    pub kl: &'a KlTable,
    pub dagger: &'a [HeckeElement],
    pub cells: &'a CellData,
    pub j: &'a JRing,
    pub phi: &'a PhiMap,
    pub reps: &'a [JIrrep],
    pub bad_primes: &'a [u64],
}

impl AxiomInputs<'_> {
    /// `phi(T_s)` for each generator.
    pub fn phi_generators(&self) -> Vec<JElement<Poly>> {
        let g = self.alg.group();
        (0..g.rank())
            .map(|s| {
                let ts = self.alg.t(g.generator(s));
                self.phi.apply(&self.kl.to_dagger_basis(self.alg, self.dagger, &ts))
            })
            .collect()
    }
}

fn supported_above(coords: &[Poly], a: &[u32], bound: u32) -> Option<Elem> {
    coords.iter().enumerate().find(|(y, p)| !p.is_zero() && a[*y] < bound).map(|(y, _)| y)
}

pub fn check_axioms(datum: &CellDatum, inp: &AxiomInputs) -> Report {
    let g = inp.alg.group();
    let n = g.order();
    let a = &inp.cells.adata.a;
    let mut r = Report::new();

    r.record(
        "C on the a-stratum",
        datum
            .elements
            .iter()
            .find_map(|e| e.coeffs.iter().find(|(w, _)| a[*w] != datum.a[e.lambda]).map(|(w, _)| (e, *w)))
            .map_or(Ok(()), |(e, w)| Err(format!("C(E{},{},{}) at {}", e.lambda, e.s + 1, e.t + 1, g.name(w)))),
    );

    let tm = datum.transition_matrix(n);
    let c1 = if !tm.is_square() {
        Err(format!("{} basis elements for |W| = {n}", tm.cols()))
    } else {
        let det = det_int(&tm);
        if det.is_zero() {
            Err("transition determinant is zero".into())
        } else {
            let bad: Vec<u64> = prime_factors(&det).into_iter().filter(|p| !inp.bad_primes.contains(p)).collect();
            ensure(bad.is_empty(), || format!("det = {det} has good primes {bad:?}"))
        }
    };
    r.record("C1", c1);

    let c2 = (|| {
        for e in &datum.elements {
            let lhs = inp.alg.star(&datum.element(e, inp.dagger));
            let rhs = datum.element(datum.get(e.lambda, e.t, e.s), inp.dagger);
            if lhs != rhs {
                return Err(format!("E{} ({},{})", e.lambda, e.s + 1, e.t + 1));
            }
        }
        Ok(())
    })();
    r.record("C2", c2);

    // T_s C_{s,t} - sum_{s'} r(s',s) C_{s',t} must lie in H^{>= a_lambda + 1}
    let phis = inp.phi_generators();
    let c3 = (|| {
        for rep in inp.reps {
            for (gen, phi_s) in phis.iter().enumerate() {
                let rm = r_matrix(rep, phi_s);
                for s in 0..rep.dim {
                    for t in 0..rep.dim {
                        let c = datum.element(datum.get(rep.label, s, t), inp.dagger);
                        let mut rem = inp.alg.left_t(gen, &c);
                        for s2 in 0..rep.dim {
                            let coef = &rm[(s2, s)];
                            if !coef.is_zero() {
                                let other = datum.element(datum.get(rep.label, s2, t), inp.dagger);
                                rem.add_scaled(&-coef.clone(), &other);
                            }
                        }
                        let coords = inp.kl.to_dagger_basis(inp.alg, inp.dagger, &rem);
                        if let Some(y) = supported_above(&coords, a, rep.a + 1) {
                            return Err(format!(
                                "E{} ({},{}) under T_s{}: remainder meets c_{}",
                                rep.label,
                                s + 1,
                                t + 1,
                                gen + 1,
                                g.name(y)
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    })();
    r.record("C3", c3);
    r.record("reconstruction identity", reconstruction(datum, inp));
    r.record("one-dimensional formula", one_dimensional(datum, inp, &phis));
    r.record("J-action congruence", j_action_congruence(inp, &phis));
    r
}

// sum_lambda sum_{s,t} (1/f) (rho(t_y) B^-1)_{s,t} C_{s,t} = nhat_y nhat_{y^-1} c_y^dagger
fn reconstruction(datum: &CellDatum, inp: &AxiomInputs) -> Result<(), String> {
    let g = inp.alg.group();
    let n = g.order();
    let nhat = &inp.cells.adata.nhat;
    let to_q = |m: &IntMatrix| -> QMatrix { m.map(|x| BigRational::from_integer(x.clone())) };
    let binv: Vec<QMatrix> = inp.reps.iter().map(|r| linalg::inverse(&to_q(&r.b)).expect("B is definite")).collect();
    for y in g.elements() {
        let mut acc = vec![BigRational::zero(); n];
        for (rep, bi) in inp.reps.iter().zip(&binv) {
            let rho = &rep.matrices[y];
            if rho.is_zero() {
                continue;
            }
            let m = to_q(rho).mul(bi);
            let f = BigRational::from_integer(rep.f.clone());
            for s in 0..rep.dim {
                for t in 0..rep.dim {
                    if m[(s, t)].is_zero() {
                        continue;
                    }
                    let c = &m[(s, t)] / &f;
                    for (w, x) in &datum.get(rep.label, s, t).coeffs {
                        acc[*w] += &c * BigRational::from_integer(x.clone());
                    }
                }
            }
        }
        for (w, x) in acc.iter().enumerate() {
            let expect = if w == y {
                BigRational::from_integer((nhat[y] * nhat[g.inverse(y)]).into())
            } else {
                BigRational::zero()
            };
            if *x != expect {
                return Err(format!("y = {}", g.name(y)));
            }
        }
    }
    Ok(())
}

// For one-dimensional lambda with T_s acting by eta(s) v^m(s):
// C = sum_{a + m(w) = 0} (-1)^l(w) eta(w) c_w^dagger.
fn one_dimensional(datum: &CellDatum, inp: &AxiomInputs, phis: &[JElement<Poly>]) -> Result<(), String> {
    let g = inp.alg.group();
    for rep in inp.reps.iter().filter(|r| r.dim == 1) {
        let mut eta = Vec::new();
        let mut m = Vec::new();
        for phi_s in phis {
            let x = r_matrix(rep, phi_s)[(0, 0)].clone();
            match x.terms() {
                [(e, c)] if c.abs().is_one() => {
                    eta.push(if c.is_positive() { 1i64 } else { -1 });
                    m.push(*e);
                }
                _ => return Err(format!("E{}: T_s acts by {x:?}", rep.label)),
            }
        }
        let mut expect = Vec::new();
        for w in g.elements() {
            let mw: i32 = g.word(w).iter().map(|&s| m[s as usize]).sum();
            if rep.a as i32 + mw == 0 {
                let sign: i64 = g.word(w).iter().map(|&s| -eta[s as usize]).product();
                expect.push((w, BigInt::from(sign)));
            }
        }
        if datum.get(rep.label, 0, 0).coeffs != expect {
            return Err(format!("E{}", rep.label));
        }
    }
    Ok(())
}

// T_s c_w^dagger - phi(T_s) * c_w^dagger lies in H^{>= a(w) + 1}, where
// t_x * c_w^dagger = sum_z gamma_{x,w,z^-1} nhat_w nhat_z c_z^dagger.
fn j_action_congruence(inp: &AxiomInputs, phis: &[JElement<Poly>]) -> Result<(), String> {
    let g = inp.alg.group();
    let a = &inp.cells.adata.a;
    let nhat = &inp.cells.adata.nhat;
    for (s, phi_s) in phis.iter().enumerate() {
        for w in g.elements() {
            let prod = inp.alg.left_t(s, &inp.dagger[w]);
            let mut coords = inp.kl.to_dagger_basis(inp.alg, inp.dagger, &prod);
            for (x, ax) in phi_s.support() {
                for (z, c) in inp.j.product(x, w) {
                    let k = c * BigInt::from(nhat[w] * nhat[*z]);
                    coords[*z] -= ax.scale(&k);
                }
            }
            if let Some(y) = supported_above(&coords, a, a[w] + 1) {
                return Err(format!("s{}, w = {}: meets c_{}", s + 1, g.name(w), g.name(y)));
            }
        }
    }
    Ok(())
}

/// Action matrices of the generators on the cell module `W(lambda)`.
pub fn generator_actions(rep: &JIrrep, phis: &[JElement<Poly>]) -> Vec<PolyMatrix> {
    phis.iter().map(|p| r_matrix(rep, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::HTable;
    use crate::jreps;
    use crate::testutil::algebra;

    struct Built {
        alg: HeckeAlgebra,
        kl: KlTable,
        dagger: Vec<HeckeElement>,
        cells: CellData,
        j: JRing,
        phi: PhiMap,
        reps: Vec<JIrrep>,
        bad: Vec<u64>,
        datum: CellDatum,
    }

    fn build(t: &str, w: &str) -> Built {
        let alg = algebra(t, w);
        let kl = KlTable::build(&alg);
        let h = HTable::build(&alg, &kl);
        let cells = CellData::build(&alg, &kl, &h).unwrap();
        let g = alg.group();
        let inv: Vec<Elem> = g.elements().map(|w| g.inverse(w)).collect();
        let j = JRing::build(&h, &cells, inv.clone());
        let phi = PhiMap::build(&h, &cells);
        let mut reps = jreps::irreducible_reps(g, &cells, &j, 0).unwrap();
        jreps::compute_f(g, &mut reps).unwrap();
        let bad = jreps::bad_primes(&reps);
        let datum = CellDatum::build(g.order(), &inv, &cells, &reps);
        let dagger = kl.dagger_basis(&alg);
        Built { alg, kl, dagger, cells, j, phi, reps, bad, datum }
    }

    fn inputs(b: &Built) -> AxiomInputs<'_> {
        AxiomInputs {
            alg: &b.alg,
            kl: &b.kl,
            dagger: &b.dagger,
            cells: &b.cells,
            j: &b.j,
            phi: &b.phi,
            reps: &b.reps,
            bad_primes: &b.bad,
        }
    }

    #[test]
    fn axioms_hold() {
        for (t, w) in [("A1", "1"), ("A2", "1,1"), ("B2", "1,1"), ("B2", "2,1"), ("G2", "1,1")] {
            let b = build(t, w);
            let r = check_axioms(&b.datum, &inputs(&b));
            assert!(r.all_passed(), "{t} {w}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn type_a_collapses_to_dagger_basis() {
        let b = build("A2", "1,1");
        let signs = b.datum.signed_dagger_basis(6).unwrap();
        assert!(signs.iter().all(|&s| s == 1));
        assert_eq!(det_int(&b.datum.transition_matrix(6)).abs(), BigInt::one());
    }

    // With L(s1) = 2, L(s2) = 1 we get p(1, s1s2s1) = v^-5 - v^-3, so
    // s1s2s1 is distinguished with n = -1 and gamma(w, w, w) = -1; the
    // one-dimensional element for that cell is -c^dagger.
    #[test]
    fn b2_unequal_signs() {
        let b = build("B2", "2,1");
        let g = b.alg.group();
        let w = g.parse_element("s1s2s1").unwrap();
        assert_eq!(b.kl.p(0, w), Poly::v_pow(-5) - Poly::v_pow(-3));
        let mut expect = vec![1; 8];
        expect[w] = -1;
        assert_eq!(b.datum.signed_dagger_basis(8), Some(expect));
    }

    #[test]
    fn b2_one_dimensional_and_c2() {
        let b = build("B2", "1,1");
        let g = b.alg.group();
        let name = |e: &CellElement| -> Vec<(String, i64)> {
            e.coeffs.iter().map(|(w, c)| (g.name(*w), i64::try_from(c).unwrap())).collect()
        };
        let ones: Vec<Vec<(String, i64)>> =
            b.reps.iter().filter(|r| r.dim == 1).map(|r| name(b.datum.get(r.label, 0, 0))).collect();
        let s = |v: &[(&str, i64)]| v.iter().map(|(a, c)| (a.to_string(), *c)).collect::<Vec<_>>();
        assert!(ones.contains(&s(&[("1", 1)])));
        assert!(ones.contains(&s(&[("s1s2s1s2", 1)])));
        assert!(ones.contains(&s(&[("s1", 1), ("s1s2s1", -1)])));
        assert!(ones.contains(&s(&[("s2", 1), ("s2s1s2", -1)])));
        let tm = b.datum.transition_matrix(8);
        let det = det_int(&tm).abs();
        assert!(prime_factors(&det).iter().all(|&p| p == 2));
    }

    #[test]
    fn b2_two_dimensional_span() {
        use crate::exactalg::integer::lattice_basis;
        let b = build("B2", "1,1");
        let g = b.alg.group();
        let r = b.reps.iter().find(|r| r.dim == 2).unwrap();
        let vec_of = |terms: &[(&str, i64)]| {
            let mut v = vec![BigInt::zero(); 8];
            for (name, c) in terms {
                v[g.parse_element(name).unwrap()] = BigInt::from(*c);
            }
            v
        };
        let expected = vec![
            vec_of(&[("s1", 1), ("s1s2s1", 1)]),
            vec_of(&[("s1s2", -2)]),
            vec_of(&[("s2s1", -2)]),
            vec_of(&[("s2", 2), ("s2s1s2", 2)]),
        ];
        let ours: Vec<Vec<BigInt>> = b
            .datum
            .elements
            .iter()
            .filter(|e| e.lambda == r.label)
            .map(|e| {
                let mut v = vec![BigInt::zero(); 8];
                for (w, c) in &e.coeffs {
                    v[*w] = c.clone();
                }
                v
            })
            .collect();
        assert_eq!(lattice_basis(&ours, 8), lattice_basis(&expected, 8));
    }

    #[test]
    fn unit_representation_action() {
        let b = build("B2", "2,1");
        let inp = inputs(&b);
        let phis = inp.phi_generators();
        let unit = &b.reps[0];
        assert_eq!(unit.a, 0);
        for (s, m) in generator_actions(unit, &phis).iter().enumerate() {
            assert_eq!(m[(0, 0)], b.alg.v_l(s));
        }
    }
}
