//! Integral irreducible representations of `J` and their invariant forms.
//!
//! Every irreducible `J_Q`-module occurs in some left cell module `[Gamma]`
//! (basis `t_x`, `x` in `Gamma`). Irreducible cell modules are kept in their
//! `t`-basis. Reducible ones are split over `Q` by eigenspaces of commutant
//! elements, using that the standard dot product is invariant
//! (`rho(t_{w^-1}) = rho(t_w)^T` on a cell module) to take complements. Each
//! irreducible piece is then made integral on the lattice `J v`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cells::CellData;
use crate::coxeter::{CoxeterGroup, Elem};
use crate::error::{Error, Result};
use crate::exactalg::integer::{
    det_int, gcd_normalize, is_positive_definite, lattice_basis, prime_factors, rational_roots, to_integer, to_rational,
};
use crate::exactalg::{linalg, IntMatrix, Matrix, QMatrix};
use crate::jring::JRing;
use crate::report::{ensure, Report};

/// An integral irreducible representation of `J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JIrrep {
    pub label: usize,
    pub dim: usize,
    /// `rho(t_w)` for every `w`; zero off the supporting two-sided cell.
    pub matrices: Vec<IntMatrix>,
    pub a: u32,
    pub f: BigInt,
    /// Symmetric positive definite with `B rho(t_{w^-1}) = rho(t_w)^T B`.
    pub b: IntMatrix,
    /// Left cell whose module contains this representation.
    pub source_cell: usize,
    /// Whether the matrices are the left cell module itself in its `t`-basis.
    pub cell_basis: bool,
    pub character: Vec<BigInt>,
}

impl JIrrep {
    pub fn name(&self) -> String {
        format!("E{}", self.label)
    }

    pub fn support(&self) -> impl Iterator<Item = Elem> + '_ {
        self.matrices.iter().enumerate().filter(|(_, m)| !m.is_zero()).map(|(w, _)| w)
    }
}

/// `rho(t_w)_{s,t} = gamma_{w, x_t, x_s^-1}` on the left cell `members`.
pub fn left_cell_module(j: &JRing, inverse: &[Elem], members: &[Elem]) -> Vec<IntMatrix> {
    let d = members.len();
    (0..j.size()).map(|w| Matrix::from_fn(d, d, |s, t| j.gamma(w, members[t], inverse[members[s]]))).collect()
}

type QRep = Vec<(Elem, QMatrix)>;

fn commutant(mats: &QRep, k: usize) -> Vec<QMatrix> {
    // X A - A X = 0, unknowns X row-major
    let rows = mats.len() * k * k;
    let mut sys = QMatrix::zeros(rows.max(1), k * k);
    for (m, (_, a)) in mats.iter().enumerate() {
        for i in 0..k {
            for j in 0..k {
                let r = m * k * k + i * k + j;
                for l in 0..k {
                    // (XA)_{ij} = sum_l X_{il} A_{lj}
                    sys[(r, i * k + l)] += a[(l, j)].clone();
                    // (AX)_{ij} = sum_l A_{il} X_{lj}
                    sys[(r, l * k + j)] -= a[(i, l)].clone();
                }
            }
        }
    }
    linalg::nullspace(&sys).into_iter().map(|v| QMatrix::from_vec(k, k, v)).collect()
}

fn columns_matrix(vecs: &[Vec<BigRational>], rows: usize) -> QMatrix {
    QMatrix::from_fn(rows, vecs.len(), |i, j| vecs[j][i].clone())
}

// Restriction of a representation to the invariant subspace spanned by the
// columns of `p`, via (P^T G P)^-1 P^T G A P.
fn restrict(mats: &QRep, form: &QMatrix, p: &QMatrix) -> Result<(QRep, QMatrix)> {
    let pt_g = p.transpose().mul(form);
    let gram = pt_g.mul(p);
    let gi = linalg::inverse(&gram).ok_or_else(|| Error::Representation("degenerate restricted form".into()))?;
    let proj = gi.mul(&pt_g);
    let sub = mats.iter().map(|(w, a)| (*w, proj.mul(&a.mul(p)))).filter(|(_, m)| !m.is_zero()).collect();
    Ok((sub, gram))
}

/// A proper nonzero submodule, as a basis of column vectors.
fn find_submodule(comm: &[QMatrix], k: usize, rng: &mut ChaCha8Rng) -> Option<Vec<Vec<BigRational>>> {
    let attempt = |x: &QMatrix| -> Option<Vec<Vec<BigRational>>> {
        let mu = linalg::minimal_polynomial(x);
        if mu.len() <= 2 {
            return None; // scalar
        }
        for root in rational_roots(&mu) {
            let shifted = x.sub(&QMatrix::identity(k).scale(&root));
            let ker = linalg::nullspace(&shifted);
            if !ker.is_empty() && ker.len() < k {
                return Some(ker);
            }
        }
        None
    };
    for x in comm {
        if let Some(s) = attempt(x) {
            return Some(s);
        }
    }
    for _ in 0..64 {
        let mut x = QMatrix::zeros(k, k);
        for e in comm {
            let c: i64 = rng.gen_range(-3..=3);
            x = x.add(&e.scale(&BigRational::from_integer(c.into())));
        }
        if let Some(s) = attempt(&x) {
            return Some(s);
        }
    }
    None
}

/// Bases (in current coordinates) of irreducible summands.
fn split(mats: &QRep, form: &QMatrix, k: usize, rng: &mut ChaCha8Rng) -> Result<Vec<QMatrix>> {
    if k <= 1 {
        return Ok(vec![QMatrix::identity(k)]);
    }
    let comm = commutant(mats, k);
    if comm.len() <= 1 {
        return Ok(vec![QMatrix::identity(k)]);
    }
    let sub = find_submodule(&comm, k, rng).ok_or_else(|| {
        Error::Representation(format!(
            "no rational eigenvector in a commutant of dimension {} on a {k}-dimensional module",
            comm.len()
        ))
    })?;
    let s = columns_matrix(&sub, k);
    let comp = linalg::nullspace(&s.transpose().mul(form));
    let c = columns_matrix(&comp, k);
    let mut out = Vec::new();
    for p in [s, c] {
        let (sub_mats, sub_form) = restrict(mats, form, &p)?;
        for q in split(&sub_mats, &sub_form, p.cols(), rng)? {
            out.push(p.mul(&q));
        }
    }
    Ok(out)
}

/// Integral basis of the lattice `J v`, where `v` is the first nonzero
/// column of `rho(t_d)` for the smallest distinguished involution `d`
/// acting nontrivially; returns the integral matrices.
fn integralize(mats: &QRep, k: usize, in_d: impl Fn(Elem) -> bool) -> Result<Vec<(Elem, IntMatrix)>> {
    let idem = mats
        .iter()
        .filter(|(w, _)| in_d(*w))
        .min_by_key(|(w, _)| *w)
        .map(|(_, a)| a)
        .ok_or_else(|| Error::Representation("no distinguished involution acts".into()))?;
    let col = (0..k).find(|&j| (0..k).any(|i| !idem[(i, j)].is_zero())).expect("nonzero idempotent");
    let v: Vec<BigRational> = (0..k).map(|i| idem[(i, col)].clone()).collect();
    let images: Vec<Vec<BigRational>> = mats.iter().map(|(_, a)| a.mul_vec(&v)).collect();
    let den = images.iter().flatten().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let dq = BigRational::from_integer(den.clone());
    let gens: Vec<Vec<BigInt>> = images.iter().map(|v| v.iter().map(|x| (x * &dq).to_integer()).collect()).collect();
    let basis = lattice_basis(&gens, k);
    if basis.len() != k {
        return Err(Error::Representation(format!("lattice of rank {} in dimension {k}", basis.len())));
    }
    let u = QMatrix::from_fn(k, k, |i, j| BigRational::new(basis[j][i].clone(), den.clone()));
    let ui = linalg::inverse(&u).ok_or_else(|| Error::Representation("singular lattice basis".into()))?;
    mats.iter()
        .map(|(w, a)| {
            to_integer(&ui.mul(&a.mul(&u)))
                .map(|m| (*w, m))
                .ok_or_else(|| Error::Representation("lattice is not stable".into()))
        })
        .collect()
}

/// `sum_y rho(t_y)^T rho(t_y)` divided by the gcd of its entries.
pub fn gram_b(matrices: &[IntMatrix]) -> Result<IntMatrix> {
    let d = matrices[0].rows();
    let mut b1 = IntMatrix::zeros(d, d);
    for m in matrices {
        b1 = b1.add(&m.transpose().mul(m));
    }
    Ok(gcd_normalize(&b1)?.0)
}

/// Pairwise reduction of a positive definite form by unimodular column
/// operations. Returns `(U^T B U, U)`.
pub fn reduce_form(b: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let d = b.rows();
    let mut b = b.clone();
    let mut u = IntMatrix::identity(d);
    loop {
        let mut changed = false;
        // order basis vectors by their norm
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&i, &j| b[(i, i)].cmp(&b[(j, j)]).then(i.cmp(&j)));
        if order.iter().enumerate().any(|(i, &o)| i != o) {
            let p = IntMatrix::from_fn(d, d, |i, j| if i == order[j] { BigInt::one() } else { BigInt::zero() });
            b = p.transpose().mul(&b).mul(&p);
            u = u.mul(&p);
        }
        for i in 0..d {
            for j in 0..d {
                if i == j {
                    continue;
                }
                let bii = b[(i, i)].clone();
                let bij = b[(i, j)].clone();
                let two = BigInt::from(2);
                if (&bij * &two).abs() <= bii {
                    continue;
                }
                // nearest integer to bij / bii
                let q = (&bij * &two + &bii).div_floor(&(&bii * &two));
                let mut e = IntMatrix::identity(d);
                e[(i, j)] = -q;
                b = e.transpose().mul(&b).mul(&e);
                u = u.mul(&e);
                changed = true;
            }
        }
        if !changed {
            return (b, u);
        }
    }
}

fn invert_unimodular(u: &IntMatrix) -> IntMatrix {
    to_integer(&linalg::inverse(&to_rational(u)).expect("unimodular")).expect("unimodular")
}

fn character(mats: &[IntMatrix]) -> Vec<BigInt> {
    mats.iter().map(IntMatrix::trace).collect()
}

/// All irreducible representations, one per isomorphism class, ordered by
/// `(a, dim, first appearance)`.
pub fn irreducible_reps(g: &CoxeterGroup, cells: &CellData, j: &JRing, seed: u64) -> Result<Vec<JIrrep>> {
    let n = g.order();
    let inverse: Vec<Elem> = g.elements().map(|w| g.inverse(w)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: BTreeMap<Vec<BigInt>, JIrrep> = BTreeMap::new();
    let mut order: Vec<Vec<BigInt>> = Vec::new();
    let left_cells = cells.partition.left_cells();
    let modules: Vec<Vec<IntMatrix>> =
        left_cells.iter().map(|members| left_cell_module(j, &inverse, members)).collect();
    let mut reducible = Vec::new();
    let add = |found: &mut BTreeMap<Vec<BigInt>, JIrrep>, order: &mut Vec<Vec<BigInt>>, rep: JIrrep| {
        if !found.contains_key(&rep.character) {
            order.push(rep.character.clone());
            found.insert(rep.character.clone(), rep);
        }
    };
    for (cell, mats) in modules.iter().enumerate() {
        let d = mats[0].rows();
        let qrep: QRep =
            mats.iter().enumerate().filter(|(_, m)| !m.is_zero()).map(|(w, m)| (w, to_rational(m))).collect();
        if d == 1 || commutant(&qrep, d).len() == 1 {
            let b = gram_b(mats)?;
            let rep = finish(cells, cell, mats.clone(), b, true)?;
            add(&mut found, &mut order, rep);
        } else {
            reducible.push((cell, qrep, d));
        }
    }
    for (cell, qrep, d) in reducible {
        let pieces = split(&qrep, &QMatrix::identity(d), d, &mut rng)?;
        for p in pieces {
            let (sub, _) = restrict(&qrep, &QMatrix::identity(d), &p)?;
            let k = p.cols();
            let ints = integralize(&sub, k, |w| cells.adata.in_d(w))?;
            let mut mats = vec![IntMatrix::zeros(k, k); n];
            for (w, m) in ints {
                mats[w] = m;
            }
            if found.contains_key(&character(&mats)) {
                continue;
            }
            let b = gram_b(&mats)?;
            let (b, u) = reduce_form(&b);
            let ui = invert_unimodular(&u);
            let mats = mats.iter().map(|m| ui.mul(m).mul(&u)).collect();
            let rep = finish(cells, cell, mats, b, false)?;
            add(&mut found, &mut order, rep);
        }
    }
    let mut reps: Vec<JIrrep> = order.iter().map(|c| found.remove(c).unwrap()).collect();
    reps.sort_by_key(|r| (r.a, r.dim));
    for (i, r) in reps.iter_mut().enumerate() {
        r.label = i;
    }
    Ok(reps)
}

fn finish(cells: &CellData, cell: usize, matrices: Vec<IntMatrix>, b: IntMatrix, cell_basis: bool) -> Result<JIrrep> {
    let dim = matrices[0].rows();
    let character = character(&matrices);
    let support: Vec<Elem> = (0..matrices.len()).filter(|&w| !matrices[w].is_zero()).collect();
    let a = support.first().map_or(0, |&w| cells.adata.a[w]);
    Ok(JIrrep { label: 0, dim, matrices, a, f: BigInt::zero(), b, source_cell: cell, cell_basis, character })
}

/// Fills in `f_lambda`; requires inverses, so done after construction.
pub fn compute_f(g: &CoxeterGroup, reps: &mut [JIrrep]) -> Result<()> {
    for r in reps.iter_mut() {
        let sum: BigInt = g.elements().map(|w| &r.character[w] * &r.character[g.inverse(w)]).sum();
        let (f, rem) = sum.div_rem(&BigInt::from(r.dim));
        if !rem.is_zero() || !f.is_positive() {
            return Err(Error::property("f integrality", format!("{} has f = {sum}/{}", r.name(), r.dim)));
        }
        r.f = f;
    }
    Ok(())
}

/// Primes dividing some `f_lambda`.
pub fn bad_primes(reps: &[JIrrep]) -> Vec<u64> {
    let mut ps: Vec<u64> = reps.iter().flat_map(|r| prime_factors(&r.f)).collect();
    ps.sort_unstable();
    ps.dedup();
    ps
}

/// Primes dividing some `f_lambda` or some `det(B^lambda)`.
pub fn primes_of_data(reps: &[JIrrep]) -> Vec<u64> {
    let mut ps: Vec<u64> =
        reps.iter().flat_map(|r| prime_factors(&r.f).into_iter().chain(prime_factors(&det_int(&r.b)))).collect();
    ps.sort_unstable();
    ps.dedup();
    ps
}

pub fn check(g: &CoxeterGroup, cells: &CellData, j: &JRing, reps: &[JIrrep]) -> Report {
    let n = g.order();
    let inv = |w: Elem| g.inverse(w);
    let mut r = Report::new();
    let dims: usize = reps.iter().map(|x| x.dim * x.dim).sum();
    r.record("sum of d^2 = |W|", ensure(dims == n, || format!("{dims} != {n}")));

    let rep_prop = (|| {
        for rep in reps {
            let supp: Vec<Elem> = rep.support().collect();
            for &x in &supp {
                for &y in &supp {
                    let lhs = rep.matrices[x].mul(&rep.matrices[y]);
                    let mut rhs = IntMatrix::zeros(rep.dim, rep.dim);
                    for (z, c) in j.product(x, y) {
                        rhs = rhs.add(&rep.matrices[*z].scale(c));
                    }
                    if lhs != rhs {
                        return Err(format!("{} at ({}, {})", rep.name(), g.name(x), g.name(y)));
                    }
                }
            }
            // products involving elements outside the support must vanish
            for x in g.elements() {
                if !rep.matrices[x].is_zero() {
                    continue;
                }
                for &y in &supp {
                    for (a, b) in [(x, y), (y, x)] {
                        let mut rhs = IntMatrix::zeros(rep.dim, rep.dim);
                        for (z, c) in j.product(a, b) {
                            rhs = rhs.add(&rep.matrices[*z].scale(c));
                        }
                        if !rhs.is_zero() {
                            return Err(format!("{} at ({}, {})", rep.name(), g.name(a), g.name(b)));
                        }
                    }
                }
            }
        }
        Ok(())
    })();
    r.record("representation property", rep_prop);
    r.record(
        "1_J acts as identity",
        reps.iter()
            .find(|rep| {
                let mut m = IntMatrix::zeros(rep.dim, rep.dim);
                for (w, c) in j.identity().support() {
                    m = m.add(&rep.matrices[w].scale(c));
                }
                !m.is_identity()
            })
            .map_or(Ok(()), |rep| Err(rep.name())),
    );
    r.record(
        "support on the a-stratum",
        reps.iter()
            .find_map(|rep| rep.support().find(|&w| cells.adata.a[w] != rep.a).map(|w| (rep, w)))
            .map_or(Ok(()), |(rep, w)| Err(format!("{} at {}", rep.name(), g.name(w)))),
    );
    let mut chars: Vec<&Vec<BigInt>> = reps.iter().map(|x| &x.character).collect();
    chars.sort();
    chars.dedup();
    r.record("characters distinct", ensure(chars.len() == reps.len(), String::new));

    let bad = bad_primes(reps);
    let b_check = (|| {
        for rep in reps {
            let b = &rep.b;
            if !b.is_symmetric() {
                return Err(format!("{}: not symmetric", rep.name()));
            }
            if !is_positive_definite(b) {
                return Err(format!("{}: not positive definite", rep.name()));
            }
            if crate::exactalg::integer::content(b.data()) != BigInt::one() {
                return Err(format!("{}: entries not coprime", rep.name()));
            }
            for w in g.elements() {
                if b.mul(&rep.matrices[inv(w)]) != rep.matrices[w].transpose().mul(b) {
                    return Err(format!("{}: fails to intertwine at {}", rep.name(), g.name(w)));
                }
            }
            let det = det_int(b);
            if let Some(p) = prime_factors(&det).into_iter().find(|p| !bad.contains(p)) {
                return Err(format!("{}: det B = {det} has good prime {p}", rep.name()));
            }
        }
        Ok(())
    })();
    r.record("B symmetric positive definite intertwining", b_check);
    r.record("Schur relations", schur_first(g, reps));
    r.record("second Schur relations", schur_second(g, reps));
    r
}

// sum_w rho_st(t_w) rho'_uv(t_{w^-1}) = f [lambda = mu, s = v, t = u]
fn schur_first(g: &CoxeterGroup, reps: &[JIrrep]) -> std::result::Result<(), String> {
    for (li, l) in reps.iter().enumerate() {
        for (mi, m) in reps.iter().enumerate() {
            for s in 0..l.dim {
                for t in 0..l.dim {
                    for u in 0..m.dim {
                        for v in 0..m.dim {
                            let sum: BigInt =
                                g.elements().map(|w| &l.matrices[w][(s, t)] * &m.matrices[g.inverse(w)][(u, v)]).sum();
                            let expect = if li == mi && s == v && t == u { l.f.clone() } else { BigInt::zero() };
                            if sum != expect {
                                return Err(format!("({}, {s}, {t}) vs ({}, {u}, {v}): {sum}", l.name(), m.name()));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

// sum_lambda sum_{s,t} rho_st(t_x) rho_ts(t_{y^-1}) / f = delta_xy
fn schur_second(g: &CoxeterGroup, reps: &[JIrrep]) -> std::result::Result<(), String> {
    for x in g.elements() {
        for y in g.elements() {
            let mut sum = BigRational::zero();
            for rep in reps {
                let a = &rep.matrices[x];
                let b = &rep.matrices[g.inverse(y)];
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                // sum_{s,t} a_st b_ts = tr(a b)
                sum += BigRational::new(a.mul(b).trace(), rep.f.clone());
            }
            let expect = if x == y { BigRational::one() } else { BigRational::zero() };
            if sum != expect {
                return Err(format!("x = {}, y = {}: {sum}", g.name(x), g.name(y)));
            }
        }
    }
    Ok(())
}
