//! Cell modules `W(lambda)`, their invariant forms and specializations.
//!
//! `W(lambda)` has basis `C_s` with `T_s` acting through the matrices
//! `r_{T_s}`. The form `g(C_s, C_t) = r_h(s, s)` with `h = C_{s,t}` is
//! computed from the cellular basis itself. Under a specialization
//! `theta : A -> k` the simple modules are `L = W_k / rad(g_k)`; composition
//! multiplicities are found by peeling socles, using that every `L` is
//! absolutely irreducible so `dim Hom(L, M)` counts copies of `L` in the
//! socle of `M`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::cellular::{r_matrix, CellDatum};
use crate::error::{Error, Result};
use crate::exactalg::fields::{Cyclotomic, Fp};
use crate::exactalg::{linalg, Field, Matrix, Ring};
use crate::hecke::HeckeAlgebra;
use crate::jreps::JIrrep;
use crate::jring::{JElement, PhiMap};
use crate::report::{ensure, Report};
use crate::{Poly, PolyMatrix};

/// `W(lambda)` with the action of each generator `T_s`.
#[derive(Debug, Clone, PartialEq)]
pub struct CellModule {
    pub lambda: usize,
    pub dim: usize,
    pub actions: Vec<PolyMatrix>,
}

impl CellModule {
    pub fn new(rep: &JIrrep, phi_generators: &[JElement<Poly>]) -> Self {
        let actions = phi_generators.iter().map(|p| r_matrix(rep, p)).collect();
        Self { lambda: rep.label, dim: rep.dim, actions }
    }

    /// Quadratic relation for every generator and braid relation for every pair.
    pub fn check_relations(&self, alg: &HeckeAlgebra) -> std::result::Result<(), String> {
        let g = alg.group();
        let id = PolyMatrix::identity(self.dim);
        for (s, r) in self.actions.iter().enumerate() {
            let vl = alg.v_l(s);
            let xi = vl.clone() - vl.bar();
            let rhs = id.add(&r.map(|p| p.clone() * xi.clone()));
            ensure(r.mul(r) == rhs, || format!("quadratic relation fails for s{}", s + 1))?;
        }
        let m = g.coxeter_matrix();
        for s in 0..self.actions.len() {
            for t in s + 1..self.actions.len() {
                let word = |a: usize, b: usize| {
                    (0..m[s][t]).fold(id.clone(), |acc, i| acc.mul(&self.actions[if i % 2 == 0 { a } else { b }]))
                };
                ensure(word(s, t) == word(t, s), || format!("braid relation fails for s{}, s{}", s + 1, t + 1))?;
            }
        }
        Ok(())
    }
}

/// Gram matrix of `g` on `W(lambda)`: entry `(s, t)` is `r_h(s, s)` with
/// `h = C_{s,t}`.
pub fn gram_g(datum: &CellDatum, rep: &JIrrep, phi: &PhiMap, n: usize) -> PolyMatrix {
    let d = rep.dim;
    PolyMatrix::from_fn(d, d, |s, t| {
        let mut coords = vec![Poly::zero(); n];
        for (w, c) in &datum.get(rep.label, s, t).coeffs {
            coords[*w] = Poly::constant(c.clone());
        }
        r_matrix(rep, &phi.apply(&coords))[(s, s)].clone()
    })
}

/// Symmetry, invariance under the generators, the leading term
/// `v^a g = f B mod v` and nondegeneracy.
pub fn check_gram(module: &CellModule, gram: &PolyMatrix, rep: &JIrrep) -> Report {
    let mut r = Report::new();
    let tag = |s: &str| format!("{s} [{}]", rep.name());
    r.record(tag("g symmetric"), ensure(gram.is_symmetric(), || format!("{gram}")));
    r.record(
        tag("g invariant"),
        module
            .actions
            .iter()
            .enumerate()
            .try_for_each(|(s, a)| ensure(a.transpose().mul(gram) == gram.mul(a), || format!("T_s{}", s + 1))),
    );
    let a = rep.a as i32;
    r.record(
        tag("leading term of g"),
        (0..rep.dim).flat_map(|s| (0..rep.dim).map(move |t| (s, t))).try_for_each(|(s, t)| {
            let p = gram[(s, t)].shift(a);
            let want = &rep.f * &rep.b[(s, t)];
            ensure(p.min_exp().is_none_or(|e| e >= 0) && p.coeff_at(0) == want, || {
                format!("({s},{t}): v^{a} g = {p}, f B = {want}")
            })
        }),
    );
    r.record(tag("g nondegenerate"), ensure(poly_det_nonzero(gram), || format!("{gram}")));
    r
}

/// Nonzero determinant over the fraction field, certified by evaluation at
/// a few integers.
fn poly_det_nonzero(m: &PolyMatrix) -> bool {
    (2..8).any(|x: i64| {
        let x = BigRational::from_integer(x.into());
        let xi = x.recip();
        let e = m.map(|p| p.evaluate(&x, &xi, |c| BigRational::from_integer(c.clone())));
        !linalg::det(&e).is_zero()
    })
}

/// Target field of a specialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetField {
    Rationals,
    /// The prime field of the given characteristic.
    Prime(u64),
    /// `Q(zeta_e)`, with `v` sent to `zeta_e`.
    Cyclotomic(u32),
}

impl FromStr for TargetField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Specialization(format!("unknown field {s:?}; expected Q, Fp:<p> or Cyc:<e>"));
        let s = s.trim();
        if s == "Q" {
            return Ok(Self::Rationals);
        }
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "Fp" | "F" => Ok(Self::Prime(arg.parse().map_err(|_| bad())?)),
            "Cyc" => Ok(Self::Cyclotomic(arg.parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for TargetField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rationals => write!(f, "Q"),
            Self::Prime(p) => write!(f, "Fp:{p}"),
            Self::Cyclotomic(e) => write!(f, "Cyc:{e}"),
        }
    }
}

/// A ring map `theta : A -> k`, given by the field and the image of `v`.
/// For cyclotomic targets the image of `v` is always `zeta_e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specialization {
    pub field: TargetField,
    pub v: BigRational,
}

impl Specialization {
    /// Parses `at` of the form `v=<rational>` (or `v=z` for cyclotomic fields).
    pub fn parse(field: &str, at: &str) -> Result<Self> {
        let field: TargetField = field.parse()?;
        let value = at
            .trim()
            .strip_prefix("v=")
            .ok_or_else(|| Error::Specialization(format!("expected v=<value>, got {at:?}")))?;
        let v = match (&field, value) {
            (TargetField::Cyclotomic(_), "z" | "x" | "zeta") => BigRational::zero(),
            (TargetField::Cyclotomic(_), _) => {
                return Err(Error::Specialization("cyclotomic targets send v to zeta; use v=z".into()))
            }
            _ => value.parse::<BigRational>().map_err(|_| Error::Specialization(format!("bad value {value:?}")))?,
        };
        let sp = Self { field, v };
        sp.validate()?;
        Ok(sp)
    }

    fn validate(&self) -> Result<()> {
        match &self.field {
            TargetField::Rationals if self.v.is_zero() => Err(Error::Specialization("v must map to a unit".into())),
            TargetField::Prime(p) => {
                if !crate::exactalg::fields::is_prime(*p) {
                    return Err(Error::Specialization(format!("{p} is not prime")));
                }
                let pb = BigInt::from(*p);
                if (self.v.numer() % &pb).is_zero() || (self.v.denom() % &pb).is_zero() {
                    return Err(Error::Specialization(format!("v = {} is not a unit in F_{p}", self.v)));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self.field {
            TargetField::Prime(p) => p,
            _ => 0,
        }
    }

    pub fn describe(&self) -> String {
        match self.field {
            TargetField::Cyclotomic(e) => format!("v -> zeta_{e} over {}", self.field),
            _ => format!("v -> {} over {}", self.v, self.field),
        }
    }
}

/// Results of specializing all cell modules.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecializedData {
    pub specialization: String,
    /// Labels of the rows, ordered by increasing `a`.
    pub labels: Vec<String>,
    pub a: Vec<u32>,
    pub dims: Vec<usize>,
    /// Rank of each specialized Gram matrix, that is `dim L`.
    pub gram_ranks: Vec<usize>,
    /// Indices into `labels` of the nonzero `L`.
    pub lambda_circ: Vec<usize>,
    /// `decomposition[i][j] = [W_k(labels[i]) : L^{labels[lambda_circ[j]]}]`.
    pub decomposition: Vec<Vec<usize>>,
    pub report: Report,
}

/// Everything a specialization reads.
pub struct CellModules<'a> {
    pub reps: &'a [JIrrep],
    pub modules: &'a [CellModule],
    pub grams: &'a [PolyMatrix],
    pub transition_det: &'a BigInt,
    pub bad_primes: &'a [u64],
}

/// Prime fields available as specialization targets.
pub const SUPPORTED_PRIMES: &[u64] =
    &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];
/// Cyclotomic orders available as specialization targets.
pub const SUPPORTED_CYCLOTOMIC: std::ops::RangeInclusive<u32> = 1..=12;

pub fn specialize(data: &CellModules, sp: &Specialization) -> Result<SpecializedData> {
    sp.validate()?;
    let p = sp.characteristic();
    if p != 0 && data.bad_primes.contains(&p) {
        return Err(Error::Specialization(format!(
            "characteristic {p} is a bad prime; bad primes must be invertible in the target"
        )));
    }
    macro_rules! prime {
        ($($q:literal),*) => {
            match p {
                $($q => {
                    let lift = |c: &BigInt| Fp::<$q>::from_bigint(c);
                    let x = lift(sp.v.numer()).mul_ref(&lift(sp.v.denom()).inv().unwrap());
                    run(data, sp, x, lift)
                })*
                _ => Err(Error::Specialization(format!("prime {p} is not supported; use one of {SUPPORTED_PRIMES:?}"))),
            }
        };
    }
    macro_rules! cyclotomic {
        ($e:expr, $($q:literal),*) => {
            match $e {
                $($q => run(data, sp, Cyclotomic::<$q>::zeta(), |c: &BigInt| {
                    Cyclotomic::<$q>::from_rational(BigRational::from_integer(c.clone()))
                }),)*
                e => Err(Error::Specialization(format!("cyclotomic order {e} is not supported; use 1..=12"))),
            }
        };
    }
    match sp.field {
        TargetField::Rationals => run(data, sp, sp.v.clone(), |c: &BigInt| BigRational::from_integer(c.clone())),
        TargetField::Prime(_) => {
            prime!(2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)
        }
        TargetField::Cyclotomic(e) => cyclotomic!(e, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12),
    }
}

fn run<K: Field>(
    data: &CellModules,
    sp: &Specialization,
    x: K,
    lift: impl Fn(&BigInt) -> K,
) -> Result<SpecializedData> {
    let x_inv = x.inv().ok_or_else(|| Error::Specialization("v must map to a unit".into()))?;
    let eval = |m: &PolyMatrix| m.map(|p| p.evaluate(&x, &x_inv, &lift));
    let mut report = Report::new();

    report.record(
        "C1 over k",
        ensure(!lift(data.transition_det).is_zero(), || format!("det = {} vanishes", data.transition_det)),
    );

    let modules: Vec<Vec<Matrix<K>>> = data.modules.iter().map(|m| m.actions.iter().map(&eval).collect()).collect();
    let grams: Vec<Matrix<K>> = data.grams.iter().map(&eval).collect();

    let mut simples: Vec<(usize, Vec<Matrix<K>>)> = Vec::new();
    let mut ranks = Vec::new();
    for (i, (acts, g)) in modules.iter().zip(&grams).enumerate() {
        let rad = linalg::nullspace(g);
        let name = data.reps[i].name();
        report.record(
            format!("radical is a submodule [{name}]"),
            acts.iter().enumerate().try_for_each(|(s, a)| {
                ensure(rad.iter().all(|v| in_span(&rad, &a.mul_vec(v))), || format!("T_s{}", s + 1))
            }),
        );
        ranks.push(g.rows() - rad.len());
        if rad.len() < g.rows() {
            simples.push((i, quotient(acts, &rad)));
        }
    }

    let mut decomposition = Vec::new();
    for (i, acts) in modules.iter().enumerate() {
        let row = composition_factors(acts, &simples)
            .map_err(|e| Error::Specialization(format!("{}: {e}", data.reps[i].name())))?;
        decomposition.push(row);
    }

    let lambda_circ: Vec<usize> = simples.iter().map(|(i, _)| *i).collect();
    let a: Vec<u32> = data.reps.iter().map(|r| r.a).collect();
    let dims: Vec<usize> = data.reps.iter().map(|r| r.dim).collect();
    report.record(
        "composition lengths",
        (0..dims.len()).try_for_each(|i| {
            let total: usize = decomposition[i].iter().zip(&simples).map(|(m, (j, _))| m * ranks[*j]).sum();
            ensure(total == dims[i], || format!("{}: factors have total dimension {total}", data.reps[i].name()))
        }),
    );
    report.record("unitriangularity", check_delta(&a, &lambda_circ, &decomposition, data.reps));

    Ok(SpecializedData {
        specialization: sp.describe(),
        labels: data.reps.iter().map(JIrrep::name).collect(),
        a,
        dims,
        gram_ranks: ranks,
        lambda_circ,
        decomposition,
        report,
    })
}

/// `[W(mu) : L^mu] = 1`, and `[W(lambda) : L^mu] = 0` unless `lambda = mu`
/// or `a_mu < a_lambda`.
fn check_delta(a: &[u32], circ: &[usize], d: &[Vec<usize>], reps: &[JIrrep]) -> std::result::Result<(), String> {
    for (j, &mu) in circ.iter().enumerate() {
        ensure(d[mu][j] == 1, || format!("[W({0}) : L({0})] = {1}", reps[mu].name(), d[mu][j]))?;
        for (lambda, row) in d.iter().enumerate() {
            ensure(row[j] == 0 || lambda == mu || a[mu] < a[lambda], || {
                format!("[W({}) : L({})] = {}", reps[lambda].name(), reps[mu].name(), row[j])
            })?;
        }
    }
    Ok(())
}

fn in_span<K: Field>(basis: &[Vec<K>], v: &[K]) -> bool {
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    linalg::span_basis(&all, v.len()).len() == linalg::span_basis(basis, v.len()).len()
}

/// Action on `M / S` for an invariant subspace `S` spanned by `sub`.
fn quotient<K: Field>(acts: &[Matrix<K>], sub: &[Vec<K>]) -> Vec<Matrix<K>> {
    let d = acts.first().map_or(0, Matrix::rows);
    let basis = linalg::span_basis(sub, d);
    let r = basis.len();
    let (_, pivots) = linalg::rref(&Matrix::from_rows(if r == 0 { vec![vec![K::zero(); d]] } else { basis.clone() }));
    let mut cols = basis;
    for j in (0..d).filter(|j| r == 0 || !pivots.contains(j)) {
        let mut e = vec![K::zero(); d];
        e[j] = K::one();
        cols.push(e);
    }
    let p = Matrix::from_fn(d, d, |i, j| cols[j][i].clone());
    let pi = linalg::inverse(&p).expect("completed basis");
    let keep: Vec<usize> = (r..d).collect();
    acts.iter().map(|a| pi.mul(&a.mul(&p)).select(&keep, &keep)).collect()
}

/// Basis of `Hom(L, M)` as `dim M x dim L` matrices.
fn homs<K: Field>(l: &[Matrix<K>], m: &[Matrix<K>]) -> Vec<Matrix<K>> {
    let (dl, dm) = (l[0].rows(), m[0].rows());
    let unknowns = dl * dm;
    let mut rows = Vec::new();
    for (rl, rm) in l.iter().zip(m) {
        for i in 0..dm {
            for j in 0..dl {
                // (R_M X - X R_L)_{ij}
                let mut eq = vec![K::zero(); unknowns];
                for k in 0..dm {
                    eq[k * dl + j] += rm[(i, k)].clone();
                }
                for k in 0..dl {
                    eq[i * dl + k] -= rl[(k, j)].clone();
                }
                rows.push(eq);
            }
        }
    }
    linalg::nullspace(&Matrix::from_rows(rows)).into_iter().map(|v| Matrix::from_vec(dm, dl, v)).collect()
}

/// Multiplicity of each simple in `M`, found by repeatedly removing the socle.
fn composition_factors<K: Field>(
    acts: &[Matrix<K>],
    simples: &[(usize, Vec<Matrix<K>>)],
) -> std::result::Result<Vec<usize>, String> {
    let mut mult = vec![0; simples.len()];
    let mut m = acts.to_vec();
    while m.first().is_some_and(|a| a.rows() > 0) {
        let d = m[0].rows();
        let mut socle = Vec::new();
        for (j, (_, l)) in simples.iter().enumerate() {
            let hs = homs(l, &m);
            mult[j] += hs.len();
            for h in hs {
                socle.extend((0..h.cols()).map(|c| h.column(c)));
            }
        }
        let socle = linalg::span_basis(&socle, d);
        if socle.is_empty() {
            return Err(format!("a {d}-dimensional subquotient has no simple submodule among the L"));
        }
        m = quotient(&m, &socle);
    }
    Ok(mult)
}

/// Aligned text table of the decomposition matrix.
pub fn decomposition_text(data: &SpecializedData) -> String {
    let width = data.labels.iter().map(String::len).max().unwrap_or(1).max(3);
    let mut out = format!("{:>width$} ", "");
    for &j in &data.lambda_circ {
        out += &format!("{:>width$}", data.labels[j]);
    }
    out.push('\n');
    for (i, row) in data.decomposition.iter().enumerate() {
        out += &format!("{:>width$} ", data.labels[i]);
        for x in row {
            out += &format!("{x:>width$}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::pipeline;
    use num_traits::One;
    use proptest::prelude::*;

    fn sp(field: &str, at: &str) -> Specialization {
        Specialization::parse(field, at).unwrap()
    }

    #[test]
    fn unit_and_sign_modules() {
        for (t, w) in [("A2", "1,1"), ("B2", "1,1"), ("B2", "2,1"), ("G2", "1,1")] {
            let p = pipeline(t, w);
            let g = p.group();
            let unit = p.modules.first().unwrap();
            let sign = p.modules.last().unwrap();
            for s in 0..g.rank() {
                let vl = p.alg().v_l(s);
                assert_eq!(unit.actions[s][(0, 0)], vl, "{t}");
                assert_eq!(sign.actions[s][(0, 0)], -vl.bar(), "{t}");
            }
        }
    }

    #[test]
    fn b2_two_dimensional_trace() {
        let p = pipeline("B2", "1,1");
        let r = p.modules.iter().find(|m| m.dim == 2).unwrap();
        let want = Poly::v_pow(1) - Poly::v_pow(-1);
        for a in &r.actions {
            assert_eq!(a.trace(), want);
        }
    }

    #[test]
    fn modules_and_forms() {
        for (t, w) in
            [("A1", "1"), ("A2", "1,1"), ("A3", "1,1,1"), ("B2", "1,1"), ("B2", "2,1"), ("G2", "1,1"), ("G2", "3,1")]
        {
            let p = pipeline(t, w);
            for ((m, g), rep) in p.modules.iter().zip(&p.grams).zip(&p.reps) {
                m.check_relations(p.alg()).unwrap();
                let r = check_gram(m, g, rep);
                assert!(r.all_passed(), "{t} {w}: {:?}", r.failures().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn unit_gram_entry() {
        let p = pipeline("A2", "1,1");
        assert_eq!(p.grams[0][(0, 0)], Poly::one());
    }

    fn is_identity(d: &[Vec<usize>]) -> bool {
        d.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == usize::from(i == j)))
    }

    #[test]
    fn generic_point_is_semisimple() {
        for t in [("A2", "1,1"), ("B2", "1,1"), ("G2", "1,1")] {
            let p = pipeline(t.0, t.1);
            for s in [sp("Q", "v=1"), sp("Q", "v=2"), sp("Fp:7", "v=1")] {
                let d = p.specialize(&s).unwrap();
                assert!(d.report.all_passed(), "{:?}", d.report);
                assert_eq!(d.gram_ranks, d.dims);
                assert_eq!(d.lambda_circ, (0..d.dims.len()).collect::<Vec<_>>());
                assert!(is_identity(&d.decomposition), "{t:?} {}", d.specialization);
            }
        }
    }

    #[test]
    fn bad_characteristic_rejected() {
        let p = pipeline("B2", "1,1");
        assert!(matches!(p.specialize(&sp("Fp:2", "v=1")), Err(Error::Specialization(_))));
        let g2 = pipeline("G2", "1,1");
        assert!(g2.specialize(&sp("Fp:3", "v=1")).is_err());
        assert!(g2.specialize(&sp("Fp:5", "v=1")).is_ok());
    }

    #[test]
    fn invalid_specializations() {
        assert!(Specialization::parse("Q", "v=0").is_err());
        assert!(Specialization::parse("Fp:4", "v=1").is_err());
        assert!(Specialization::parse("Fp:3", "v=3").is_err());
        assert!(Specialization::parse("Fp:3", "v=1/3").is_err());
        assert!(Specialization::parse("R", "v=1").is_err());
        assert!(Specialization::parse("Q", "q=1").is_err());
        assert!(Specialization::parse("Cyc:3", "v=2").is_err());
    }

    type F3 = Fp<3>;

    /// Scalars of `T_s` on the one-dimensional composition factors, found by
    /// enumerating `F_3^d` for `d <= 2`.
    fn brute_force_factors(acts: &[Matrix<F3>]) -> Vec<Vec<u64>> {
        let d = acts[0].rows();
        if d == 1 {
            return vec![acts.iter().map(|a| a[(0, 0)].value()).collect()];
        }
        assert_eq!(d, 2);
        for x in 0..3 {
            for y in 0..3 {
                if x == 0 && y == 0 {
                    continue;
                }
                let v = [F3::new(x), F3::new(y)];
                let mut sub = Vec::new();
                let invariant = acts.iter().all(|a| {
                    let w = a.mul_vec(&v);
                    (0..3).map(F3::new).find(|c| w[0] == *c * v[0] && w[1] == *c * v[1]).map(|c| sub.push(c)).is_some()
                });
                if invariant {
                    let quot = acts.iter().zip(&sub).map(|(a, c)| (a.trace() - *c).value()).collect();
                    return vec![sub.iter().map(|c| c.value()).collect(), quot];
                }
            }
        }
        panic!("no invariant line");
    }

    #[test]
    fn a2_mod_3() {
        let p = pipeline("A2", "1,1");
        let d = p.specialize(&sp("Fp:3", "v=1")).unwrap();
        assert!(d.report.all_passed(), "{:?}", d.report);
        assert_eq!(d.decomposition.len(), 3);
        assert_eq!(d.dims, vec![1, 2, 1]);

        let one = F3::one();
        let eval = |m: &PolyMatrix| m.map(|q| q.evaluate(&one, &one, F3::from_bigint));
        let simple_scalars: Vec<Vec<u64>> = d
            .lambda_circ
            .iter()
            .map(|&j| {
                let g = eval(&p.grams[j]);
                let rad = linalg::nullspace(&g);
                let acts: Vec<Matrix<F3>> = p.modules[j].actions.iter().map(eval).collect();
                assert_eq!(g.rows() - rad.len(), 1, "simples of F_3 S_3 are one-dimensional");
                brute_force_factors(&quotient(&acts, &rad))[0].clone()
            })
            .collect();
        for (i, m) in p.modules.iter().enumerate() {
            let acts: Vec<Matrix<F3>> = m.actions.iter().map(eval).collect();
            let mut expected = vec![0; simple_scalars.len()];
            for f in brute_force_factors(&acts) {
                let j = simple_scalars.iter().position(|s| *s == f).expect("factor among the simples");
                expected[j] += 1;
            }
            assert_eq!(d.decomposition[i], expected, "row {i}");
        }
        // trivial and sign modules are the simples; W(r) has one of each
        assert_eq!(d.lambda_circ.len(), 2);
        assert_eq!(d.decomposition[1].iter().sum::<usize>(), 2);
    }

    #[test]
    fn b2_mod_3_and_cyclotomic() {
        let p = pipeline("B2", "1,1");
        for s in [sp("Fp:3", "v=1"), sp("Fp:5", "v=2"), sp("Cyc:4", "v=z"), sp("Cyc:8", "v=z")] {
            let d = p.specialize(&s).unwrap();
            assert!(d.report.all_passed(), "{}: {:?}", d.specialization, d.report);
        }
        // v^2 = -1 makes the quadratic relation degenerate
        let d = p.specialize(&sp("Cyc:4", "v=z")).unwrap();
        assert!(!is_identity(&d.decomposition));
    }

    fn poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-4i32..5, -20i64..21), 0..5)
            .prop_map(|t| Poly::from_terms(t.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_map(p in poly(), q in poly(), x in 1u64..7) {
            type F7 = Fp<7>;
            let x = F7::new(x);
            let xi = x.inv().unwrap();
            let ev = |a: &Poly| a.evaluate(&x, &xi, F7::from_bigint);
            prop_assert_eq!(ev(&(p.clone() * q.clone())), ev(&p) * ev(&q));
            prop_assert_eq!(ev(&(p.clone() + q.clone())), ev(&p) + ev(&q));
        }
    }
}
