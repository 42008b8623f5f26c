//! Embedded reference table for B2 with equal parameters.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use hecke_cellular::coxeter::{CoxeterGroup, Elem};
use hecke_cellular::exactalg::integer::lattice_basis;
use hecke_cellular::pipeline::Pipeline;
use hecke_cellular::{IntMatrix, Poly};

/// Names of the available golden tables.
pub const NAMES: &[&str] = &["b2"];

const LEFT_CELLS: &[&[&str]] = &[&["1"], &["s1", "s2s1", "s1s2s1"], &["s2", "s1s2", "s2s1s2"], &["w0"]];

type Terms = &'static [(&'static str, i64)];

/// `t_x t_y = sum c t_z`.
const J_RELATIONS: &[(&str, &str, Terms)] = &[
    ("1", "1", &[("1", 1)]),
    ("w0", "w0", &[("w0", 1)]),
    ("s1", "s1", &[("s1", 1)]),
    ("s1", "s1s2", &[("s1s2", 1)]),
    ("s1", "s1s2s1", &[("s1s2s1", 1)]),
    ("s2", "s2", &[("s2", 1)]),
    ("s2", "s2s1", &[("s2s1", 1)]),
    ("s2", "s2s1s2", &[("s2s1s2", 1)]),
    ("s1s2", "s2s1", &[("s1", 1), ("s1s2s1", 1)]),
    ("s1s2", "s2s1s2", &[("s1s2", 1)]),
    ("s2s1", "s1s2", &[("s2", 1), ("s2s1s2", 1)]),
    ("s2s1", "s1s2s1", &[("s2s1", 1)]),
    ("s1s2s1", "s1s2s1", &[("s1", 1)]),
    ("s2s1s2", "s2s1s2", &[("s2", 1)]),
];

const A_INVARIANTS: &[u32] = &[0, 1, 1, 1, 4];

/// The two-dimensional representation, row-major; unlisted elements act by 0.
const R_MATRICES: &[(&str, [i64; 4])] = &[
    ("s1", [1, 0, 0, 0]),
    ("s2s1", [0, 0, -1, 0]),
    ("s1s2s1", [1, 0, 0, 0]),
    ("s2", [0, 0, 0, 1]),
    ("s1s2", [0, -2, 0, 0]),
    ("s2s1s2", [0, 0, 0, 1]),
];

const R_FORM: [i64; 4] = [1, 0, 0, 2];

/// One-dimensional representations: name, `T_s1 -> sign v^m`, `T_s2 -> sign v^m`,
/// and the cellular basis element.
type OneDim = (&'static str, (i64, i32), (i64, i32), &'static [(&'static str, i64)]);
const ONE_DIMENSIONAL: &[OneDim] = &[
    ("unit", (1, 1), (1, 1), &[("1", 1)]),
    ("sign", (-1, -1), (-1, -1), &[("w0", 1)]),
    ("eps1", (1, 1), (-1, -1), &[("s2", 1), ("s2s1s2", -1)]),
    ("eps2", (-1, -1), (1, 1), &[("s1", 1), ("s1s2s1", -1)]),
];

const R_ELEMENTS: &[&[(&str, i64)]] =
    &[&[("s1", 1), ("s1s2s1", 1)], &[("s1s2", -2)], &[("s2s1", -2)], &[("s2", 2), ("s2s1s2", 2)]];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenRow {
    pub item: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenReport {
    pub name: String,
    pub rows: Vec<GoldenRow>,
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn text(&self) -> String {
        let w0 = self.rows.iter().map(|r| r.item.len()).max().unwrap_or(4).max(4);
        let w1 = self.rows.iter().map(|r| r.expected.len()).max().unwrap_or(8).max(8);
        let mut out = format!("{:<w0$}  {:<w1$}  {}\n", "item", "expected", "computed");
        for r in &self.rows {
            let mark = if r.passed { "ok" } else { "MISMATCH" };
            out += &format!("{:<w0$}  {:<w1$}  {}  [{mark}]\n", r.item, r.expected, r.computed);
        }
        out
    }
}

fn elem(g: &CoxeterGroup, name: &str) -> Elem {
    if name == "w0" {
        g.longest()
    } else {
        g.parse_element(name).unwrap_or_else(|| panic!("bad element {name}"))
    }
}

fn name(g: &CoxeterGroup, w: Elem) -> String {
    if w == g.longest() {
        "w0".into()
    } else {
        g.name(w)
    }
}

fn terms_text(g: &CoxeterGroup, terms: &[(Elem, BigInt)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut terms = terms.to_vec();
    terms.sort();
    terms.iter().map(|(w, c)| format!("{c}*{}", name(g, *w))).collect::<Vec<_>>().join(" + ")
}

fn matrix_text(m: &IntMatrix) -> String {
    let rows: Vec<&[BigInt]> = (0..m.rows()).map(|i| m.row(i)).collect();
    format!("{rows:?}")
}

fn resolve(g: &CoxeterGroup, terms: &[(&str, i64)]) -> Vec<(Elem, BigInt)> {
    let mut v: Vec<(Elem, BigInt)> = terms.iter().map(|(n, c)| (elem(g, n), BigInt::from(*c))).collect();
    v.sort();
    v
}

fn dense(n: usize, terms: &[(Elem, BigInt)]) -> Vec<BigInt> {
    let mut v = vec![BigInt::from(0); n];
    for (w, c) in terms {
        v[*w] = c.clone();
    }
    v
}

/// Compares the computed data against the table. `None` if `name` is unknown
/// or the pipeline is not B2 with equal parameters.
pub fn compare(name_: &str, p: &Pipeline) -> Option<GoldenReport> {
    let g = p.group();
    if name_ != "b2" || g.cartan_type().to_string() != "B2" || p.alg().weights().values() != [1, 1] {
        return None;
    }
    let n = g.order();
    let mut rows = Vec::new();
    let mut push = |item: String, expected: String, computed: String| {
        let passed = expected == computed;
        rows.push(GoldenRow { item, expected, computed, passed });
    };

    let cells_text = |cells: BTreeSet<BTreeSet<String>>| {
        cells
            .iter()
            .map(|c| format!("{{{}}}", c.iter().cloned().collect::<Vec<_>>().join(",")))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let expected: BTreeSet<BTreeSet<String>> =
        LEFT_CELLS.iter().map(|c| c.iter().map(|s| s.to_string()).collect()).collect();
    let computed: BTreeSet<BTreeSet<String>> =
        p.cells.partition.left_cells().iter().map(|c| c.iter().map(|&w| name(g, w)).collect()).collect();
    push("left cells".into(), cells_text(expected), cells_text(computed));

    for (x, y, rhs) in J_RELATIONS {
        let (xe, ye) = (elem(g, x), elem(g, y));
        let mut got: Vec<(Elem, BigInt)> = p.j.product(xe, ye).to_vec();
        got.sort();
        push(format!("t_{x} t_{y}"), terms_text(g, &resolve(g, rhs)), terms_text(g, &got));
    }

    let mut a: Vec<u32> = p.reps.iter().map(|r| r.a).collect();
    a.sort_unstable();
    push("a-invariants".into(), format!("{A_INVARIANTS:?}"), format!("{a:?}"));

    let two: Vec<_> = p.reps.iter().filter(|r| r.dim == 2).collect();
    if let [r] = two.as_slice() {
        let mut trace = vec![BigInt::from(0); n];
        for (w, m) in R_MATRICES {
            trace[elem(g, w)] = BigInt::from(m[0] + m[3]);
        }
        push("character of r".into(), format!("{trace:?}"), format!("{:?}", r.character));
        let form = IntMatrix::from_vec(2, 2, R_FORM.iter().map(|&x| BigInt::from(x)).collect());
        push("B for r".into(), matrix_text(&form), matrix_text(&r.b));
        let expected: Vec<Vec<BigInt>> = R_ELEMENTS.iter().map(|t| dense(n, &resolve(g, t))).collect();
        let computed: Vec<Vec<BigInt>> =
            p.datum.elements.iter().filter(|e| e.lambda == r.label).map(|e| dense(n, &e.coeffs)).collect();
        push(
            "lattice spanned by C for r".into(),
            format!("{:?}", lattice_basis(&expected, n)),
            format!("{:?}", lattice_basis(&computed, n)),
        );
    } else {
        push("character of r".into(), "one 2-dimensional representation".into(), format!("{}", two.len()));
    }

    let action = |(sign, m): (i64, i32)| Poly::monomial(BigInt::from(sign), m);
    for (label, s1, s2, element) in ONE_DIMENSIONAL {
        let want = [action(*s1), action(*s2)];
        let expected = terms_text(g, &resolve(g, element));
        let computed = p
            .modules
            .iter()
            .find(|m| m.dim == 1 && m.actions.iter().zip(&want).all(|(a, w)| a[(0, 0)] == *w))
            .map(|m| terms_text(g, &p.datum.get(m.lambda, 0, 0).coeffs))
            .unwrap_or_else(|| "no such module".into());
        push(format!("C for {label}"), expected, computed);
    }

    Some(GoldenReport { name: name_.to_string(), rows })
}
