//! Text and JSON renderings of each stage.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use hecke_cellular::cellmod::{decomposition_text, SpecializedData};
use hecke_cellular::coxeter::{CoxeterGroup, Elem, WeightFunction};
use hecke_cellular::exactalg::json::JsonInt;
use hecke_cellular::pipeline::{Pipeline, Tables};
use hecke_cellular::report::Report;
use hecke_cellular::{IntMatrix, Poly};

use crate::golden::GoldenReport;

#[derive(Serialize)]
struct Header {
    #[serde(rename = "type")]
    cartan_type: String,
    weights: Vec<i32>,
    order: usize,
}

fn header(g: &CoxeterGroup, w: &WeightFunction) -> Header {
    Header { cartan_type: g.cartan_type().to_string(), weights: w.values().to_vec(), order: g.order() }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn int(x: &BigInt) -> JsonInt {
    JsonInt(x.clone())
}

fn names(g: &CoxeterGroup, ws: &[Elem]) -> Vec<String> {
    ws.iter().map(|&w| g.name(w)).collect()
}

fn sets_text(g: &CoxeterGroup, sets: &[Vec<Elem>]) -> String {
    sets.iter().map(|c| format!("{{{}}}", names(g, c).join(", "))).collect::<Vec<_>>().join("\n")
}

#[derive(Serialize)]
struct Term {
    element: String,
    coeff: JsonInt,
}

fn terms(g: &CoxeterGroup, ts: &[(Elem, BigInt)]) -> Vec<Term> {
    let mut ts = ts.to_vec();
    ts.sort();
    ts.iter().map(|(w, c)| Term { element: g.name(*w), coeff: int(c) }).collect()
}

fn terms_text(g: &CoxeterGroup, ts: &[(Elem, BigInt)], var: &str) -> String {
    if ts.is_empty() {
        return "0".into();
    }
    let mut ts = ts.to_vec();
    ts.sort();
    let mut out = String::new();
    for (i, (w, c)) in ts.iter().enumerate() {
        match (i, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.magnitude();
        if !mag.is_one() {
            let _ = write!(out, "{mag}*");
        }
        let _ = write!(out, "{var}_{}", g.name(*w));
    }
    out
}

fn matrix_rows(m: &IntMatrix) -> Vec<Vec<JsonInt>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(int).collect()).collect()
}

fn matrix_text(m: &IntMatrix) -> String {
    let rows: Vec<String> =
        (0..m.rows()).map(|i| m.row(i).iter().map(BigInt::to_string).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", rows.join("; "))
}

fn report_text(r: &Report) -> String {
    let mut out = String::new();
    for c in &r.checks {
        if c.passed {
            let _ = writeln!(out, "  pass  {}", c.name);
        } else {
            let _ = writeln!(out, "  FAIL  {}: {}", c.name, c.detail);
        }
    }
    let failed = r.failures().count();
    let _ = writeln!(out, "{} checks, {} failed", r.checks.len(), failed);
    out
}

pub fn group(g: &CoxeterGroup, w: &WeightFunction, json: bool) -> String {
    #[derive(Serialize)]
    struct Element {
        index: usize,
        name: String,
        length: u32,
        weight: i32,
        inverse: String,
    }
    #[derive(Serialize)]
    struct Out {
        #[serde(flatten)]
        header: Header,
        rank: usize,
        coxeter_matrix: Vec<Vec<u32>>,
        longest: String,
        elements: Vec<Element>,
    }
    let elements: Vec<Element> = g
        .elements()
        .map(|x| Element {
            index: x,
            name: g.name(x),
            length: g.length(x),
            weight: w.weight(g, x),
            inverse: g.name(g.inverse(x)),
        })
        .collect();
    if json {
        return to_json(&Out {
            header: header(g, w),
            rank: g.rank(),
            coxeter_matrix: g.coxeter_matrix().to_vec(),
            longest: g.name(g.longest()),
            elements,
        });
    }
    let mut out = format!(
        "type {} weights {:?}: order {}, longest element {}\n",
        g.cartan_type(),
        w.values(),
        g.order(),
        g.name(g.longest())
    );
    for e in elements {
        let _ =
            writeln!(out, "{:>5}  {:<24} l={:<3} L={:<3} inverse {}", e.index, e.name, e.length, e.weight, e.inverse);
    }
    out
}

pub fn kl(t: &Tables, json: bool) -> String {
    #[derive(Serialize)]
    struct Entry {
        y: String,
        w: String,
        p: Poly,
    }
    #[derive(Serialize)]
    struct Out {
        #[serde(flatten)]
        header: Header,
        polynomials: Vec<Entry>,
    }
    let g = t.alg.group();
    let entries: Vec<Entry> = g
        .elements()
        .flat_map(|w| {
            t.kl.column(w).iter().filter(move |(y, _)| *y != w).map(move |(y, p)| Entry {
                y: g.name(*y),
                w: g.name(w),
                p: p.clone(),
            })
        })
        .collect();
    if json {
        return to_json(&Out { header: header(g, t.alg.weights()), polynomials: entries });
    }
    let mut out = format!("p(y, w) for y < w, {} nonzero\n", entries.len());
    for e in entries {
        let _ = writeln!(out, "p({}, {}) = {}", e.y, e.w, e.p);
    }
    out
}

pub fn cells(p: &Pipeline, json: bool) -> String {
    #[derive(Serialize)]
    struct Element {
        name: String,
        a: u32,
        delta: u32,
        n: JsonInt,
        distinguished: bool,
    }
    #[derive(Serialize)]
    struct Out {
        #[serde(flatten)]
        header: Header,
        elements: Vec<Element>,
        left_cells: Vec<Vec<String>>,
        right_cells: Vec<Vec<String>>,
        two_sided_cells: Vec<Vec<String>>,
    }
    let g = p.group();
    let ad = &p.cells.adata;
    let part = &p.cells.partition;
    if json {
        let out = Out {
            header: header(g, p.alg().weights()),
            elements: g
                .elements()
                .map(|w| Element {
                    name: g.name(w),
                    a: ad.a[w],
                    delta: ad.delta[w],
                    n: int(&ad.nz[w]),
                    distinguished: ad.in_d(w),
                })
                .collect(),
            left_cells: part.left_cells().iter().map(|c| names(g, c)).collect(),
            right_cells: part.right_cells().iter().map(|c| names(g, c)).collect(),
            two_sided_cells: part.two_sided_cells().iter().map(|c| names(g, c)).collect(),
        };
        return to_json(&out);
    }
    let mut out = String::new();
    let _ = writeln!(out, "left cells:\n{}", sets_text(g, &part.left_cells()));
    let _ = writeln!(out, "two-sided cells:\n{}", sets_text(g, &part.two_sided_cells()));
    let _ = writeln!(out, "distinguished involutions: {}", names(g, &ad.dset).join(", "));
    let _ = writeln!(out, "{:<24} {:>3} {:>5} {:>3}", "w", "a", "Delta", "n");
    for w in g.elements() {
        let _ = writeln!(out, "{:<24} {:>3} {:>5} {:>3}", g.name(w), ad.a[w], ad.delta[w], ad.nz[w]);
    }
    out
}

pub fn jring(p: &Pipeline, json: bool) -> String {
    #[derive(Serialize)]
    struct Product {
        x: String,
        y: String,
        terms: Vec<Term>,
    }
    #[derive(Serialize)]
    struct Out {
        #[serde(flatten)]
        header: Header,
        identity: Vec<Term>,
        products: Vec<Product>,
    }
    let g = p.group();
    let identity: Vec<(Elem, BigInt)> = p.j.identity().support().map(|(w, c)| (w, c.clone())).collect();
    let products: Vec<(Elem, Elem)> = g
        .elements()
        .flat_map(|x| g.elements().map(move |y| (x, y)))
        .filter(|&(x, y)| !p.j.product(x, y).is_empty())
        .collect();
    if json {
        return to_json(&Out {
            header: header(g, p.alg().weights()),
            identity: terms(g, &identity),
            products: products
                .iter()
                .map(|&(x, y)| Product { x: g.name(x), y: g.name(y), terms: terms(g, p.j.product(x, y)) })
                .collect(),
        });
    }
    let mut out = format!("1 = {}\n", terms_text(g, &identity, "t"));
    for (x, y) in products {
        let _ = writeln!(out, "t_{} t_{} = {}", g.name(x), g.name(y), terms_text(g, p.j.product(x, y), "t"));
    }
    out
}

pub fn reps(p: &Pipeline, json: bool) -> String {
    #[derive(Serialize)]
    struct Action {
        element: String,
        matrix: Vec<Vec<JsonInt>>,
    }
    #[derive(Serialize)]
    struct Rep {
        name: String,
        dim: usize,
        a: u32,
        f: JsonInt,
        b: Vec<Vec<JsonInt>>,
        source_cell: usize,
        cell_basis: bool,
        matrices: Vec<Action>,
    }
    #[derive(Serialize)]
    struct Out {
        #[serde(flatten)]
        header: Header,
        bad_primes: Vec<u64>,
        representations: Vec<Rep>,
    }
    let g = p.group();
    if json {
        return to_json(&Out {
            header: header(g, p.alg().weights()),
            bad_primes: p.bad_primes.clone(),
            representations: p
                .reps
                .iter()
                .map(|r| Rep {
                    name: r.name(),
                    dim: r.dim,
                    a: r.a,
                    f: int(&r.f),
                    b: matrix_rows(&r.b),
                    source_cell: r.source_cell,
                    cell_basis: r.cell_basis,
                    matrices: r
                        .support()
                        .map(|w| Action { element: g.name(w), matrix: matrix_rows(&r.matrices[w]) })
                        .collect(),
                })
                .collect(),
        });
    }
    let mut out = format!("bad primes: {:?}\n", p.bad_primes);
    for r in &p.reps {
        let _ = writeln!(out, "{}: dim {}, a = {}, f = {}, B = {}", r.name(), r.dim, r.a, r.f, matrix_text(&r.b));
        for w in r.support() {
            let _ = writeln!(out, "    t_{:<20} {}", g.name(w), matrix_text(&r.matrices[w]));
        }
    }
    out
}

pub fn cellular(p: &Pipeline, report: &Report, gold: Option<&GoldenReport>, json: bool) -> String {
    #[derive(Serialize)]
    struct Element {
        lambda: String,
        s: usize,
        t: usize,
        terms: Vec<Term>,
    }
    #[derive(Serialize)]
    struct Out<'a> {
        #[serde(flatten)]
        header: Header,
        bad_primes: Vec<u64>,
        transition_determinant: JsonInt,
        elements: Vec<Element>,
        report: &'a Report,
        #[serde(skip_serializing_if = "Option::is_none")]
        golden: Option<&'a GoldenReport>,
    }
    let g = p.group();
    let name = |l: usize| p.reps[l].name();
    if json {
        return to_json(&Out {
            header: header(g, p.alg().weights()),
            bad_primes: p.bad_primes.clone(),
            transition_determinant: int(&p.transition_det),
            elements: p
                .datum
                .elements
                .iter()
                .map(|e| Element { lambda: name(e.lambda), s: e.s + 1, t: e.t + 1, terms: terms(g, &e.coeffs) })
                .collect(),
            report,
            golden: gold,
        });
    }
    let mut out = String::new();
    for e in &p.datum.elements {
        let _ = writeln!(out, "C({}; {}, {}) = {}", name(e.lambda), e.s + 1, e.t + 1, terms_text(g, &e.coeffs, "c+"));
    }
    let _ = writeln!(out, "transition determinant {}, bad primes {:?}", p.transition_det, p.bad_primes);
    out += &report_text(report);
    if let Some(gr) = gold {
        let _ = writeln!(out, "\ngolden table {}:", gr.name);
        out += &gr.text();
    }
    out
}

pub fn specialized(p: &Pipeline, d: &SpecializedData, json: bool) -> String {
    #[derive(Serialize)]
    struct Out<'a> {
        #[serde(flatten)]
        header: Header,
        #[serde(flatten)]
        data: &'a SpecializedData,
    }
    if json {
        return to_json(&Out { header: header(p.group(), p.alg().weights()), data: d });
    }
    let mut out = format!("{}\n", d.specialization);
    for (i, l) in d.labels.iter().enumerate() {
        let _ = writeln!(out, "{l}: dim {}, a = {}, rank of form {}", d.dims[i], d.a[i], d.gram_ranks[i]);
    }
    let circ: Vec<&str> = d.lambda_circ.iter().map(|&i| d.labels[i].as_str()).collect();
    let _ = writeln!(out, "nonzero simple heads: {}", circ.join(", "));
    out += "decomposition matrix:\n";
    out += &decomposition_text(d);
    out += &report_text(&d.report);
    out
}

pub fn verify(p: &Pipeline, report: &Report, gold: Option<&GoldenReport>, json: bool) -> String {
    #[derive(Serialize)]
    struct Out<'a> {
        #[serde(flatten)]
        header: Header,
        passed: bool,
        report: &'a Report,
        #[serde(skip_serializing_if = "Option::is_none")]
        golden: Option<&'a GoldenReport>,
    }
    let g = p.group();
    let passed = report.all_passed() && gold.is_none_or(GoldenReport::passed);
    if json {
        return to_json(&Out { header: header(g, p.alg().weights()), passed, report, golden: gold });
    }
    let mut out = format!("verification of {} with weights {:?}\n", g.cartan_type(), p.alg().weights().values());
    out += &report_text(report);
    if let Some(gr) = gold {
        let _ = writeln!(out, "\ngolden table {}:", gr.name);
        out += &gr.text();
    }
    out
}
