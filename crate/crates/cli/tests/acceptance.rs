//! Acceptance criteria. Prints one line per criterion and exits nonzero if
//! any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};

use hecke_cellular::cellmod::Specialization;
use hecke_cellular::coxeter::{WeightFunction, DEFAULT_ORDER_CAP};
use hecke_cellular::exactalg::integer::{det_int, prime_factors};
use hecke_cellular::pipeline::{Pipeline, Tables};
use hecke_cellular::report::Report;
use hecke_cellular::{cellular, jreps, Error};
use hecke_cellular_cli::golden;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn build(t: &str, w: &str) -> Pipeline {
    let ct = t.parse().unwrap();
    let tables = Tables::build(ct, WeightFunction::parse(ct, w).unwrap(), DEFAULT_ORDER_CAP, None).unwrap();
    Pipeline::build(tables, 0).unwrap()
}

fn equal(t: &str) -> Pipeline {
    let rank: usize = t[1..].parse().unwrap();
    build(t, &vec!["1"; rank].join(","))
}

const TYPES: &[&str] = &["A1", "A2", "A3", "B2", "B3", "G2"];

/// Primes that may divide the data for each type.
fn table_bad_primes(t: &str) -> BTreeSet<u64> {
    match &t[..1] {
        "A" => BTreeSet::new(),
        "B" | "C" | "D" => [2].into(),
        "G" => [2, 3].into(),
        _ => unreachable!(),
    }
}

fn require(report: &Report, names: &[&str], context: &str) -> Outcome {
    for name in names {
        match report.get(name) {
            Some(c) if c.passed => {}
            Some(c) => return Err(format!("{context}: {name}: {}", c.detail)),
            None => return Err(format!("{context}: no check named {name}")),
        }
    }
    Ok(())
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let t = start.elapsed();
    if t <= limit {
        Ok(())
    } else {
        Err(format!("took {t:?}, limit {limit:?}"))
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let p = equal("B2");
    let gold = golden::compare("b2", &p).ok_or("golden table not applicable")?;
    if let Some(row) = gold.rows.iter().find(|r| !r.passed) {
        return Err(format!("{}: expected {}, computed {}", row.item, row.expected, row.computed));
    }
    if gold.rows.len() != 23 {
        return Err(format!("{} golden rows", gold.rows.len()));
    }
    within(start, Duration::from_secs(60))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    for t in ["A2", "A3"] {
        let p = equal(t);
        let n = p.group().order();
        let signs = p.datum.signed_dagger_basis(n).ok_or(format!("{t}: C is not a signed c-dagger basis"))?;
        if let Some(w) = signs.iter().position(|&s| s != 1) {
            return Err(format!("{t}: sign -1 at {}", p.group().name(w)));
        }
        let det = det_int(&p.datum.transition_matrix(n));
        if !det.abs().is_one() {
            return Err(format!("{t}: transition determinant {det}"));
        }
    }
    within(start, Duration::from_secs(60))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let p = build("B2", "2,1");
    let n = p.group().order();
    let signs = p.datum.signed_dagger_basis(n).ok_or("C is not a signed c-dagger basis")?;
    let negative: Vec<String> = (0..n).filter(|&w| signs[w] != 1).map(|w| p.group().name(w)).collect();
    if !negative.is_empty() {
        return Err(format!("C = -c_w for w in {negative:?}"));
    }
    within(start, Duration::from_secs(60))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    for t in TYPES {
        let p = equal(t);
        let n = p.group().order();
        let report = cellular::check_axioms(&p.datum, &p.axiom_inputs());
        require(&report, &["C on the a-stratum", "C1", "C2", "C3", "reconstruction identity"], t)?;
        let det = det_int(&p.datum.transition_matrix(n));
        if det.is_zero() {
            return Err(format!("{t}: singular transition matrix"));
        }
        let primes: BTreeSet<u64> = prime_factors(&det).into_iter().collect();
        if !primes.is_subset(&table_bad_primes(t)) {
            return Err(format!("{t}: determinant {det} has primes {primes:?}"));
        }
    }
    within(start, Duration::from_secs(600))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    for t in TYPES {
        let p = equal(t);
        let alg = p.alg();
        let mut report = p.cells.check(alg);
        report.extend(p.j.check(alg, &p.cells));
        report.extend(p.phi.check(alg, &p.tables.kl, &p.dagger, &p.j));
        require(
            &report,
            &[
                "P1",
                "P4",
                "P5 n_d = ±1",
                "P5 gamma(x,y,d) != 0 implies x = y^-1",
                "P5 gamma(x^-1,x,d) = n_d",
                "P7",
                "P8",
                "P13",
                "gamma inverse symmetry",
                "1_J is a two-sided identity",
                "associativity",
                "phi multiplicative",
                "phi_1 invertible",
            ],
            t,
        )?;
    }
    within(start, Duration::from_secs(600))
}

fn criterion_6() -> Outcome {
    for t in TYPES {
        let p = equal(t);
        let report = jreps::check(p.group(), &p.cells, &p.j, &p.reps);
        require(&report, &["Schur relations", "second Schur relations"], t)?;
        if t.starts_with('A') {
            if let Some(r) = p.reps.iter().find(|r| !r.f.is_one()) {
                return Err(format!("{t}: f = {} for {}", r.f, r.name()));
            }
        }
        let primes: BTreeSet<u64> = jreps::primes_of_data(&p.reps).into_iter().collect();
        if primes != table_bad_primes(t) {
            return Err(format!("{t}: primes of f and det B are {primes:?}"));
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    for t in TYPES {
        let p = equal(t);
        let n = p.group().order();
        let total: usize = p.reps.iter().map(|r| r.dim * r.dim).sum();
        if total != n {
            return Err(format!("{t}: sum of squares {total} for order {n}"));
        }
        for r in &p.reps {
            for w in 0..n {
                if p.cells.adata.a[w] != r.a && !r.matrices[w].is_zero() {
                    return Err(format!("{t}: {} acts on t_{} outside its a-stratum", r.name(), p.group().name(w)));
                }
            }
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    for t in ["A2", "B2"] {
        let p = equal(t);
        for (r, g) in p.reps.iter().zip(&p.grams) {
            for s in 0..r.dim {
                for u in 0..r.dim {
                    let shifted = g[(s, u)].shift(r.a as i32);
                    let want = &r.f * &r.b[(s, u)];
                    if shifted.min_exp().is_some_and(|e| e < 0) || shifted.coeff_at(0) != want {
                        return Err(format!("{t} {} ({s},{u}): v^a g = {shifted}, f B = {want}", r.name()));
                    }
                }
            }
        }
    }
    Ok(())
}

fn is_identity(d: &[Vec<usize>]) -> bool {
    d.iter()
        .enumerate()
        .all(|(i, row)| row.len() == d.len() && row.iter().enumerate().all(|(j, &x)| x == usize::from(i == j)))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let at_one = Specialization::parse("Q", "v=1").unwrap();
    for t in ["A2", "B2"] {
        let d = equal(t).specialize(&at_one).map_err(|e| format!("{t}: {e}"))?;
        if !is_identity(&d.decomposition) {
            return Err(format!("{t} over Q: {:?}", d.decomposition));
        }
    }
    let a2 = equal("A2");
    let d = a2.specialize(&Specialization::parse("Fp:3", "v=1").unwrap()).map_err(|e| e.to_string())?;
    if d.decomposition.len() != 3 {
        return Err(format!("{} rows", d.decomposition.len()));
    }
    for (j, &mu) in d.lambda_circ.iter().enumerate() {
        if d.decomposition[mu][j] != 1 {
            return Err(format!("[W(mu):L(mu)] = {} for mu = {}", d.decomposition[mu][j], d.labels[mu]));
        }
        for (l, row) in d.decomposition.iter().enumerate() {
            if row[j] != 0 && l != mu && d.a[mu] >= d.a[l] {
                return Err(format!("[W({}):L({})] = {} breaks unitriangularity", d.labels[l], d.labels[mu], row[j]));
            }
        }
    }
    match equal("B2").specialize(&Specialization::parse("Fp:2", "v=1").unwrap()) {
        Err(Error::Specialization(_)) => {}
        other => return Err(format!("F_2 for B2 was not rejected: {:?}", other.map(|d| d.decomposition))),
    }
    within(start, Duration::from_secs(60))
}

fn criterion_10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_hecke-cellular");
    let run = || -> Result<Vec<u8>, String> {
        let cache = tempfile::tempdir().map_err(|e| e.to_string())?;
        let out = Command::new(bin)
            .args(["cellular", "--type", "B2", "--weights", "1,1", "--out", "json", "--seed", "7"])
            .arg("--cache")
            .arg(cache.path())
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
        }
        Ok(out.stdout)
    };
    let (a, b) = (run()?, run()?);
    if a.is_empty() || a != b {
        return Err(format!("outputs differ ({} and {} bytes)", a.len(), b.len()));
    }
    serde_json::from_slice::<serde_json::Value>(&a).map_err(|e| format!("not JSON: {e}"))?;
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("B2 golden reproduction", criterion_1),
        ("type A collapse to the c-dagger basis", criterion_2),
        ("B2 weights 2,1 gives the c-dagger basis with all signs +1", criterion_3),
        ("cell datum axioms C1 C2 C3", criterion_4),
        ("P-properties, J identity and associativity, phi", criterion_5),
        ("Schur relations and bad primes", criterion_6),
        ("completeness and a-stratum support", criterion_7),
        ("Gram leading-term identity", criterion_8),
        ("specializations and decomposition matrices", criterion_9),
        ("reproducible JSON", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.2}s): {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
