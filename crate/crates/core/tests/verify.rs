use hecke_cellular::coxeter::{WeightFunction, DEFAULT_ORDER_CAP};
use hecke_cellular::pipeline::{Pipeline, Tables};

fn verify(t: &str, w: &str) {
    let ct = t.parse().unwrap();
    let tables = Tables::build(ct, WeightFunction::parse(ct, w).unwrap(), DEFAULT_ORDER_CAP, None).unwrap();
    let p = Pipeline::build(tables, 0).unwrap();
    let r = p.verify();
    let failures: Vec<_> = r.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
    assert!(failures.is_empty(), "{t} {w}: {failures:#?}");
}

#[test]
fn equal_parameters() {
    for (t, w) in [("A1", "1"), ("A2", "1,1"), ("A3", "1,1,1"), ("B2", "1,1"), ("G2", "1,1")] {
        verify(t, w);
    }
}

#[test]
fn b3_equal_parameters() {
    verify("B3", "1,1,1");
}

#[test]
fn unequal_parameters() {
    for (t, w) in [("B2", "2,1"), ("B2", "1,2"), ("G2", "2,1"), ("B3", "2,1,1")] {
        verify(t, w);
    }
}
