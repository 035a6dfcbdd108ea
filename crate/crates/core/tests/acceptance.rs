//! Acceptance criteria, one PASS/FAIL line each.
//!
//! A criterion may be known to be unattainable because the claim it checks is
//! false for some field. Such a criterion prints FAIL together with the
//! counterexample; the process exits non-zero only if a criterion fails in a
//! way other than the documented one.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use common::{orbit_partition, product_classes, sl2_brute, NaiveField, M};
use serde_json::Value;
use sl2q_core::checks::{Check, CheckConfig, CheckResult};
use sl2q_core::field::prime_powers_up_to;
use sl2q_core::product::{class_product_labels, min_g, summarize};
use sl2q_core::{ClassLabel, ClassTable, Elem, Mat2, UClass};

struct Outcome {
    passed: bool,
    detail: String,
    /// Set when the failure is the documented one.
    documented: bool,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Self {
        Outcome { passed: true, detail: detail.into(), documented: false }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Outcome { passed: false, detail: detail.into(), documented: false }
    }
}

fn table(q: u64) -> ClassTable {
    ClassTable::with_order(q).expect("prime power")
}

fn run(check: Check, q: u64) -> CheckResult {
    check.run(&table(q), &CheckConfig::default()).expect("check applies")
}

fn min_g_equals(qs: &[u64], expected: impl Fn(u64) -> usize) -> Outcome {
    let mut parts = Vec::new();
    for &q in qs {
        let got = min_g(&table(q)).expect("noncentral classes exist").min_g;
        if got != expected(q) {
            return Outcome::fail(format!("q={q}: min_g={got}, expected {}", expected(q)));
        }
        parts.push(format!("{q}:{got}"));
    }
    Outcome::pass(parts.join(" "))
}

fn ac1() -> Outcome {
    min_g_equals(&[2, 4, 8, 16, 32], |q| q as usize - 1)
}

fn ac2() -> Outcome {
    min_g_equals(&[5, 7, 9, 11, 13, 25, 27], |q| (q as usize + 3) / 2)
}

fn ac3() -> Outcome {
    min_g_equals(&[3], |_| 2)
}

fn ac4() -> Outcome {
    let mut resolutions = BTreeSet::new();
    for q in [2, 3, 4, 5, 7, 8, 9] {
        for check in [Check::ConjugationFormulas, Check::TraceFormulas] {
            let r = run(check, q);
            if !r.passed || r.details["exhaustive"] != Value::Bool(true) {
                return Outcome::fail(format!("q={q} {check}: {:?}", r.counterexample));
            }
            if let Some(Value::String(form)) = r.details.get("trace.split_unipotent.resolved_form") {
                resolutions.insert(form.clone());
            }
        }
    }
    Outcome::pass(format!("split x unipotent trace resolved as {resolutions:?}"))
}

fn ac5() -> Outcome {
    let qs: Vec<u64> = prime_powers_up_to(16)
        .into_iter()
        .filter(|&q| q % 2 == 0 || q <= 13)
        .collect();
    let mut failures = Vec::new();
    let mut variants = BTreeSet::new();
    for &q in &qs {
        let r = run(Check::CountingLemmas, q);
        if let Some(v) = r.details.get("form.anisotropic") {
            variants.insert(v["holding_variant"].as_str().unwrap_or_default().to_string());
        }
        if let Some(cx) = r.counterexample {
            failures.push((q, cx));
        }
    }
    let variants = format!("anisotropic variant: {variants:?}");
    match failures.as_slice() {
        [] => Outcome::pass(variants),
        [(5, cx)] if cx["claim"] == "form.square_classes" && cx["has_nonsquare"] == false => Outcome {
            passed: false,
            documented: true,
            detail: format!(
                "q=5: {{ax^2+by^2 : x,y != 0}} has no non-square for a={}, b={} (values {{0,1,4}}); \
                 all other q pass; {variants}",
                cx["a"], cx["b"]
            ),
        },
        _ => Outcome::fail(format!("{failures:?}")),
    }
}

fn codes(m: &Mat2) -> M {
    [m.a.code(), m.b.code(), m.c.code(), m.d.code()]
}

fn ac6() -> Outcome {
    let mut pairs = 0;
    for q in [2, 3, 4] {
        let t = table(q);
        let f = NaiveField::new(t.field().p(), t.field().m());
        let part = orbit_partition(&f, &sl2_brute(&f));
        let id = |m: &Mat2| part.class_of[&codes(m)];
        for a in t.entries() {
            for b in t.entries() {
                pairs += 1;
                let ours: BTreeSet<usize> = class_product_labels(&t, &a.representative, &b.representative)
                    .expect("representatives are special")
                    .iter()
                    .map(|l| id(&t.entry(l).expect("label from table").representative))
                    .collect();
                if ours != product_classes(&f, &part, id(&a.representative), id(&b.representative)) {
                    return Outcome::fail(format!("q={q} {}x{}", a.label, b.label));
                }
            }
        }
    }
    let mut elements = 0;
    for q in prime_powers_up_to(9) {
        let t = table(q);
        let f = NaiveField::new(t.field().p(), t.field().m());
        let part = orbit_partition(&f, &sl2_brute(&f));
        let mut label_of = vec![None; part.classes.len()];
        for m in t.elements() {
            elements += 1;
            let label = t.classify(m).expect("element of the group");
            let slot = &mut label_of[part.class_of[&codes(m)]];
            if *slot.get_or_insert(label) != label {
                return Outcome::fail(format!("q={q}: {m} splits an orbit"));
            }
        }
        let distinct: BTreeSet<ClassLabel> = label_of.into_iter().flatten().collect();
        if distinct.len() != part.classes.len() {
            return Outcome::fail(format!("q={q}: labels merge orbits"));
        }
    }
    Outcome::pass(format!("{pairs} class pairs, {elements} elements"))
}

fn ac7() -> Outcome {
    for q in prime_powers_up_to(64) {
        let t = table(q);
        let order = q * (q * q - 1);
        let count = if q % 2 == 0 { q + 1 } else { q + 4 };
        let sum: u64 = t.entries().iter().map(|e| e.size).sum();
        if t.elements().len() as u64 != order || t.len() as u64 != count || sum != order {
            return Outcome::fail(format!(
                "q={q}: |G|={}, classes={}, size sum={sum}",
                t.elements().len(),
                t.len()
            ));
        }
    }
    Outcome::pass("all prime powers q <= 64")
}

fn ac8() -> Outcome {
    for q in prime_powers_up_to(13) {
        let r = run(Check::TraceCoverage, q);
        if !r.passed {
            return Outcome::fail(format!("q={q}: {:?}", r.counterexample));
        }
    }
    let plus = ClassLabel::Unipotent { s: Elem::ONE, u: UClass::Square };
    for q in [2, 4, 8, 16] {
        let t = table(q);
        let ai = t.index_of(&plus).expect("unipotent class");
        for e in t.entries() {
            let ClassLabel::Irreducible { w } = e.label else { continue };
            let s = summarize(&t, ai, &e.representative);
            let present: Vec<u32> = (0..q as u32).filter(|&x| s.traces[x as usize]).collect();
            let expected: Vec<u32> = (0..q as u32).filter(|&x| x != w.code()).collect();
            if present != expected {
                return Outcome::fail(format!("q={q} U(1,+)x{}: traces {present:?}", e.label));
            }
        }
    }
    Outcome::pass("coverage q <= 13; trace w excluded for q in {2,4,8,16}")
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn() -> Outcome); 8] = [
        ("AC1", "min_g = q-1 for q in {2,4,8,16,32}", ac1),
        ("AC2", "min_g = (q+3)/2 for q in {5,7,9,11,13,25,27}", ac2),
        ("AC3", "min_g(3) = 2", ac3),
        ("AC4", "conjugation and trace formulas, exhaustive", ac4),
        ("AC5", "counting claims, odd q <= 13 and even q <= 16", ac5),
        ("AC6", "products and classification against brute force", ac6),
        ("AC7", "group order, class counts, class sizes", ac7),
        ("AC8", "trace coverage and trace exclusion", ac8),
    ];
    let mut unexpected = 0;
    for (id, name, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        let note = if outcome.documented { " [documented counterexample]" } else { "" };
        println!("{status} {id} {name} ({secs:.2}s): {}{note}", outcome.detail);
        if !outcome.passed && !outcome.documented {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
