//! The lower bound on `eta` and the pairs attaining it.

use serde_json::json;

use super::{Check, CheckConfig, CheckResult, Recorder};
use crate::classes::{ClassLabel, ClassTable, UClass};
use crate::field::Elem;
use crate::product::{min_g, summarize};

/// `min(G)` as claimed: `q - 1` for even `q`, `(q+3)/2` for odd `q > 3`, and
/// `2` for `q = 3`.
pub fn claimed_min_g(q: u32) -> usize {
    if q % 2 == 0 {
        q as usize - 1
    } else if q == 3 {
        2
    } else {
        (q as usize + 3) / 2
    }
}

/// The class pairs claimed to attain `min(G)`: `U(1,+) × W(w)` for every `w`
/// in even characteristic, `U(1,+) × U(1,-)` for `q ≡ 1 (mod 4)` and
/// `U(1,+) × U(1,+)` for `q ≡ 3 (mod 4)`, `q > 3`.
pub fn claimed_optimal_pairs(table: &ClassTable) -> Vec<(ClassLabel, ClassLabel)> {
    let q = table.q();
    let plus = ClassLabel::Unipotent {
        s: Elem::ONE,
        u: UClass::Square,
    };
    if q % 2 == 0 {
        table
            .entries()
            .iter()
            .filter(|e| matches!(e.label, ClassLabel::Irreducible { .. }))
            .map(|e| (plus, e.label))
            .collect()
    } else if q == 3 {
        Vec::new()
    } else if q % 4 == 1 {
        let minus = ClassLabel::Unipotent {
            s: Elem::ONE,
            u: UClass::NonSquare,
        };
        vec![(plus, minus)]
    } else {
        vec![(plus, plus)]
    }
}

/// Checks the exhaustive `min(G)` against [`claimed_min_g`], the claimed
/// optimal pairs, and that a central factor always yields a single class.
pub fn verify_theorems(table: &ClassTable, cfg: &CheckConfig) -> CheckResult {
    let q = table.q();
    let f = table.field();
    let g = table.group();
    let mut rec = Recorder::new(Check::Theorems, q);
    let claimed = claimed_min_g(q) as i64 + cfg.offset("min_g.bound");

    match min_g(table) {
        Some(m) => {
            if m.min_g as i64 != claimed {
                rec.fail(json!({
                    "part": "min_g", "computed": m.min_g, "claimed": claimed,
                    "witness": [m.witness.0, m.witness.1],
                }));
            }
            rec.detail("min_g", m.min_g);
            rec.detail("witness", json!([m.witness.0, m.witness.1]));
        }
        None => rec.fail(json!({"part": "min_g", "reason": "no noncentral classes"})),
    }
    rec.detail("claimed_min_g", claimed);

    let mut optimal = Vec::new();
    for (a, b) in claimed_optimal_pairs(table) {
        let (Some(ai), Some(bi)) = (table.index_of(&a), table.index_of(&b)) else {
            rec.fail(json!({"part": "optimal_pair", "missing": [a, b]}));
            continue;
        };
        let b_mat = table.entries()[bi].representative;
        let s = summarize(table, ai, &b_mat);
        let mut row = json!({"A": a, "B": b, "eta": s.eta()});
        if s.eta() as i64 != claimed {
            rec.fail(json!({"part": "optimal_pair", "A": a, "B": b, "eta": s.eta(), "claimed": claimed}));
        }
        if let ClassLabel::Irreducible { w } = b {
            let identity = ClassLabel::Central { r: Elem::ONE };
            let excluded = !s.traces[w.code() as usize];
            let traces = s.traces.iter().filter(|&&x| x).count();
            if !excluded || traces + 1 != q as usize || s.contains(table, &identity) {
                rec.fail(json!({
                    "part": "optimal_pair_traces", "A": a, "B": b,
                    "trace_w_excluded": excluded, "traces": traces,
                    "contains_identity": s.contains(table, &identity),
                }));
            }
            row["trace_w_excluded"] = excluded.into();
        }
        optimal.push(row);
    }
    rec.detail("optimal_pairs", optimal);

    let mut central_pairs = 0u64;
    for (zi, z) in table.entries().iter().enumerate() {
        if !z.label.is_central() {
            continue;
        }
        for b in table.entries() {
            central_pairs += 1;
            let s = summarize(table, zi, &b.representative);
            let expected = table.classify_index(&g.mul(&z.representative, &b.representative));
            if s.eta() != 1 || !s.classes[expected] {
                rec.fail(json!({
                    "part": "central_factor", "A": z.label, "B": b.label,
                    "eta": s.eta(), "expected": table.entries()[expected].label,
                }));
            }
        }
    }
    rec.detail("central_pairs", central_pairs);
    rec.detail("characteristic", f.p());
    rec.finish()
}
