//! Unipotent-type and irreducible pairings, split by characteristic.

use serde_json::{json, Value};

use super::expr::{mat, Fe};
use super::{elem_set_size, mat_json, Check, CheckConfig, CheckResult, Recorder};
use crate::classes::{ClassLabel, ClassTable, UClass};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::matrix::Mat2;
use crate::product::summarize;

fn indices_where(table: &ClassTable, pred: impl Fn(&ClassLabel) -> bool) -> Vec<usize> {
    table
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, e)| pred(&e.label))
        .map(|(i, _)| i)
        .collect()
}

fn is_unipotent(l: &ClassLabel) -> bool {
    matches!(l, ClassLabel::Unipotent { .. })
}

fn is_irreducible(l: &ClassLabel) -> bool {
    matches!(l, ClassLabel::Irreducible { .. })
}

/// Characteristic 2. With `U = [[1,1],[0,1]]`:
/// * `U^{C(i)} U`, `C(i) = [[1,0],[i,1]]`, has trace `i^2`, covering GF(q);
/// * `U^{E(i)} W_w`, `E(i) = diag(1/i, i)`, has trace `i^2 + w`, `q - 1` values;
/// * `W_w^{F(i)} W_v`, `F(i) = [[i+1, i], [i, i+1]]`, has trace `vw(i^2+1)`,
///   covering GF(q) when `vw != 0`;
///
/// and every pair drawn from the unipotent and irreducible classes has
/// `eta >= q - 1`.
pub fn check_even_case(table: &ClassTable, cfg: &CheckConfig) -> Result<CheckResult> {
    let f = table.field();
    let g = table.group();
    let q = f.q();
    if !f.is_even() {
        return Err(Error::NotApplicable {
            check: Check::EvenCase.name(),
            q,
        });
    }
    let mut rec = Recorder::new(Check::EvenCase, q);
    let zero = Fe::new(f, Elem::ZERO);
    let one = Fe::int(f, 1);
    let u_idx = table
        .index_of(&ClassLabel::Unipotent {
            s: Elem::ONE,
            u: UClass::Square,
        })
        .expect("unipotent class exists");
    let u_mat = table.entries()[u_idx].representative;
    let irreducible = indices_where(table, is_irreducible);

    let family_check = |rec: &mut Recorder, part: &str, a: &Mat2, c: &Mat2, b: &Mat2, closed: Fe| {
        let direct = g.trace_of_product(&g.conjugate_unchecked(a, c), b);
        if direct != closed.val() {
            rec.fail(json!({
                "part": part, "A": mat_json(a), "B": mat_json(b), "conjugator": mat_json(c),
                "closed_form": closed.val(), "direct": direct,
            }));
        }
        direct
    };

    // (i)
    let k_i = cfg.coef(f, "even.unipotent_pair");
    let mut traces_i = Vec::new();
    for i in f.elements() {
        let i = Fe::new(f, i);
        let c = mat(one, zero, i, one);
        traces_i.push(family_check(&mut rec, "i", &u_mat, &c, &u_mat, k_i * i.sq()));
    }
    let reach_i = elem_set_size(f, traces_i);
    let product_i = summarize(table, u_idx, &u_mat);
    let covered_i = product_i.traces.iter().filter(|&&x| x).count();
    if reach_i != q as usize || covered_i != q as usize {
        rec.fail(json!({"part": "i", "family_traces": reach_i, "product_traces": covered_i}));
    }
    rec.detail("i", json!({"family_traces": reach_i, "product_traces": covered_i}));

    // (ii)
    let k_ii = cfg.coef(f, "even.unipotent_irreducible");
    let mut part_ii = Vec::new();
    for &wi in &irreducible {
        let w_mat = table.entries()[wi].representative;
        let w = Fe::new(f, w_mat.d);
        let product = summarize(table, u_idx, &w_mat);
        let mut traces = Vec::new();
        for i in f.nonzero() {
            let inv = Fe::new(f, f.inv(i).expect("nonzero"));
            let i = Fe::new(f, i);
            let e = mat(inv, zero, zero, i);
            let t = family_check(&mut rec, "ii", &u_mat, &e, &w_mat, k_ii * i.sq() + w);
            if !product.traces[t.code() as usize] {
                rec.fail(json!({"part": "ii", "w": w.val(), "trace_not_in_product": t}));
            }
            traces.push(t);
        }
        let size = elem_set_size(f, traces);
        if size != q as usize - 1 {
            rec.fail(json!({"part": "ii", "w": w.val(), "family_traces": size, "expected": q - 1}));
        }
        part_ii.push(json!({"w": w.val(), "family_traces": size}));
    }
    rec.detail("ii", Value::Array(part_ii));

    // (iii)
    let k_iii = cfg.coef(f, "even.irreducible_pair");
    let mut part_iii = 0u64;
    for &wi in &irreducible {
        let a_mat = table.entries()[wi].representative;
        let w = Fe::new(f, a_mat.d);
        for &vi in &irreducible {
            let b_mat = table.entries()[vi].representative;
            let v = Fe::new(f, b_mat.d);
            if (v * w).val().is_zero() {
                continue;
            }
            part_iii += 1;
            let mut traces = Vec::new();
            for i in f.elements() {
                let i = Fe::new(f, i);
                let c = mat(i + one, i, i, i + one);
                let closed = k_iii * v * w * (i.sq() + one);
                traces.push(family_check(&mut rec, "iii", &a_mat, &c, &b_mat, closed));
            }
            let size = elem_set_size(f, traces);
            let covered = summarize(table, wi, &b_mat).traces.iter().filter(|&&x| x).count();
            if size != q as usize || covered != q as usize {
                rec.fail(json!({
                    "part": "iii", "w": w.val(), "v": v.val(),
                    "family_traces": size, "product_traces": covered,
                }));
            }
        }
    }
    rec.detail("iii_pairs", part_iii);

    // eta bound over unipotent/irreducible pairs
    let bound = q as usize - 1;
    let mut members = vec![u_idx];
    members.extend(&irreducible);
    let mut smallest = usize::MAX;
    for (k, &i) in members.iter().enumerate() {
        for &j in &members[k..] {
            let eta = summarize(table, i, &table.entries()[j].representative).eta();
            smallest = smallest.min(eta);
            if eta < bound {
                rec.fail(json!({
                    "part": "eta_bound",
                    "A": table.entries()[i].label, "B": table.entries()[j].label,
                    "eta": eta, "bound": bound,
                }));
            }
        }
    }
    rec.detail("eta_bound", json!({"bound": bound, "smallest": smallest}));
    Ok(rec.finish())
}

/// Odd `q > 3`.
///
/// * Unipotent × unipotent: the traces `2rt - uw i^2` (conjugator
///   `[[1,0],[i,1]]`) give at least `(q+1)/2` values, and the product contains
///   matrices `[[rt, a], [0, rt]]`, `a = rwy^2 + tux^2`, from at least two
///   classes with the one trace `2rt`. Pairs where the values of `a` miss a
///   square class (zero included) are listed under `square_nonsquare_gaps`.
/// * Unipotent × irreducible: `eta >= q - 1`.
/// * Irreducible × irreducible (`W_w`, `W_v`): both unipotent-type classes of
///   sign `-1` occur when `v + w != 0`, of sign `+1` otherwise. The traces from
///   the conjugators `[[1,i],[0,1]]` are compared against two closed forms,
///   `-i^2 + i(v-w) + w - 2` and `-i^2 + i(w-v) + vw - 2`, and the report
///   records which matches.
pub fn check_odd_case(table: &ClassTable, cfg: &CheckConfig) -> Result<CheckResult> {
    let f = table.field();
    let g = table.group();
    let q = f.q();
    if f.is_even() || q <= 3 {
        return Err(Error::NotApplicable {
            check: Check::OddCase.name(),
            q,
        });
    }
    let mut rec = Recorder::new(Check::OddCase, q);
    let zero = Fe::new(f, Elem::ZERO);
    let one = Fe::int(f, 1);
    let two = Fe::int(f, 2);
    let unipotent = indices_where(table, is_unipotent);
    let irreducible = indices_where(table, is_irreducible);
    let half = (q as usize + 1) / 2;
    let eta_floor = (q as usize + 3) / 2;
    let k_trace = cfg.coef(f, "odd.unipotent_pair_trace");

    // unipotent x unipotent
    let mut smallest_uu = usize::MAX;
    let mut witness_gaps = Vec::new();
    for &ai in &unipotent {
        let a_mat = table.entries()[ai].representative;
        let (r, u) = (Fe::new(f, a_mat.a), Fe::new(f, a_mat.b));
        for &bi in &unipotent {
            let b_mat = table.entries()[bi].representative;
            let (t, w) = (Fe::new(f, b_mat.a), Fe::new(f, b_mat.b));
            let labels = (table.entries()[ai].label, table.entries()[bi].label);
            let product = summarize(table, ai, &b_mat);

            let mut family = Vec::new();
            for i in f.elements() {
                let i = Fe::new(f, i);
                let c = mat(one, zero, i, one);
                let closed = k_trace * two * r * t - u * w * i.sq();
                let direct = g.trace_of_product(&g.conjugate_unchecked(&a_mat, &c), &b_mat);
                if direct != closed.val() {
                    rec.fail(json!({
                        "part": "unipotent_pair_trace", "A": labels.0, "B": labels.1,
                        "i": i.val(), "closed_form": closed.val(), "direct": direct,
                    }));
                }
                family.push(direct);
            }
            let family_size = elem_set_size(f, family);
            let trace_count = product.traces.iter().filter(|&&x| x).count();
            if family_size != half || trace_count < half {
                rec.fail(json!({
                    "part": "unipotent_pair_trace", "A": labels.0, "B": labels.1,
                    "family_traces": family_size, "product_traces": trace_count, "expected": half,
                }));
            }

            // Same-trace witnesses X·Y with X = [[r, ux^2],[0,r]], Y = [[t, wy^2],[0,t]],
            // one per class of the off-diagonal entry.
            let mut witnesses: Vec<(usize, Mat2)> = Vec::new();
            for x in f.nonzero() {
                for y in f.nonzero() {
                    let (x, y) = (Fe::new(f, x), Fe::new(f, y));
                    let xm = mat(r, u * x.sq(), zero, r);
                    let ym = mat(t, w * y.sq(), zero, t);
                    let z = g.mul(&xm, &ym);
                    let closed = mat(r * t, r * w * y.sq() + t * u * x.sq(), zero, r * t);
                    if z != closed
                        || table.classify_index(&xm) != ai
                        || table.classify_index(&ym) != bi
                    {
                        rec.fail(json!({
                            "part": "unipotent_pair_witness", "X": mat_json(&xm),
                            "Y": mat_json(&ym), "XY": mat_json(&z),
                        }));
                    }
                    let class = table.classify_index(&z);
                    if !witnesses.iter().any(|&(c, _)| c == class) {
                        witnesses.push((class, z));
                    }
                }
            }
            let nonzero_square = witnesses.iter().any(|(_, z)| !z.b.is_zero() && f.is_square(z.b));
            let nonsquare = witnesses.iter().any(|(_, z)| !f.is_square(z.b));
            if !(nonzero_square || witnesses.iter().any(|(_, z)| z.b.is_zero())) || !nonsquare {
                witness_gaps.push(json!({
                    "A": labels.0, "B": labels.1,
                    "witness_classes": witnesses.iter().map(|&(c, _)| table.entries()[c].label).collect::<Vec<_>>(),
                }));
            }
            let missing: Vec<ClassLabel> = witnesses
                .iter()
                .filter(|&&(c, _)| !product.classes[c])
                .map(|&(c, _)| table.entries()[c].label)
                .collect();
            if witnesses.len() < 2 || !missing.is_empty() {
                rec.fail(json!({
                    "part": "unipotent_pair_witness", "A": labels.0, "B": labels.1,
                    "witnesses": witnesses.iter().map(|(_, z)| mat_json(z)).collect::<Vec<_>>(),
                    "missing_from_product": missing,
                }));
            }

            let eta = product.eta();
            smallest_uu = smallest_uu.min(eta);
            if eta < eta_floor {
                rec.fail(json!({"part": "unipotent_pair_eta", "A": labels.0, "B": labels.1,
                    "eta": eta, "bound": eta_floor}));
            }
        }
    }
    rec.detail(
        "unipotent_pairs",
        json!({"smallest_eta": smallest_uu, "bound": eta_floor, "square_nonsquare_gaps": witness_gaps}),
    );

    // unipotent x irreducible
    let mut smallest_ui = usize::MAX;
    for &ai in &unipotent {
        for &bi in &irreducible {
            let eta = summarize(table, ai, &table.entries()[bi].representative).eta();
            smallest_ui = smallest_ui.min(eta);
            if eta + 1 < q as usize {
                rec.fail(json!({
                    "part": "unipotent_irreducible_eta",
                    "A": table.entries()[ai].label, "B": table.entries()[bi].label,
                    "eta": eta, "bound": q - 1,
                }));
            }
        }
    }
    rec.detail("unipotent_irreducible", json!({"smallest_eta": smallest_ui, "bound": q - 1}));

    // irreducible x irreducible
    let minus_one = f.neg(Elem::ONE);
    let mut stated_holds = 0u64;
    let mut derived_holds = 0u64;
    let mut stated_failure = None;
    let mut pairs = 0u64;
    let mut smallest_ii = usize::MAX;
    let k_sign = cfg.offset("odd.irreducible_witness_sign") != 0;
    for &ai in &irreducible {
        let a_mat = table.entries()[ai].representative;
        let w = Fe::new(f, a_mat.d);
        for &bi in &irreducible {
            pairs += 1;
            let b_mat = table.entries()[bi].representative;
            let v = Fe::new(f, b_mat.d);
            let product = summarize(table, ai, &b_mat);
            let labels = (table.entries()[ai].label, table.entries()[bi].label);

            let (mut stated_ok, mut derived_ok) = (true, true);
            for i in f.elements() {
                let i = Fe::new(f, i);
                let c = mat(one, i, zero, one);
                let direct = g.trace_of_product(&g.conjugate_unchecked(&a_mat, &c), &b_mat);
                let stated = -i.sq() + i * (v - w) + w - two;
                let derived = -i.sq() + i * (w - v) + v * w - two;
                if direct != stated.val() {
                    if stated_ok && stated_failure.is_none() {
                        stated_failure = Some(json!({
                            "w": w.val(), "v": v.val(), "i": i.val(),
                            "stated": stated.val(), "direct": direct,
                        }));
                    }
                    stated_ok = false;
                }
                derived_ok &= direct == derived.val();
                if !product.traces[direct.code() as usize] {
                    rec.fail(json!({"part": "irreducible_pair_trace", "A": labels.0,
                        "B": labels.1, "trace_not_in_product": direct}));
                }
            }
            stated_holds += stated_ok as u64;
            derived_holds += derived_ok as u64;

            let nonzero_sum = !(v + w).val().is_zero() ^ k_sign;
            let s = if nonzero_sum { minus_one } else { Elem::ONE };
            for u in [UClass::Square, UClass::NonSquare] {
                let label = ClassLabel::Unipotent { s, u };
                if !product.contains(table, &label) {
                    rec.fail(json!({
                        "part": "irreducible_pair_witness", "A": labels.0, "B": labels.1,
                        "missing": label,
                    }));
                }
            }

            let eta = product.eta();
            smallest_ii = smallest_ii.min(eta);
            if eta < eta_floor {
                rec.fail(json!({"part": "irreducible_pair_eta", "A": labels.0, "B": labels.1,
                    "eta": eta, "bound": eta_floor}));
            }
        }
    }
    if derived_holds != pairs && stated_holds != pairs {
        rec.fail(json!({"part": "irreducible_pair_trace_formula",
            "stated_holds_for": stated_holds, "derived_holds_for": derived_holds, "pairs": pairs}));
    }
    rec.detail(
        "irreducible_pairs",
        json!({
            "pairs": pairs,
            "smallest_eta": smallest_ii,
            "bound": eta_floor,
            "trace_form_stated": {"formula": "-i^2+i(v-w)+w-2", "holds_for": stated_holds,
                "first_failure": stated_failure},
            "trace_form_derived": {"formula": "-i^2+i(w-v)+vw-2", "holds_for": derived_holds},
        }),
    );
    Ok(rec.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(s: &str) -> ClassLabel {
        s.parse().unwrap()
    }

    #[test]
    fn parity_preconditions() {
        let t5 = ClassTable::with_order(5).unwrap();
        assert!(check_even_case(&t5, &CheckConfig::default()).is_err());
        let t3 = ClassTable::with_order(3).unwrap();
        assert!(check_odd_case(&t3, &CheckConfig::default()).is_err());
        let t4 = ClassTable::with_order(4).unwrap();
        assert!(check_odd_case(&t4, &CheckConfig::default()).is_err());
    }

    #[test]
    fn even_fields_pass() {
        for q in [2, 4, 8] {
            let t = ClassTable::with_order(q).unwrap();
            let r = check_even_case(&t, &CheckConfig::default()).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn odd_fields_pass() {
        for q in [5, 9, 13] {
            let t = ClassTable::with_order(q).unwrap();
            let r = check_odd_case(&t, &CheckConfig::default()).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn gf5_unipotent_square_same_trace_witnesses() {
        // x^2 + y^2 over nonzero x, y in GF(5) is {0, 2, 3}: I and U(1,-).
        let t = ClassTable::with_order(5).unwrap();
        let ai = t.index_of(&label("U(1,+)")).unwrap();
        let s = summarize(&t, ai, &t.entries()[ai].representative);
        assert!(s.contains(&t, &label("Z(1)")));
        assert!(s.contains(&t, &label("U(1,-)")));
    }

    #[test]
    fn gf5_irreducible_pair_witnesses() {
        // W(1) x W(1): v + w = 2 != 0, so the sign -1 unipotent classes occur.
        let t = ClassTable::with_order(5).unwrap();
        let ai = t.index_of(&label("W(1)")).unwrap();
        let s = summarize(&t, ai, &t.entries()[ai].representative);
        assert!(s.contains(&t, &label("U(4,+)")));
        assert!(s.contains(&t, &label("U(4,-)")));
    }

    #[test]
    fn gf7_zero_trace_pair_lacks_stated_witness() {
        // v = w = 0 forces v + w = 0 and w - v = 0 together.
        let t = ClassTable::with_order(7).unwrap();
        let ai = t.index_of(&label("W(0)")).unwrap();
        let s = summarize(&t, ai, &t.entries()[ai].representative);
        assert!(!s.contains(&t, &label("U(1,+)")));
        assert!(s.eta() >= 5);
        let r = check_odd_case(&t, &CheckConfig::default()).unwrap();
        assert!(!r.passed);
        assert_eq!(r.counterexample.as_ref().unwrap()["part"], "irreducible_pair_witness");
    }

    #[test]
    fn gf7_unipotent_irreducible_bound() {
        let t = ClassTable::with_order(7).unwrap();
        for a in t.entries().iter().filter(|e| is_unipotent(&e.label)) {
            for b in t.entries().iter().filter(|e| is_irreducible(&e.label)) {
                let ai = t.index_of(&a.label).unwrap();
                assert!(summarize(&t, ai, &b.representative).eta() >= 6);
            }
        }
    }
}
