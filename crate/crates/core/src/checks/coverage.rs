//! Full trace coverage of products with a split class.

use serde_json::json;

use super::expr::{mat, Fe};
use super::{elem_set_size, mat_json, Check, CheckConfig, CheckResult, Recorder};
use crate::classes::{ClassLabel, ClassTable};
use crate::field::Elem;
use crate::product::summarize;

/// For every split representative `A = diag(r, s)` and every noncentral
/// representative `B`, the product `A^S B^S` contains every trace.
///
/// Independently of the product scan, explicit conjugator families reach
/// every trace on their own:
/// * `B = diag(u, v)`: `C(i) = [[i, i-1], [1, 1]]`, trace `(r-s)(u-v)i + (us+vr)`;
/// * `B = [[t, u], [0, t]]`: same `C(i)`, trace `-(r-s)ui + t(r+s)`;
/// * `B = [[0, 1], [-1, w]]`: `E(i) = [[1, i], [0, 1]]`, trace `(s-r)i + ws`.
pub fn check_trace_coverage(table: &ClassTable, cfg: &CheckConfig) -> CheckResult {
    let f = table.field();
    let g = table.group();
    let q = f.q();
    let mut rec = Recorder::new(Check::TraceCoverage, q);
    let zero = Fe::new(f, Elem::ZERO);
    let one = Fe::int(f, 1);
    let k_c = cfg.coef(f, "coverage.c_family");
    let k_e = cfg.coef(f, "coverage.e_family");

    let mut pairs = 0u64;
    let mut family_checks = 0u64;
    for (ai, a_entry) in table.entries().iter().enumerate() {
        if !matches!(a_entry.label, ClassLabel::Split { .. }) {
            continue;
        }
        let a_mat = a_entry.representative;
        let (r, s) = (Fe::new(f, a_mat.a), Fe::new(f, a_mat.d));
        for bi in table.noncentral() {
            pairs += 1;
            let b_entry = &table.entries()[bi];
            let b_mat = b_entry.representative;
            let summary = summarize(table, ai, &b_mat);
            let covered = summary.traces.iter().filter(|&&x| x).count();
            if covered != q as usize {
                let missing: Vec<u32> = (0..q).filter(|&t| !summary.traces[t as usize]).collect();
                rec.fail(json!({
                    "A": a_entry.label, "B": b_entry.label,
                    "traces_covered": covered, "missing": missing,
                }));
            }

            let mut family = Vec::with_capacity(q as usize);
            for i in f.elements() {
                let i = Fe::new(f, i);
                let (conj, closed) = match b_entry.label {
                    ClassLabel::Split { .. } => {
                        let (u, v) = (Fe::new(f, b_mat.a), Fe::new(f, b_mat.d));
                        let c = mat(i, i - one, one, one);
                        (c, k_c * (r - s) * (u - v) * i + (u * s + v * r))
                    }
                    ClassLabel::Unipotent { .. } => {
                        let (t, u) = (Fe::new(f, b_mat.a), Fe::new(f, b_mat.b));
                        let c = mat(i, i - one, one, one);
                        (c, -(k_c * (r - s) * u * i) + t * (r + s))
                    }
                    ClassLabel::Irreducible { w } => {
                        let w = Fe::new(f, w);
                        let e = mat(one, i, zero, one);
                        (e, k_e * (s - r) * i + w * s)
                    }
                    ClassLabel::Central { .. } => unreachable!("noncentral only"),
                };
                family_checks += 1;
                let direct = g.trace_of_product(&g.conjugate_unchecked(&a_mat, &conj), &b_mat);
                if direct != closed.val() {
                    rec.fail(json!({
                        "A": a_entry.label, "B": b_entry.label,
                        "conjugator": mat_json(&conj),
                        "closed_form": closed.val(), "direct": direct,
                    }));
                }
                family.push(direct);
            }
            let reached = elem_set_size(f, family);
            if reached != q as usize {
                rec.fail(json!({
                    "A": a_entry.label, "B": b_entry.label,
                    "family_traces": reached, "expected": q,
                }));
            }
        }
    }
    rec.detail("pairs", pairs);
    rec.detail("family_evaluations", family_checks);
    rec.finish()
}
