//! Closed-form conjugates and traces against direct matrix computation.

use serde_json::{json, Value};

use super::expr::{entries, mat, Fe};
use super::{group_sample, mat_json, Check, CheckConfig, CheckResult, Recorder};
use crate::classes::ClassTable;
use crate::field::Elem;
use crate::matrix::Mat2;

/// Conjugating elements are enumerated exhaustively up to this order.
pub const FORMULA_EXHAUSTIVE_MAX_Q: u32 = 9;
pub const FORMULA_SAMPLES: usize = 2000;

struct Tally {
    id: &'static str,
    evaluations: u64,
    mismatches: u64,
}

impl Tally {
    fn new(id: &'static str) -> Self {
        Tally {
            id,
            evaluations: 0,
            mismatches: 0,
        }
    }

    fn json(&self) -> Value {
        json!({
            "evaluations": self.evaluations,
            "mismatches": self.mismatches,
            "holds": self.mismatches == 0,
        })
    }
}

fn central_roots(table: &ClassTable) -> Vec<Elem> {
    let f = table.field();
    let mut out = vec![Elem::ONE];
    let m1 = f.neg(Elem::ONE);
    if m1 != Elem::ONE {
        out.push(m1);
    }
    out
}

/// Entrywise check of the general conjugation formula and its three
/// specializations (diagonal, unipotent type, companion form).
pub fn check_conjugation_formulas(table: &ClassTable, cfg: &CheckConfig) -> CheckResult {
    let f = table.field();
    let g = table.group();
    let mut rec = Recorder::new(Check::ConjugationFormulas, f.q());
    let (conjugators, exhaustive) =
        group_sample(table, FORMULA_EXHAUSTIVE_MAX_Q, FORMULA_SAMPLES, cfg, 1);
    rec.detail("exhaustive", exhaustive);
    rec.detail("conjugators", conjugators.len());

    let signs = central_roots(table);
    let mut general = Tally::new("conj.general");
    let mut diag = Tally::new("conj.diagonal");
    let mut unip = Tally::new("conj.unipotent");
    let mut companion = Tally::new("conj.companion");

    let k_general = cfg.coef(f, general.id);
    let k_diag = cfg.coef(f, diag.id);
    let k_unip = cfg.coef(f, unip.id);
    let k_comp = cfg.coef(f, companion.id);

    let compare = |tally: &mut Tally, rec: &mut Recorder, a: &Mat2, c: &Mat2, closed: Mat2| {
        tally.evaluations += 1;
        let direct = g.conjugate(a, c).expect("conjugator is in SL(2,q)");
        if direct != closed {
            tally.mismatches += 1;
            rec.fail(json!({
                "formula": tally.id,
                "A": mat_json(a),
                "C": mat_json(c),
                "closed_form": mat_json(&closed),
                "direct": mat_json(&direct),
            }));
        }
    };

    for c_mat in &conjugators {
        let (a, b, c, d) = entries(f, c_mat);

        for rep in table.entries().iter().map(|e| e.representative) {
            let (e, ff, gg, h) = entries(f, &rep);
            let closed = mat(
                k_general * a * (d * e - b * gg) + c * (d * ff - b * h),
                b * (d * e - b * gg) + d * (d * ff - b * h),
                a * (-(c * e) + a * gg) + c * (-(c * ff) + a * h),
                b * (-(c * e) + a * gg) + d * (-(c * ff) + a * h),
            );
            compare(&mut general, &mut rec, &rep, c_mat, closed);
        }

        for r in f.nonzero() {
            let s = f.inv(r).expect("nonzero");
            let (r, s) = (Fe::new(f, r), Fe::new(f, s));
            let diag_mat = mat(r, Fe::new(f, Elem::ZERO), Fe::new(f, Elem::ZERO), s);
            let closed = mat(
                k_diag * a * d * r - b * c * s,
                b * d * (r - s),
                -(a * c * (r - s)),
                a * d * s - b * c * r,
            );
            compare(&mut diag, &mut rec, &diag_mat, c_mat, closed);
        }

        for &s in &signs {
            for u in f.elements() {
                let (s, u) = (Fe::new(f, s), Fe::new(f, u));
                let u_mat = mat(s, u, Fe::new(f, Elem::ZERO), s);
                let closed = mat(
                    s + k_unip * u * c * d,
                    u * d.sq(),
                    -(u * c.sq()),
                    s - u * c * d,
                );
                compare(&mut unip, &mut rec, &u_mat, c_mat, closed);
            }
        }

        for w in f.elements() {
            let w = Fe::new(f, w);
            let comp = mat(Fe::new(f, Elem::ZERO), Fe::int(f, 1), Fe::int(f, -1), w);
            let closed = mat(
                k_comp * a * b + c * (d - b * w),
                b.sq() + d.sq() - b * d * w,
                -a.sq() - c.sq() + a * c * w,
                -(a * b) + d * (-c + a * w),
            );
            compare(&mut companion, &mut rec, &comp, c_mat, closed);
        }
    }

    for t in [&general, &diag, &unip, &companion] {
        rec.detail(t.id, t.json());
    }
    rec.finish()
}

/// Closed-form trace formulas `Trace(A^C · B)` for the six family pairings.
///
/// The split-times-unipotent formula has two published forms, `t(r+s) - ac(r-s)u`
/// and `t(r-s) - ac(r-s)u`. Both are evaluated; the formula passes if either
/// form matches direct computation everywhere, and the report records which.
pub fn check_trace_formulas(table: &ClassTable, cfg: &CheckConfig) -> CheckResult {
    let f = table.field();
    let g = table.group();
    let mut rec = Recorder::new(Check::TraceFormulas, f.q());
    let (conjugators, exhaustive) =
        group_sample(table, FORMULA_EXHAUSTIVE_MAX_Q, FORMULA_SAMPLES, cfg, 2);
    rec.detail("exhaustive", exhaustive);
    rec.detail("conjugators", conjugators.len());

    let zero = Fe::new(f, Elem::ZERO);
    let one = Fe::int(f, 1);
    let two = Fe::int(f, 2);
    let signs: Vec<Fe> = central_roots(table).into_iter().map(|s| Fe::new(f, s)).collect();
    let units: Vec<(Fe, Fe)> = f
        .nonzero()
        .map(|r| (Fe::new(f, r), Fe::new(f, f.inv(r).expect("nonzero"))))
        .collect();
    let all: Vec<Fe> = f.elements().map(|x| Fe::new(f, x)).collect();

    let mut t_i = Tally::new("trace.split_pair");
    let mut t_ii_stated = Tally::new("trace.split_unipotent.sum_form");
    let mut t_ii_derived = Tally::new("trace.split_unipotent.difference_form");
    let mut t_iii = Tally::new("trace.split_irreducible");
    let mut t_iv = Tally::new("trace.unipotent_pair");
    let mut t_v = Tally::new("trace.unipotent_irreducible");
    let mut t_vi = Tally::new("trace.irreducible_pair");
    let mut ii_witness: Option<Value> = None;

    let k_i = cfg.coef(f, "trace.split_pair");
    let k_ii = cfg.coef(f, "trace.split_unipotent");
    let k_iii = cfg.coef(f, "trace.split_irreducible");
    let k_iv = cfg.coef(f, "trace.unipotent_pair");
    let k_v = cfg.coef(f, "trace.unipotent_irreducible");
    let k_vi = cfg.coef(f, "trace.irreducible_pair");

    let check = |tally: &mut Tally,
                 a_mat: &Mat2,
                 c_mat: &Mat2,
                 b_mat: &Mat2,
                 closed: Fe|
     -> Option<Value> {
        tally.evaluations += 1;
        let direct = g.trace_of_product(&g.conjugate_unchecked(a_mat, c_mat), b_mat);
        (direct != closed.val()).then(|| {
            tally.mismatches += 1;
            json!({
                "formula": tally.id,
                "A": mat_json(a_mat),
                "B": mat_json(b_mat),
                "C": mat_json(c_mat),
                "closed_form": closed.val().code(),
                "direct": direct.code(),
            })
        })
    };

    for c_mat in &conjugators {
        let (a, b, c, d) = entries(f, c_mat);

        for &(r, s) in &units {
            let a_mat = mat(r, zero, zero, s);
            for &(u, v) in &units {
                let b_mat = mat(u, zero, zero, v);
                let closed = k_i * a * d * (r - s) * (u - v) + (u * s + v * r);
                if let Some(cx) = check(&mut t_i, &a_mat, c_mat, &b_mat, closed) {
                    rec.fail(cx);
                }
            }
            for &t in &signs {
                for &u in &all {
                    let b_mat = mat(t, u, zero, t);
                    let stated = k_ii * t * (r + s) - a * c * (r - s) * u;
                    let derived = k_ii * t * (r - s) - a * c * (r - s) * u;
                    let bad_stated = check(&mut t_ii_stated, &a_mat, c_mat, &b_mat, stated);
                    let bad_derived = check(&mut t_ii_derived, &a_mat, c_mat, &b_mat, derived);
                    if let (Some(cx), Some(_)) = (&bad_stated, &bad_derived) {
                        rec.fail(cx.clone());
                    }
                    if ii_witness.is_none() {
                        ii_witness = bad_stated.or(bad_derived);
                    }
                }
            }
            for &w in &all {
                let b_mat = mat(zero, one, -one, w);
                let closed = k_iii * (a * c + b * d) * (s - r) + w * (a * d * s - b * c * r);
                if let Some(cx) = check(&mut t_iii, &a_mat, c_mat, &b_mat, closed) {
                    rec.fail(cx);
                }
            }
        }

        for &r in &signs {
            for &u in &all {
                let a_mat = mat(r, u, zero, r);
                for &t in &signs {
                    for &w in &all {
                        let b_mat = mat(t, w, zero, t);
                        let closed = k_iv * two * r * t - u * w * c.sq();
                        if let Some(cx) = check(&mut t_iv, &a_mat, c_mat, &b_mat, closed) {
                            rec.fail(cx);
                        }
                    }
                }
                for &s in &all {
                    let b_mat = mat(zero, one, -one, s);
                    let closed = -(k_v * u * d.sq()) - u * c.sq() + s * (r - u * c * d);
                    if let Some(cx) = check(&mut t_v, &a_mat, c_mat, &b_mat, closed) {
                        rec.fail(cx);
                    }
                }
            }
        }

        for &w in &all {
            let a_mat = mat(zero, one, -one, w);
            for &v in &all {
                let b_mat = mat(zero, one, -one, v);
                let closed = -(k_vi * a.sq()) - b.sq() - c.sq() - d.sq()
                    + b * d * w
                    + a * c * w
                    + v * (-(a * b) + d * (-c + a * w));
                if let Some(cx) = check(&mut t_vi, &a_mat, c_mat, &b_mat, closed) {
                    rec.fail(cx);
                }
            }
        }
    }

    for t in [&t_i, &t_ii_stated, &t_ii_derived, &t_iii, &t_iv, &t_v, &t_vi] {
        rec.detail(t.id, t.json());
    }
    let resolved = match (t_ii_stated.mismatches == 0, t_ii_derived.mismatches == 0) {
        (true, true) => "both forms agree (characteristic 2)",
        (true, false) => "t(r+s)-ac(r-s)u",
        (false, true) => "t(r-s)-ac(r-s)u",
        (false, false) => "neither form",
    };
    rec.detail("trace.split_unipotent.resolved_form", resolved);
    if let Some(w) = ii_witness {
        rec.detail("trace.split_unipotent.discrepancy_witness", w);
    }
    rec.finish()
}
