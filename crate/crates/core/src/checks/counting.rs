//! Set-size claims over GF(q): images of quadratics and binary quadratic forms.

use rand::Rng;
use serde_json::json;

use super::{elem_set_size, Check, CheckConfig, CheckResult, Recorder};
use crate::field::{Elem, Field};

/// Parameter triples `(a, b, c)` of the quadratic-image claims are exhausted
/// up to this order.
pub const QUADRATIC_EXHAUSTIVE_MAX_Q: u32 = 49;
/// `(a, b)` pairs of the square/non-square claim.
pub const FORM_EXHAUSTIVE_MAX_Q: u32 = 49;
/// `(r, s, u)` triples of the at-least-`q-1` claim.
pub const SHIFTED_FORM_EXHAUSTIVE_MAX_Q: u32 = 13;
pub const PARAM_SAMPLES: usize = 200;

/// All `k`-tuples of elements (exhaustive) or a seeded sample of them.
fn tuples(f: &Field, k: usize, exhaustive: bool, cfg: &CheckConfig, salt: u64) -> Vec<Vec<Elem>> {
    let q = f.q() as u64;
    if exhaustive {
        (0..q.pow(k as u32))
            .map(|mut idx| {
                let mut v = Vec::with_capacity(k);
                for _ in 0..k {
                    v.push(Elem::from_code((idx % q) as u32));
                    idx /= q;
                }
                v.reverse();
                v
            })
            .collect()
    } else {
        let mut rng = cfg.rng(salt);
        (0..PARAM_SAMPLES)
            .map(|_| {
                (0..k)
                    .map(|_| Elem::from_code(rng.random_range(0..f.q())))
                    .collect()
            })
            .collect()
    }
}

pub fn check_counting_lemmas(f: &Field, cfg: &CheckConfig) -> CheckResult {
    let q = f.q();
    let mut rec = Recorder::new(Check::CountingLemmas, q);
    let squares = elem_set_size(f, f.elements().map(|i| f.square(i)));
    rec.detail("squares", squares);

    if f.is_even() {
        even_quadratic(f, cfg, &mut rec);
    } else {
        odd_quadratic(f, cfg, &mut rec);
        if q > 3 {
            square_and_nonsquare(f, cfg, &mut rec);
        }
        shifted_form(f, cfg, &mut rec);
        anisotropic_form(f, cfg, &mut rec);
    }
    rec.finish()
}

/// In characteristic 2, `i -> a i^2 + c` is a bijection for `a != 0`.
fn even_quadratic(f: &Field, cfg: &CheckConfig, rec: &mut Recorder) {
    let q = f.q();
    let expected = q as i64 + cfg.offset("quadratic.even");
    let exhaustive = q <= QUADRATIC_EXHAUSTIVE_MAX_Q;
    let mut cases = 0u64;
    for params in tuples(f, 2, exhaustive, cfg, 10) {
        let (a, c) = (params[0], params[1]);
        if a.is_zero() {
            continue;
        }
        cases += 1;
        let size = elem_set_size(f, f.elements().map(|i| f.add(f.mul(a, f.square(i)), c)));
        if size as i64 != expected {
            rec.fail(json!({"claim": "quadratic.even", "a": a, "c": c, "size": size, "expected": expected}));
        }
    }
    rec.detail("quadratic.even", json!({"cases": cases, "exhaustive": exhaustive, "expected_size": expected}));
}

/// In odd characteristic, `{a i^2 + b i + c}` has exactly `(q+1)/2` elements.
fn odd_quadratic(f: &Field, cfg: &CheckConfig, rec: &mut Recorder) {
    let q = f.q();
    let expected = ((q + 1) / 2) as i64 + cfg.offset("quadratic.odd");
    let exhaustive = q <= QUADRATIC_EXHAUSTIVE_MAX_Q;
    let mut cases = 0u64;
    for params in tuples(f, 3, exhaustive, cfg, 11) {
        let (a, b, c) = (params[0], params[1], params[2]);
        if a.is_zero() {
            continue;
        }
        cases += 1;
        let size = elem_set_size(
            f,
            f.elements()
                .map(|i| f.add(f.add(f.mul(a, f.square(i)), f.mul(b, i)), c)),
        );
        if size as i64 != expected {
            rec.fail(json!({"claim": "quadratic.odd", "a": a, "b": b, "c": c, "size": size, "expected": expected}));
        }
    }
    rec.detail("quadratic.odd", json!({"cases": cases, "exhaustive": exhaustive, "expected_size": expected}));
}

/// `{a x^2 + b y^2 : x, y != 0}` meets both square classes when `q > 3`.
fn square_and_nonsquare(f: &Field, cfg: &CheckConfig, rec: &mut Recorder) {
    let exhaustive = f.q() <= FORM_EXHAUSTIVE_MAX_Q;
    let mut cases = 0u64;
    for params in tuples(f, 2, exhaustive, cfg, 12) {
        let (a, b) = (params[0], params[1]);
        if a.is_zero() || b.is_zero() {
            continue;
        }
        cases += 1;
        let (mut square, mut nonsquare) = (None, None);
        'outer: for x in f.nonzero() {
            for y in f.nonzero() {
                let v = f.add(f.mul(a, f.square(x)), f.mul(b, f.square(y)));
                if f.is_square(v) {
                    square.get_or_insert((x, y, v));
                } else {
                    nonsquare.get_or_insert((x, y, v));
                }
                if square.is_some() && nonsquare.is_some() {
                    break 'outer;
                }
            }
        }
        if square.is_none() || nonsquare.is_none() {
            rec.fail(json!({
                "claim": "form.square_classes",
                "a": a, "b": b,
                "has_square": square.is_some(),
                "has_nonsquare": nonsquare.is_some(),
            }));
        }
    }
    rec.detail("form.square_classes", json!({"cases": cases, "exhaustive": exhaustive}));
}

/// `{-u x^2 - u y^2 + s(r - u x y) : (x, y) != (0, 0)}` has at least `q - 1`
/// elements when `s^2 != 4` and `u != 0`.
fn shifted_form(f: &Field, cfg: &CheckConfig, rec: &mut Recorder) {
    let q = f.q();
    let bound = q as i64 - 1 + cfg.offset("form.shifted");
    let exhaustive = q <= SHIFTED_FORM_EXHAUSTIVE_MAX_Q;
    let four = f.from_int(4);
    let mut cases = 0u64;
    let mut smallest = usize::MAX;
    for params in tuples(f, 3, exhaustive, cfg, 13) {
        let (r, s, u) = (params[0], params[1], params[2]);
        if u.is_zero() || f.square(s) == four {
            continue;
        }
        cases += 1;
        let mut seen = vec![false; q as usize];
        for x in f.elements() {
            for y in f.elements() {
                if x.is_zero() && y.is_zero() {
                    continue;
                }
                let quad = f.add(f.mul(u, f.square(x)), f.mul(u, f.square(y)));
                let v = f.sub(f.mul(s, f.sub(r, f.mul(u, f.mul(x, y)))), quad);
                seen[v.code() as usize] = true;
            }
        }
        let size = seen.iter().filter(|&&b| b).count();
        smallest = smallest.min(size);
        if (size as i64) < bound {
            rec.fail(json!({
                "claim": "form.shifted",
                "r": r, "s": s, "u": u, "size": size, "bound": bound,
            }));
        }
    }
    rec.detail(
        "form.shifted",
        json!({"cases": cases, "exhaustive": exhaustive, "bound": bound, "smallest_size": smallest}),
    );
}

/// For `w^2 - 4` a non-square, compares both sign variants of the quadratic
/// form against the nonzero elements:
/// `{a^2 - c^2 + acw : a != 0}` and `{a^2 + c^2 - acw : a != 0}`.
///
/// The check passes when at least one variant equals `GF(q) \ {0}` for every
/// such `w`; the report states which one did.
fn anisotropic_form(f: &Field, cfg: &CheckConfig, rec: &mut Recorder) {
    let q = f.q();
    let four = f.from_int(4);
    let coef = cfg.coef(f, "form.anisotropic").val();
    let mut ws = 0u64;
    let (mut minus_ok, mut plus_ok) = (0u64, 0u64);
    let mut minus_witness = None;
    let mut plus_witness = None;
    for w in f.elements() {
        if f.is_square(f.sub(f.square(w), four)) {
            continue;
        }
        ws += 1;
        let mut minus = vec![false; q as usize];
        let mut plus = vec![false; q as usize];
        for a in f.nonzero() {
            for c in f.elements() {
                let a2 = f.mul(coef, f.square(a));
                let c2 = f.square(c);
                let acw = f.mul(f.mul(a, c), w);
                minus[f.add(f.sub(a2, c2), acw).code() as usize] = true;
                plus[f.sub(f.add(a2, c2), acw).code() as usize] = true;
            }
        }
        let is_units = |hit: &[bool]| !hit[0] && hit[1..].iter().all(|&b| b);
        if is_units(&minus) {
            minus_ok += 1;
        } else if minus_witness.is_none() {
            minus_witness = Some(json!({"w": w, "contains_zero": minus[0],
                "size": minus.iter().filter(|&&b| b).count()}));
        }
        if is_units(&plus) {
            plus_ok += 1;
        } else if plus_witness.is_none() {
            plus_witness = Some(json!({"w": w, "contains_zero": plus[0],
                "size": plus.iter().filter(|&&b| b).count()}));
        }
    }
    let minus_holds = minus_ok == ws;
    let plus_holds = plus_ok == ws;
    let verdict = match (minus_holds, plus_holds) {
        (true, true) => "both variants",
        (true, false) => "a^2-c^2+acw",
        (false, true) => "a^2+c^2-acw",
        (false, false) => "neither variant",
    };
    rec.detail(
        "form.anisotropic",
        json!({
            "w_values": ws,
            "variant_minus_c2_plus_acw": {"holds_for": minus_ok, "holds": minus_holds, "first_failure": minus_witness},
            "variant_plus_c2_minus_acw": {"holds_for": plus_ok, "holds": plus_holds, "first_failure": plus_witness},
            "holding_variant": verdict,
        }),
    );
    if !minus_holds && !plus_holds {
        rec.fail(json!({
            "claim": "form.anisotropic",
            "minus_variant_failure": minus_witness,
            "plus_variant_failure": plus_witness,
        }));
    }
}
