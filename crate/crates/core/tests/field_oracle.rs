mod common;

use common::NaiveField;
use sl2q_core::field::{prime_power, prime_powers_up_to};
use sl2q_core::{Elem, Field};

fn pairs(q: u64) -> Vec<(u64, u32)> {
    prime_powers_up_to(q)
        .into_iter()
        .map(|q| prime_power(q).unwrap())
        .collect()
}

#[test]
fn modulus_matches_brute_force_scan() {
    for (p, m) in pairs(128) {
        let f = Field::new(p, m).unwrap();
        let naive = NaiveField::new(p as u32, m);
        assert_eq!(f.modulus(), naive.modulus.as_slice(), "GF({p}^{m})");
    }
}

#[test]
fn known_moduli() {
    assert_eq!(Field::with_order(4).unwrap().modulus(), &[1, 1, 1]);
    assert_eq!(Field::with_order(9).unwrap().modulus(), &[1, 0, 1]);
    assert_eq!(Field::with_order(8).unwrap().modulus(), &[1, 0, 1, 1]);
}

#[test]
fn arithmetic_matches_schoolbook_polynomials() {
    for (p, m) in pairs(64) {
        let f = Field::new(p, m).unwrap();
        let naive = NaiveField::new(p as u32, m);
        for x in f.elements() {
            for y in f.elements() {
                let (a, b) = (x.code(), y.code());
                assert_eq!(f.add(x, y).code(), naive.add(a, b));
                assert_eq!(f.sub(x, y).code(), naive.sub(a, b));
                assert_eq!(f.mul(x, y).code(), naive.mul(a, b), "GF({p}^{m}) {a}*{b}");
                assert_eq!(f.mul_reference(x, y), f.mul(x, y));
            }
        }
    }
}

#[test]
fn field_axioms_exhaustive() {
    for q in prime_powers_up_to(32) {
        let f = Field::with_order(q).unwrap();
        let els: Vec<Elem> = f.elements().collect();
        for &x in &els {
            assert_eq!(f.add(x, f.neg(x)), Elem::ZERO);
            assert_eq!(f.mul(x, Elem::ONE), x);
            if !x.is_zero() {
                assert_eq!(f.mul(x, f.inv(x).unwrap()), Elem::ONE);
            }
            for &y in &els {
                assert_eq!(f.add(x, y), f.add(y, x));
                assert_eq!(f.mul(x, y), f.mul(y, x));
                for &z in &els {
                    assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
                    assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                    assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                }
            }
        }
    }
}

#[test]
fn frobenius_is_additive() {
    for q in prime_powers_up_to(32) {
        let f = Field::with_order(q).unwrap();
        let p = f.p() as u64;
        for x in f.elements() {
            for y in f.elements() {
                assert_eq!(f.pow(f.add(x, y), p), f.add(f.pow(x, p), f.pow(y, p)));
            }
        }
    }
}

#[test]
fn primitive_element_has_full_order() {
    for q in prime_powers_up_to(256) {
        let f = Field::with_order(q).unwrap();
        let g = f.primitive_elem();
        let mut x = Elem::ONE;
        let mut order = 0u64;
        loop {
            x = f.mul(x, g);
            order += 1;
            if x == Elem::ONE {
                break;
            }
        }
        assert_eq!(order, q - 1, "q={q}");
    }
}

#[test]
fn square_counts_and_least_nonsquare() {
    for q in prime_powers_up_to(81) {
        let f = Field::with_order(q).unwrap();
        let naive = NaiveField::new(f.p(), f.m());
        let squares = naive.squares();
        let flagged: Vec<u32> = f.elements().filter(|&x| f.is_square(x)).map(|x| x.code()).collect();
        assert_eq!(flagged, squares.iter().copied().collect::<Vec<_>>(), "q={q}");
        if f.is_even() {
            assert_eq!(squares.len() as u64, q);
            assert_eq!(f.least_nonsquare(), None);
        } else {
            assert_eq!(squares.len() as u64, (q + 1) / 2);
            let least = (0..naive.q).find(|x| !squares.contains(x)).unwrap();
            assert_eq!(f.least_nonsquare().map(|e| e.code()), Some(least));
        }
    }
}

#[test]
fn rejects_non_prime_powers_and_bad_codes() {
    assert!(Field::with_order(6).is_err());
    assert!(Field::with_order(1).is_err());
    assert!(Field::new(4, 2).is_err());
    let f = Field::with_order(5).unwrap();
    assert!(f.elem(5).is_err());
    assert!(f.inv(Elem::ZERO).is_err());
}
