mod common;

use std::collections::{BTreeSet, HashMap};

use common::{minv, mmul, orbit_partition, sl2_brute, NaiveField, M};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sl2q_core::field::prime_powers_up_to;
use sl2q_core::{ClassLabel, ClassTable, Mat2};

fn codes(m: &Mat2) -> M {
    [m.a.code(), m.b.code(), m.c.code(), m.d.code()]
}

fn naive(t: &ClassTable) -> NaiveField {
    NaiveField::new(t.field().p(), t.field().m())
}

#[test]
fn enumeration_matches_brute_force_filter() {
    for q in prime_powers_up_to(9) {
        let t = ClassTable::with_order(q).unwrap();
        let ours: Vec<M> = t.elements().iter().map(codes).collect();
        let brute = sl2_brute(&naive(&t));
        assert_eq!(ours, brute, "q={q}");
        assert_eq!(ours.len() as u64, q * (q * q - 1));
    }
}

#[test]
fn group_order_formula() {
    for q in prime_powers_up_to(32) {
        let t = ClassTable::with_order(q).unwrap();
        assert_eq!(t.elements().len() as u64, q * (q * q - 1));
        assert_eq!(t.group().order(), q * (q * q - 1));
    }
}

#[test]
fn closure_under_multiplication() {
    for q in [2, 3, 4] {
        let t = ClassTable::with_order(q).unwrap();
        let g = t.group();
        let set: BTreeSet<Mat2> = t.elements().iter().copied().collect();
        for x in t.elements() {
            for y in t.elements() {
                assert!(set.contains(&g.mul(x, y)));
            }
        }
    }
    let t = ClassTable::with_order(27).unwrap();
    let g = t.group();
    let set: BTreeSet<Mat2> = t.elements().iter().copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5000 {
        let x = &t.elements()[rng.random_range(0..t.elements().len())];
        let y = &t.elements()[rng.random_range(0..t.elements().len())];
        assert!(set.contains(&g.mul(x, y)));
    }
}

#[test]
fn conjugation_is_a_right_action() {
    for q in [2, 3] {
        let t = ClassTable::with_order(q).unwrap();
        let g = t.group();
        for a in t.elements() {
            for c in t.elements() {
                for d in t.elements() {
                    let lhs = g.conjugate(a, &g.mul(c, d)).unwrap();
                    let rhs = g.conjugate(&g.conjugate(a, c).unwrap(), d).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in [4, 5, 7, 8, 9] {
        let t = ClassTable::with_order(q).unwrap();
        let g = t.group();
        let n = t.elements().len();
        for _ in 0..2000 {
            let [a, c, d] = [0; 3].map(|_| t.elements()[rng.random_range(0..n)]);
            let lhs = g.conjugate(&a, &g.mul(&c, &d)).unwrap();
            let rhs = g.conjugate(&g.conjugate(&a, &c).unwrap(), &d).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn center_size() {
    for q in prime_powers_up_to(25) {
        let t = ClassTable::with_order(q).unwrap();
        let n = t.elements().iter().filter(|m| t.group().is_central(m)).count();
        assert_eq!(n, if q % 2 == 0 { 1 } else { 2 }, "q={q}");
    }
}

#[test]
fn classify_matches_orbit_partition() {
    for q in prime_powers_up_to(9) {
        let t = ClassTable::with_order(q).unwrap();
        let f = naive(&t);
        let group = sl2_brute(&f);
        let part = orbit_partition(&f, &group);
        assert_eq!(part.classes.len(), t.len(), "q={q}");

        // Orbit ids and labels must induce the same partition.
        let mut label_of_orbit: HashMap<usize, ClassLabel> = HashMap::new();
        for m in t.elements() {
            let label = t.classify(m).unwrap();
            let orbit = part.class_of[&codes(m)];
            let seen = *label_of_orbit.entry(orbit).or_insert(label);
            assert_eq!(seen, label, "q={q} m={m}");
        }
        let distinct: BTreeSet<ClassLabel> = label_of_orbit.values().copied().collect();
        assert_eq!(distinct.len(), part.classes.len());

        for entry in t.entries() {
            let orbit = part.class_of[&codes(&entry.representative)];
            assert_eq!(part.classes[orbit].len() as u64, entry.size, "q={q} {}", entry.label);
            let ours: Vec<M> = t.orbit_of(&entry.label).unwrap().iter().map(codes).collect();
            assert_eq!(ours, part.classes[orbit], "q={q} {}", entry.label);
        }
    }
}

#[test]
fn class_counts_and_sizes() {
    for q in prime_powers_up_to(64) {
        let t = ClassTable::with_order(q).unwrap();
        let expected = if q % 2 == 0 { q + 1 } else { q + 4 };
        assert_eq!(t.len() as u64, expected, "q={q}");
        let total: u64 = t.entries().iter().map(|e| e.size).sum();
        assert_eq!(total, q * (q * q - 1));
        for e in t.entries() {
            let size = match e.label {
                ClassLabel::Central { .. } => 1,
                ClassLabel::Split { .. } => q * (q + 1),
                ClassLabel::Unipotent { .. } if q % 2 == 0 => q * q - 1,
                ClassLabel::Unipotent { .. } => (q * q - 1) / 2,
                ClassLabel::Irreducible { .. } => q * (q - 1),
            };
            assert_eq!(e.size, size, "q={q} {}", e.label);
        }
    }
}

#[test]
fn classification_is_conjugation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for q in [11, 13, 16, 25, 27, 32] {
        let t = ClassTable::with_order(q).unwrap();
        let g = t.group();
        let n = t.elements().len();
        for _ in 0..2000 {
            let a = t.elements()[rng.random_range(0..n)];
            let c = t.elements()[rng.random_range(0..n)];
            let b = g.conjugate(&a, &c).unwrap();
            assert_eq!(t.classify(&a).unwrap(), t.classify(&b).unwrap());
        }
    }
}

#[test]
fn naive_inverse_agrees() {
    let t = ClassTable::with_order(5).unwrap();
    let f = naive(&t);
    for m in t.elements() {
        let x = codes(m);
        assert_eq!(mmul(&f, &x, &minv(&f, &x)), [1, 0, 0, 1]);
        assert_eq!(codes(&t.group().inv(m).unwrap()), minv(&f, &x));
    }
}
