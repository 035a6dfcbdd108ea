//! Slow, independent reference implementations used as test oracles.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

/// GF(p^m) by schoolbook polynomial arithmetic on digit vectors.
pub struct NaiveField {
    pub p: u32,
    pub m: u32,
    pub q: u32,
    pub modulus: Vec<u32>,
}

fn digits(code: u32, p: u32, m: u32) -> Vec<u32> {
    let mut c = code;
    (0..m)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// All monic polynomials of degree `d`, coefficient vectors of length `d + 1`.
fn monics(p: u32, d: u32) -> Vec<Vec<u32>> {
    (0..p.pow(d))
        .map(|c| {
            let mut v = digits(c, p, d);
            v.push(1);
            v
        })
        .collect()
}

/// Irreducible iff no product of two monics of positive degree equals it.
fn is_irreducible_brute(f: &[u32], p: u32) -> bool {
    let n = f.len() as u32 - 1;
    for d in 1..=n / 2 {
        for g in monics(p, d) {
            for h in monics(p, n - d) {
                if poly_mul(&g, &h, p) == f {
                    return false;
                }
            }
        }
    }
    true
}

impl NaiveField {
    pub fn new(p: u32, m: u32) -> NaiveField {
        // Vec ordering compares the constant term first.
        let count = p.pow(m);
        let mut candidates: Vec<Vec<u32>> = monics(p, m);
        candidates.sort();
        let modulus = candidates
            .into_iter()
            .find(|f| is_irreducible_brute(f, p))
            .expect("an irreducible polynomial exists");
        NaiveField {
            p,
            m,
            q: count,
            modulus,
        }
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        let (a, b) = (digits(x, self.p, self.m), digits(y, self.p, self.m));
        let s: Vec<u32> = a.iter().zip(&b).map(|(u, v)| (u + v) % self.p).collect();
        undigits(&s, self.p)
    }

    pub fn neg(&self, x: u32) -> u32 {
        let a = digits(x, self.p, self.m);
        let s: Vec<u32> = a.iter().map(|u| (self.p - u) % self.p).collect();
        undigits(&s, self.p)
    }

    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let (p, m) = (self.p, self.m as usize);
        let mut prod = poly_mul(&digits(x, p, self.m), &digits(y, p, self.m), p);
        // Reduce by the monic modulus from the top degree down.
        for k in (m..prod.len()).rev() {
            let lead = prod[k];
            if lead == 0 {
                continue;
            }
            for (i, &c) in self.modulus.iter().enumerate() {
                let idx = k - m + i;
                prod[idx] = (prod[idx] + p * p - lead * c % p) % p;
            }
        }
        prod.truncate(m);
        undigits(&prod, p)
    }

    pub fn squares(&self) -> BTreeSet<u32> {
        (0..self.q).map(|x| self.mul(x, x)).collect()
    }
}

pub type M = [u32; 4];

pub fn mmul(f: &NaiveField, x: &M, y: &M) -> M {
    let e = |a, b, c, d| f.add(f.mul(a, b), f.mul(c, d));
    [
        e(x[0], y[0], x[1], y[2]),
        e(x[0], y[1], x[1], y[3]),
        e(x[2], y[0], x[3], y[2]),
        e(x[2], y[1], x[3], y[3]),
    ]
}

pub fn minv(f: &NaiveField, x: &M) -> M {
    [x[3], f.neg(x[1]), f.neg(x[2]), x[0]]
}

/// SL(2,q) by filtering all `q^4` matrices.
pub fn sl2_brute(f: &NaiveField) -> Vec<M> {
    let q = f.q;
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    if f.sub(f.mul(a, d), f.mul(b, c)) == 1 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// Conjugacy classes as a map from element to class id, ids by first sighting.
pub struct Partition {
    pub class_of: HashMap<M, usize>,
    pub classes: Vec<Vec<M>>,
}

pub fn orbit_partition(f: &NaiveField, group: &[M]) -> Partition {
    let mut class_of = HashMap::new();
    let mut classes = Vec::new();
    for x in group {
        if class_of.contains_key(x) {
            continue;
        }
        let id = classes.len();
        let orbit: BTreeSet<M> = group
            .iter()
            .map(|g| mmul(f, &mmul(f, &minv(f, g), x), g))
            .collect();
        for y in &orbit {
            class_of.insert(*y, id);
        }
        classes.push(orbit.into_iter().collect());
    }
    Partition { class_of, classes }
}

/// Class ids meeting `{x·y : x ∈ class a, y ∈ class b}`.
pub fn product_classes(f: &NaiveField, part: &Partition, a: usize, b: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for x in &part.classes[a] {
        for y in &part.classes[b] {
            out.insert(part.class_of[&mmul(f, x, y)]);
        }
    }
    out
}
