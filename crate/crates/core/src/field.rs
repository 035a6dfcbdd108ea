//! Arithmetic in GF(p^m).
//!
//! An element is stored as a single integer code in `[0, q)` whose base-`p`
//! digits are the coefficients of its residue polynomial (digit `k` is the
//! coefficient of `x^k`). The modulus is the lexicographically least monic
//! irreducible polynomial of degree `m`, compared from the constant term
//! upward, so a given `(p, m)` always produces the same field.
//!
//! Multiplication goes through exp/log tables over a primitive element. The
//! tables themselves are built with plain polynomial reduction, which stays
//! available as [`Field::mul_reference`] for cross-checking.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported field order. Matrices pack four codes into a `u64`.
pub const MAX_ORDER: u64 = 1 << 16;

/// Addition tables are materialized up to this order.
const ADD_TABLE_MAX: u32 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field degree must be at least 1")]
    ZeroDegree,
    #[error("{p}^{m} overflows the supported integer range")]
    Overflow { p: u64, m: u32 },
    #[error("field order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(u64),
    #[error("code {code} is not a valid element of GF({q})")]
    InvalidEncoding { code: u64, q: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus {0:?} is not a monic irreducible polynomial of the stated degree")]
    BadModulus(Vec<u32>),
}

/// One element of a finite field, identified by its canonical code.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    /// Wraps a code without range checking; callers guarantee `code < q`.
    #[inline]
    pub(crate) fn from_code(code: u32) -> Elem {
        Elem(code)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serializable description of a field: enough to rebuild it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldParams {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: Elem,
    least_nonsquare: Option<Elem>,
    /// `exp[i] = g^i` for `i < 2(q-1)`, doubled so log sums need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    square: Vec<bool>,
    add: Option<Vec<u32>>,
}

/// A concrete finite field GF(p^m). Cheap to clone; immutable once built.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.inner.p)
            .field("m", &self.inner.m)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p
            && self.inner.m == other.inner.m
            && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits `q` as `p^m` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// All prime powers in `[2, max]`, ascending.
pub fn prime_powers_up_to(max: u64) -> Vec<u64> {
    (2..=max).filter(|&q| prime_power(q).is_some()).collect()
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Polynomials over GF(p) as little-endian coefficient vectors.
mod poly {
    pub fn digits(code: u32, p: u32, m: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(m as usize);
        let mut c = code;
        for _ in 0..m {
            out.push(c % p);
            c /= p;
        }
        out
    }

    pub fn from_digits(digits: &[u32], p: u32) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * p + d)
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        // p is prime, so a^(p-2) is the inverse.
        let (mut base, mut e, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    /// Remainder of `a` modulo `b`; `b` must be nonzero.
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p) as u64;
        while r.len() > db {
            let dr = r.len() - 1;
            let factor = r[dr] as u64 * lead_inv % p as u64;
            let shift = dr - db;
            for (i, &bi) in b.iter().enumerate() {
                let sub = factor * bi as u64 % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
        let mut prod = vec![0u64; a.len() + b.len()];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|x| x as u32).collect();
        rem(&prod, modulus, p)
    }

    fn eval(f: &[u32], x: u32, p: u32) -> u32 {
        f.iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64) as u32
    }

    /// Irreducibility of a monic polynomial of degree `m` over GF(p).
    ///
    /// Up to degree 3 a factorization must contain a linear factor, so a root
    /// scan decides it. Above that, trial division by every monic polynomial of
    /// degree at most `m/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let m = f.len() - 1;
        if m == 1 {
            return true;
        }
        if (0..p).any(|x| eval(f, x, p) == 0) {
            return false;
        }
        if m <= 3 {
            return true;
        }
        for deg in 2..=m / 2 {
            let count = (p as u64).pow(deg as u32);
            for low in 0..count {
                let mut g = digits(low as u32, p, deg as u32);
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Lexicographically least monic irreducible of degree `m`, comparing the
    /// coefficient tuple from the constant term upward.
    pub fn least_irreducible(p: u32, m: u32) -> Vec<u32> {
        let count = (p as u64).pow(m);
        for idx in 0..count {
            // Constant term is the most significant digit of the scan index.
            let mut f = digits(idx as u32, p, m);
            f.reverse();
            f.push(1);
            if is_irreducible(&f, p) {
                return f;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }
}

impl Field {
    /// Builds GF(p^m) with the canonical modulus.
    pub fn new(p: u64, m: u32) -> Result<Field, FieldError> {
        let q = Self::checked_order(p, m)?;
        let modulus = poly::least_irreducible(p as u32, m);
        Ok(Self::build(p as u32, m, q, modulus))
    }

    /// Builds GF(q) for a prime power `q`.
    pub fn with_order(q: u64) -> Result<Field, FieldError> {
        let (p, m) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Field::new(p, m)
    }

    /// Rebuilds a field from serialized parameters, validating the modulus.
    pub fn from_params(params: &FieldParams) -> Result<Field, FieldError> {
        let q = Self::checked_order(params.p as u64, params.m)?;
        let f = &params.modulus;
        let ok = f.len() == params.m as usize + 1
            && f.last() == Some(&1)
            && f.iter().all(|&c| c < params.p)
            && poly::is_irreducible(f, params.p);
        if !ok {
            return Err(FieldError::BadModulus(f.clone()));
        }
        Ok(Self::build(params.p, params.m, q, f.clone()))
    }

    fn checked_order(p: u64, m: u32) -> Result<u32, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = p.checked_pow(m).ok_or(FieldError::Overflow { p, m })?;
        if q > MAX_ORDER {
            return Err(FieldError::TooLarge(q));
        }
        Ok(q as u32)
    }

    fn build(p: u32, m: u32, q: u32, modulus: Vec<u32>) -> Field {
        let mul_ref = |x: u32, y: u32| -> u32 {
            let r = poly::mul_mod(
                &poly::digits(x, p, m),
                &poly::digits(y, p, m),
                &modulus,
                p,
            );
            poly::from_digits(&r, p)
        };

        // Smallest element whose powers run through all q-1 units.
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let pow_ref = |x: u32, mut e: u64| -> u32 {
            let (mut base, mut acc) = (x, 1u32);
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_ref(acc, base);
                }
                base = mul_ref(base, base);
                e >>= 1;
            }
            acc
        };
        let primitive = (1..q)
            .find(|&g| factors.iter().all(|&l| pow_ref(g, order / l) != 1))
            .expect("multiplicative group of a finite field is cyclic");

        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u32;
        for i in 0..n {
            exp[i] = acc;
            log[acc as usize] = i as u32;
            acc = mul_ref(acc, primitive);
        }
        debug_assert_eq!(acc, 1);
        for i in n..2 * n {
            exp[i] = exp[i - n];
        }

        let add_digits = |x: u32, y: u32| -> u32 {
            if m == 1 {
                return (x + y) % p;
            }
            let (mut x, mut y, mut out, mut place) = (x, y, 0u32, 1u32);
            for _ in 0..m {
                out += ((x % p + y % p) % p) * place;
                x /= p;
                y /= p;
                place *= p;
            }
            out
        };
        let neg: Vec<u32> = (0..q)
            .map(|x| {
                let d: Vec<u32> = poly::digits(x, p, m)
                    .into_iter()
                    .map(|c| (p - c) % p)
                    .collect();
                poly::from_digits(&d, p)
            })
            .collect();
        let add = (q <= ADD_TABLE_MAX).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for x in 0..q {
                for y in 0..q {
                    t[(x * q + y) as usize] = add_digits(x, y);
                }
            }
            t
        });

        let mut square = vec![false; q as usize];
        for x in 0..q {
            square[mul_ref(x, x) as usize] = true;
        }
        let least_nonsquare = (p != 2).then(|| {
            Elem((0..q).find(|&x| !square[x as usize]).expect("odd q has non-squares"))
        });

        Field {
            inner: Arc::new(Inner {
                p,
                m,
                q,
                modulus,
                primitive: Elem(primitive),
                least_nonsquare,
                exp,
                log,
                neg,
                square,
                add,
            }),
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.inner.m
    }

    /// Field order `p^m`.
    #[inline]
    pub fn q(&self) -> u32 {
        self.inner.q
    }

    pub fn is_even(&self) -> bool {
        self.inner.p == 2
    }

    /// Modulus coefficients `[c0, .., cm]`, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn primitive_elem(&self) -> Elem {
        self.inner.primitive
    }

    /// Non-square of smallest code; `None` in characteristic 2.
    pub fn least_nonsquare(&self) -> Option<Elem> {
        self.inner.least_nonsquare
    }

    pub fn params(&self) -> FieldParams {
        FieldParams {
            p: self.inner.p,
            m: self.inner.m,
            modulus: self.inner.modulus.clone(),
        }
    }

    /// Validates a code.
    pub fn elem(&self, code: u64) -> Result<Elem, FieldError> {
        if code < self.inner.q as u64 {
            Ok(Elem(code as u32))
        } else {
            Err(FieldError::InvalidEncoding {
                code,
                q: self.inner.q,
            })
        }
    }

    /// Image of an integer under `Z -> GF(p) ⊆ GF(q)`.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.inner.p as i64) as u32)
    }

    /// All elements in increasing code order.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = Elem> + Clone {
        (0..self.inner.q).map(Elem)
    }

    pub fn nonzero(&self) -> impl ExactSizeIterator<Item = Elem> + Clone {
        (1..self.inner.q).map(Elem)
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        debug_assert!(x.0 < self.inner.q && y.0 < self.inner.q);
        match &self.inner.add {
            Some(t) => Elem(t[(x.0 * self.inner.q + y.0) as usize]),
            None => {
                let (p, m) = (self.inner.p, self.inner.m);
                if m == 1 {
                    return Elem((x.0 + y.0) % p);
                }
                let (mut a, mut b, mut out, mut place) = (x.0, y.0, 0u32, 1u32);
                for _ in 0..m {
                    out += ((a % p + b % p) % p) * place;
                    a /= p;
                    b /= p;
                    place *= p;
                }
                Elem(out)
            }
        }
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        Elem(self.inner.neg[x.0 as usize])
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x.0 == 0 || y.0 == 0 {
            return Elem::ZERO;
        }
        let i = self.inner.log[x.0 as usize] + self.inner.log[y.0 as usize];
        Elem(self.inner.exp[i as usize])
    }

    #[inline]
    pub fn square(&self, x: Elem) -> Elem {
        self.mul(x, x)
    }

    pub fn inv(&self, x: Elem) -> Result<Elem, FieldError> {
        if x.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.inner.q - 1;
        let l = self.inner.log[x.0 as usize];
        Ok(Elem(self.inner.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if x.0 == 0 {
            return Elem::ZERO;
        }
        let n = (self.inner.q - 1) as u64;
        let l = self.inner.log[x.0 as usize] as u64;
        Elem(self.inner.exp[((l * (e % n)) % n) as usize])
    }

    /// Whether `x = y^2` for some `y`. Zero counts as a square.
    #[inline]
    pub fn is_square(&self, x: Elem) -> bool {
        self.inner.square[x.0 as usize]
    }

    /// Product by direct polynomial reduction, bypassing the log tables.
    pub fn mul_reference(&self, x: Elem, y: Elem) -> Elem {
        let (p, m) = (self.inner.p, self.inner.m);
        let r = poly::mul_mod(
            &poly::digits(x.0, p, m),
            &poly::digits(y.0, p, m),
            &self.inner.modulus,
            p,
        );
        Elem(poly::from_digits(&r, p))
    }

    /// Multiplicative order of a nonzero element, by repeated multiplication.
    pub fn order(&self, x: Elem) -> Result<u64, FieldError> {
        if x.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let mut acc = x;
        let mut k = 1;
        while acc != Elem::ONE {
            acc = self.mul_reference(acc, x);
            k += 1;
        }
        Ok(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_modulus_and_products() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.mul(Elem(2), Elem(2)), Elem(3));
        assert_eq!(f.add(Elem(2), Elem(2)), Elem(0));
        assert_eq!(f.inv(Elem(2)).unwrap(), Elem(3));
    }

    #[test]
    fn gf9_modulus_is_x2_plus_1() {
        // x^2 + 1 has no root mod 3, and every tuple before (1, 0) has c0 = 0.
        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        assert_eq!(f.q(), 9);
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.q(), 5);
        assert_eq!(f.add(Elem(2), Elem(4)), Elem(1));
        assert_eq!(f.mul(Elem(3), Elem(4)), Elem(2));
        assert_eq!(f.inv(Elem(2)).unwrap(), Elem(3));
        assert_eq!(f.inv(Elem::ONE).unwrap(), Elem::ONE);
        assert!(f.is_square(Elem(4)));
        assert!(!f.is_square(Elem(2)));
        assert_eq!(f.least_nonsquare(), Some(Elem(2)));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(6, 1).unwrap_err(), FieldError::NotPrime(6));
        assert_eq!(Field::new(5, 0).unwrap_err(), FieldError::ZeroDegree);
        assert!(matches!(
            Field::new(2, 70).unwrap_err(),
            FieldError::Overflow { .. }
        ));
        assert!(matches!(
            Field::new(2, 17).unwrap_err(),
            FieldError::TooLarge(_)
        ));
        assert_eq!(
            Field::with_order(6).unwrap_err(),
            FieldError::NotPrimePower(6)
        );
    }

    #[test]
    fn zero_has_no_inverse() {
        let f = Field::new(7, 1).unwrap();
        assert_eq!(f.inv(Elem::ZERO), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn invalid_codes_are_rejected() {
        let f = Field::new(3, 2).unwrap();
        assert!(f.elem(8).is_ok());
        assert_eq!(
            f.elem(9).unwrap_err(),
            FieldError::InvalidEncoding { code: 9, q: 9 }
        );
    }

    #[test]
    fn enumeration_order() {
        let f = Field::new(2, 2).unwrap();
        let codes: Vec<u32> = f.elements().map(Elem::code).collect();
        assert_eq!(codes, vec![0, 1, 2, 3]);
        assert_eq!(Field::new(3, 2).unwrap().elements().len(), 9);
    }

    #[test]
    fn gf8_everything_is_a_square() {
        let f = Field::new(2, 3).unwrap();
        assert!(f.elements().all(|x| f.is_square(x)));
        assert_eq!(f.least_nonsquare(), None);
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(
            prime_powers_up_to(16),
            vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
        );
    }

    #[test]
    fn params_round_trip() {
        let f = Field::new(2, 4).unwrap();
        let g = Field::from_params(&f.params()).unwrap();
        assert_eq!(f, g);
        let bad = FieldParams {
            p: 2,
            m: 2,
            modulus: vec![1, 0, 1],
        };
        assert!(matches!(
            Field::from_params(&bad),
            Err(FieldError::BadModulus(_))
        ));
    }

    #[test]
    fn large_field_without_add_table() {
        let f = Field::new(2, 11).unwrap();
        for x in (0..f.q()).step_by(97).map(Elem) {
            assert_eq!(f.add(x, x), Elem::ZERO);
            for y in (0..f.q()).step_by(301).map(Elem) {
                assert_eq!(f.mul(x, y), f.mul_reference(x, y));
            }
        }
    }
}
