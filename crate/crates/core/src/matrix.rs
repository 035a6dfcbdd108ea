//! 2×2 matrices over GF(q) and the group SL(2,q).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::field::{Elem, Field, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("determinant is {0}, expected 1")]
    NotSpecial(Elem),
    #[error("cannot parse matrix literal {literal:?}: {reason}")]
    Parse { literal: String, reason: String },
}

/// `[[a, b], [c, d]]`, row-major.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mat2 {
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    pub d: Elem,
}

impl Mat2 {
    pub fn new(a: Elem, b: Elem, c: Elem, d: Elem) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    /// The four codes packed into one integer, 16 bits each.
    #[inline]
    pub fn key(&self) -> u64 {
        (self.a.code() as u64) << 48
            | (self.b.code() as u64) << 32
            | (self.c.code() as u64) << 16
            | self.d.code() as u64
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// Integer entries of a matrix literal, before they are tied to a field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixLiteral(pub [i64; 4]);

impl FromStr for MatrixLiteral {
    type Err = MatrixError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| MatrixError::Parse {
            literal: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix("[[")
            .and_then(|r| r.strip_suffix("]]"))
            .ok_or_else(|| fail("expected the form [[a,b],[c,d]]"))?;
        let (row1, row2) = body
            .split_once("],[")
            .ok_or_else(|| fail("expected two rows"))?;
        let mut out = [0i64; 4];
        let mut n = 0;
        for row in [row1, row2] {
            let cells: Vec<&str> = row.split(',').collect();
            if cells.len() != 2 {
                return Err(fail("each row needs exactly two entries"));
            }
            for cell in cells {
                out[n] = cell
                    .parse()
                    .map_err(|_| fail(&format!("{cell:?} is not an integer")))?;
                n += 1;
            }
        }
        Ok(MatrixLiteral(out))
    }
}

/// SL(2,q) over a fixed field.
#[derive(Clone, Debug)]
pub struct Sl2 {
    field: Field,
}

impl Sl2 {
    pub fn new(field: Field) -> Sl2 {
        Sl2 { field }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// `q(q^2 - 1)`.
    pub fn order(&self) -> u64 {
        let q = self.field.q() as u64;
        q * (q * q - 1)
    }

    /// A group element from codes; rejects bad codes and `det != 1`.
    pub fn matrix(&self, a: u64, b: u64, c: u64, d: u64) -> Result<Mat2, MatrixError> {
        let f = &self.field;
        let m = Mat2::new(f.elem(a)?, f.elem(b)?, f.elem(c)?, f.elem(d)?);
        self.check_special(&m)?;
        Ok(m)
    }

    pub fn check_special(&self, m: &Mat2) -> Result<(), MatrixError> {
        let det = self.det(m);
        if det == Elem::ONE {
            Ok(())
        } else {
            Err(MatrixError::NotSpecial(det))
        }
    }

    /// Resolves literal entries against this field. Negative integers are only
    /// meaningful in prime fields, where they are reduced mod p.
    pub fn from_literal(&self, lit: &MatrixLiteral) -> Result<Mat2, MatrixError> {
        let f = &self.field;
        let mut e = [Elem::ZERO; 4];
        for (slot, &v) in e.iter_mut().zip(lit.0.iter()) {
            *slot = if v < 0 {
                if f.m() != 1 {
                    return Err(MatrixError::Parse {
                        literal: format!("{:?}", lit.0),
                        reason: "negative entries are only accepted over prime fields".into(),
                    });
                }
                f.from_int(v)
            } else {
                f.elem(v as u64)?
            };
        }
        let m = Mat2::new(e[0], e[1], e[2], e[3]);
        self.check_special(&m)?;
        Ok(m)
    }

    pub fn parse(&self, s: &str) -> Result<Mat2, MatrixError> {
        self.from_literal(&s.parse()?)
    }

    pub fn identity(&self) -> Mat2 {
        Mat2::new(Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ONE)
    }

    pub fn scalar(&self, r: Elem) -> Mat2 {
        Mat2::new(r, Elem::ZERO, Elem::ZERO, r)
    }

    #[inline]
    pub fn det(&self, x: &Mat2) -> Elem {
        let f = &self.field;
        f.sub(f.mul(x.a, x.d), f.mul(x.b, x.c))
    }

    #[inline]
    pub fn trace(&self, x: &Mat2) -> Elem {
        self.field.add(x.a, x.d)
    }

    #[inline]
    pub fn mul(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        let f = &self.field;
        Mat2 {
            a: f.add(f.mul(x.a, y.a), f.mul(x.b, y.c)),
            b: f.add(f.mul(x.a, y.b), f.mul(x.b, y.d)),
            c: f.add(f.mul(x.c, y.a), f.mul(x.d, y.c)),
            d: f.add(f.mul(x.c, y.b), f.mul(x.d, y.d)),
        }
    }

    /// Trace of `x·y` without forming the product.
    #[inline]
    pub fn trace_of_product(&self, x: &Mat2, y: &Mat2) -> Elem {
        let f = &self.field;
        f.add(
            f.add(f.mul(x.a, y.a), f.mul(x.b, y.c)),
            f.add(f.mul(x.c, y.b), f.mul(x.d, y.d)),
        )
    }

    /// Adjugate `[[d,-b],[-c,a]]`, the inverse of a determinant-one matrix.
    #[inline]
    pub(crate) fn adjugate(&self, x: &Mat2) -> Mat2 {
        let f = &self.field;
        Mat2::new(x.d, f.neg(x.b), f.neg(x.c), x.a)
    }

    pub fn inv(&self, x: &Mat2) -> Result<Mat2, MatrixError> {
        self.check_special(x)?;
        Ok(self.adjugate(x))
    }

    /// `C^{-1} A C`, the right action of `C` on `A`.
    pub fn conjugate(&self, a: &Mat2, c: &Mat2) -> Result<Mat2, MatrixError> {
        self.check_special(c)?;
        Ok(self.conjugate_unchecked(a, c))
    }

    #[inline]
    pub(crate) fn conjugate_unchecked(&self, a: &Mat2, c: &Mat2) -> Mat2 {
        self.mul(&self.mul(&self.adjugate(c), a), c)
    }

    pub fn is_scalar(&self, x: &Mat2) -> bool {
        x.b.is_zero() && x.c.is_zero() && x.a == x.d
    }

    /// Whether `x = rI` with `r^2 = 1`.
    pub fn is_central(&self, x: &Mat2) -> bool {
        self.is_scalar(x) && self.field.square(x.a) == Elem::ONE
    }

    /// Every element of SL(2,q) once, ordered lexicographically by the codes
    /// `(a, b, c, d)`.
    ///
    /// With `a != 0` the last entry is forced to `(1 + bc)/a`; with `a = 0`
    /// the constraint is `bc = -1`, so `c = -1/b` and `d` is free.
    pub fn elements(&self) -> Vec<Mat2> {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.order() as usize);
        let minus_one = f.neg(Elem::ONE);
        for a in f.elements() {
            if a.is_zero() {
                for b in f.nonzero() {
                    let c = f.div(minus_one, b).expect("b is nonzero");
                    for d in f.elements() {
                        out.push(Mat2::new(a, b, c, d));
                    }
                }
            } else {
                let a_inv = f.inv(a).expect("a is nonzero");
                for b in f.elements() {
                    for c in f.elements() {
                        let d = f.mul(f.add(Elem::ONE, f.mul(b, c)), a_inv);
                        out.push(Mat2::new(a, b, c, d));
                    }
                }
            }
        }
        out
    }
}
