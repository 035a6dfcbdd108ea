//! Operator sugar for writing closed-form field expressions.

use std::ops::{Add, Mul, Neg, Sub};

use crate::field::{Elem, Field};
use crate::matrix::Mat2;

#[derive(Clone, Copy)]
pub(crate) struct Fe<'a> {
    f: &'a Field,
    v: Elem,
}

impl<'a> Fe<'a> {
    pub fn new(f: &'a Field, v: Elem) -> Self {
        Fe { f, v }
    }

    pub fn int(f: &'a Field, n: i64) -> Self {
        Fe { f, v: f.from_int(n) }
    }

    pub fn val(self) -> Elem {
        self.v
    }

    pub fn sq(self) -> Self {
        self * self
    }
}

impl<'a> Add for Fe<'a> {
    type Output = Fe<'a>;
    fn add(self, o: Fe<'a>) -> Fe<'a> {
        Fe::new(self.f, self.f.add(self.v, o.v))
    }
}

impl<'a> Sub for Fe<'a> {
    type Output = Fe<'a>;
    fn sub(self, o: Fe<'a>) -> Fe<'a> {
        Fe::new(self.f, self.f.sub(self.v, o.v))
    }
}

impl<'a> Mul for Fe<'a> {
    type Output = Fe<'a>;
    fn mul(self, o: Fe<'a>) -> Fe<'a> {
        Fe::new(self.f, self.f.mul(self.v, o.v))
    }
}

impl<'a> Neg for Fe<'a> {
    type Output = Fe<'a>;
    fn neg(self) -> Fe<'a> {
        Fe::new(self.f, self.f.neg(self.v))
    }
}

/// Entries of a matrix lifted into expressions.
pub(crate) fn entries<'a>(f: &'a Field, m: &Mat2) -> (Fe<'a>, Fe<'a>, Fe<'a>, Fe<'a>) {
    (
        Fe::new(f, m.a),
        Fe::new(f, m.b),
        Fe::new(f, m.c),
        Fe::new(f, m.d),
    )
}

pub(crate) fn mat(m11: Fe, m12: Fe, m21: Fe, m22: Fe) -> Mat2 {
    Mat2::new(m11.val(), m12.val(), m21.val(), m22.val())
}
