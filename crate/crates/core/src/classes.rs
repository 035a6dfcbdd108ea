//! Conjugacy classes of SL(2,q).
//!
//! Every class contains exactly one of the following representatives:
//!
//! * central `rI` with `r^2 = 1`;
//! * split `diag(r, r^-1)` with `r != ±1`, one per unordered pair `{r, r^-1}`;
//! * unipotent type `[[s, u], [0, s]]` with `s^2 = 1` and `u` either 1 or the
//!   least non-square (only `u = 1` in characteristic 2);
//! * irreducible `[[0, 1], [-1, w]]` where `x^2 - wx + 1` has no root in GF(q).
//!
//! Classification reads the trace first. Outside the repeated-root traces the
//! trace alone decides the class. For a repeated root `s`, a non-scalar matrix
//! is conjugate to `[[s + ucd, ud^2], [-uc^2, s - ucd]]`, so the square class of
//! `-m21` (or of `m12` when `m21 = 0`) recovers the square class of `u`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::{Mat2, Sl2};

/// Square class of the off-diagonal parameter of a unipotent-type class.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum UClass {
    Square,
    NonSquare,
}

impl UClass {
    fn sign(self) -> char {
        match self {
            UClass::Square => '+',
            UClass::NonSquare => '-',
        }
    }
}

/// Canonical name of a conjugacy class.
///
/// Ordering is by kind (central, split, unipotent, irreducible) and then by the
/// payload codes, which is also the order of [`ClassTable::entries`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ClassLabel {
    /// `rI`, printed `Z(r)`.
    Central { r: Elem },
    /// `diag(r, r^-1)` with `r` the smaller code of the pair, printed `D(r)`.
    Split { r: Elem },
    /// `[[s, u], [0, s]]`, printed `U(s,+)` or `U(s,-)`.
    Unipotent { s: Elem, u: UClass },
    /// `[[0, 1], [-1, w]]`, printed `W(w)`.
    Irreducible { w: Elem },
}

impl ClassLabel {
    pub fn is_central(&self) -> bool {
        matches!(self, ClassLabel::Central { .. })
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Central { r } => write!(f, "Z({r})"),
            ClassLabel::Split { r } => write!(f, "D({r})"),
            ClassLabel::Unipotent { s, u } => write!(f, "U({s},{})", u.sign()),
            ClassLabel::Irreducible { w } => write!(f, "W({w})"),
        }
    }
}

impl FromStr for ClassLabel {
    type Err = Error;

    /// Parses the printed form. Codes are not range-checked here; look the
    /// label up in a [`ClassTable`] to validate it.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::LabelParse(s.to_string());
        let t = s.trim();
        let (kind, rest) = t.split_at_checked(1).ok_or_else(err)?;
        let args = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(err)?;
        let code = |x: &str| -> Result<Elem> {
            x.trim().parse::<u32>().map(Elem::from_code).map_err(|_| err())
        };
        match kind {
            "Z" => Ok(ClassLabel::Central { r: code(args)? }),
            "D" => Ok(ClassLabel::Split { r: code(args)? }),
            "W" => Ok(ClassLabel::Irreducible { w: code(args)? }),
            "U" => {
                let (s, sign) = args.split_once(',').ok_or_else(err)?;
                let u = match sign.trim() {
                    "+" => UClass::Square,
                    "-" => UClass::NonSquare,
                    _ => return Err(err()),
                };
                Ok(ClassLabel::Unipotent { s: code(s)?, u })
            }
            _ => Err(err()),
        }
    }
}

impl Serialize for ClassLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ClassLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassEntry {
    pub label: ClassLabel,
    pub representative: Mat2,
    pub size: u64,
}

/// What the trace says about a non-central matrix.
#[derive(Clone, Copy, Debug)]
enum TraceClass {
    Split(usize),
    Irreducible(usize),
    Repeated {
        central: usize,
        square: usize,
        nonsquare: Option<usize>,
    },
}

/// The class list of SL(2,q) plus the lookup structures used to classify.
pub struct ClassTable {
    group: Sl2,
    entries: Vec<ClassEntry>,
    by_trace: Vec<TraceClass>,
    elements: OnceLock<Vec<Mat2>>,
    orbits: Vec<OnceLock<Vec<Mat2>>>,
}

impl fmt::Debug for ClassTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClassTable")
            .field("field", self.group.field())
            .field("entries", &self.entries)
            .finish()
    }
}

impl ClassTable {
    pub fn new(field: Field) -> ClassTable {
        let group = Sl2::new(field);
        let f = group.field().clone();
        let q = f.q() as u64;
        let minus_one = f.neg(Elem::ONE);

        // Roots of x^2 - tx + 1, gathered through r -> r + 1/r.
        let mut roots: Vec<Vec<Elem>> = vec![Vec::new(); q as usize];
        for r in f.nonzero() {
            let t = f.add(r, f.inv(r).expect("nonzero"));
            roots[t.code() as usize].push(r);
        }

        let mut entries = Vec::new();
        let mut central_roots: Vec<Elem> = vec![Elem::ONE];
        if minus_one != Elem::ONE {
            central_roots.push(minus_one);
        }
        for &r in &central_roots {
            entries.push(ClassEntry {
                label: ClassLabel::Central { r },
                representative: group.scalar(r),
                size: 1,
            });
        }
        for r in f.nonzero() {
            let r_inv = f.inv(r).expect("nonzero");
            if r == r_inv || r_inv < r {
                continue;
            }
            entries.push(ClassEntry {
                label: ClassLabel::Split { r },
                representative: Mat2::new(r, Elem::ZERO, Elem::ZERO, r_inv),
                size: q * (q + 1),
            });
        }
        let unipotent_size = if f.is_even() { q * q - 1 } else { (q * q - 1) / 2 };
        for &s in &central_roots {
            let mut params = vec![(Elem::ONE, UClass::Square)];
            if let Some(nu) = f.least_nonsquare() {
                params.push((nu, UClass::NonSquare));
            }
            for (u, class) in params {
                entries.push(ClassEntry {
                    label: ClassLabel::Unipotent { s, u: class },
                    representative: Mat2::new(s, u, Elem::ZERO, s),
                    size: unipotent_size,
                });
            }
        }
        for w in f.elements() {
            if roots[w.code() as usize].is_empty() {
                entries.push(ClassEntry {
                    label: ClassLabel::Irreducible { w },
                    representative: Mat2::new(Elem::ZERO, Elem::ONE, minus_one, w),
                    size: q * (q - 1),
                });
            }
        }
        debug_assert!(entries.windows(2).all(|w| w[0].label < w[1].label));

        let find = |label: ClassLabel| {
            entries
                .binary_search_by(|e| e.label.cmp(&label))
                .expect("label was just inserted")
        };
        let by_trace = f
            .elements()
            .map(|t| {
                let rs = &roots[t.code() as usize];
                match rs.as_slice() {
                    [] => TraceClass::Irreducible(find(ClassLabel::Irreducible { w: t })),
                    [s] => TraceClass::Repeated {
                        central: find(ClassLabel::Central { r: *s }),
                        square: find(ClassLabel::Unipotent {
                            s: *s,
                            u: UClass::Square,
                        }),
                        nonsquare: f.least_nonsquare().map(|_| {
                            find(ClassLabel::Unipotent {
                                s: *s,
                                u: UClass::NonSquare,
                            })
                        }),
                    },
                    [r1, r2] => TraceClass::Split(find(ClassLabel::Split { r: *r1.min(r2) })),
                    _ => unreachable!("a quadratic has at most two roots"),
                }
            })
            .collect();

        let orbits = (0..entries.len()).map(|_| OnceLock::new()).collect();
        ClassTable {
            group,
            entries,
            by_trace,
            elements: OnceLock::new(),
            orbits,
        }
    }

    pub fn with_order(q: u64) -> Result<ClassTable> {
        Ok(ClassTable::new(Field::with_order(q)?))
    }

    pub fn group(&self) -> &Sl2 {
        &self.group
    }

    pub fn field(&self) -> &Field {
        self.group.field()
    }

    pub fn q(&self) -> u32 {
        self.field().q()
    }

    /// Classes in canonical order.
    pub fn entries(&self) -> &[ClassEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn index_of(&self, label: &ClassLabel) -> Option<usize> {
        self.entries.binary_search_by(|e| e.label.cmp(label)).ok()
    }

    pub fn entry(&self, label: &ClassLabel) -> Result<&ClassEntry> {
        self.index_of(label)
            .map(|i| &self.entries[i])
            .ok_or_else(|| Error::UnknownLabel {
                label: label.to_string(),
                q: self.q(),
            })
    }

    /// Resolves a label string against this table.
    pub fn parse_label(&self, s: &str) -> Result<ClassLabel> {
        let label: ClassLabel = s.parse()?;
        self.entry(&label)?;
        Ok(label)
    }

    /// Index of the class of a determinant-one matrix. Does not check `det`.
    #[inline]
    pub fn classify_index(&self, m: &Mat2) -> usize {
        let f = self.field();
        match self.by_trace[self.group.trace(m).code() as usize] {
            TraceClass::Split(i) | TraceClass::Irreducible(i) => i,
            TraceClass::Repeated {
                central,
                square,
                nonsquare,
            } => {
                if self.group.is_scalar(m) {
                    return central;
                }
                let u = if m.c.is_zero() { m.b } else { f.neg(m.c) };
                match nonsquare {
                    Some(ns) if !f.is_square(u) => ns,
                    _ => square,
                }
            }
        }
    }

    pub fn classify(&self, m: &Mat2) -> Result<ClassLabel> {
        self.group.check_special(m)?;
        Ok(self.entries[self.classify_index(m)].label)
    }

    pub fn are_conjugate(&self, m: &Mat2, n: &Mat2) -> Result<bool> {
        Ok(self.classify(m)? == self.classify(n)?)
    }

    /// All group elements, computed once.
    pub fn elements(&self) -> &[Mat2] {
        self.elements.get_or_init(|| self.group.elements())
    }

    /// The conjugacy class of entry `idx` as a sorted list, computed by
    /// conjugating the representative by every group element.
    pub fn orbit(&self, idx: usize) -> &[Mat2] {
        self.orbits[idx].get_or_init(|| {
            let rep = self.entries[idx].representative;
            let mut seen = HashSet::with_capacity(self.entries[idx].size as usize);
            let mut out = Vec::with_capacity(self.entries[idx].size as usize);
            for c in self.elements() {
                let x = self.group.conjugate_unchecked(&rep, c);
                if seen.insert(x.key()) {
                    out.push(x);
                }
            }
            out.sort_unstable();
            out
        })
    }

    pub fn orbit_of(&self, label: &ClassLabel) -> Result<&[Mat2]> {
        let idx = self.index_of(label).ok_or_else(|| Error::UnknownLabel {
            label: label.to_string(),
            q: self.q(),
        })?;
        Ok(self.orbit(idx))
    }

    /// Indices of the noncentral classes.
    pub fn noncentral(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.label.is_central())
            .map(|(i, _)| i)
    }
}
