//! Class decomposition of products of conjugacy classes.
//!
//! For classes `A^S` and `B^S`, every product `X·Y` with `X ∈ A^S`, `Y ∈ B^S`
//! is conjugate to some `X'·B`: `A^c B^d = (A^{c d^-1} B)^d`. So the classes
//! present in `A^S B^S` are exactly the classes of `{X·B : X ∈ A^S}`, which
//! needs only one orbit and one pass.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classes::{ClassLabel, ClassTable};
use crate::error::Result;
use crate::field::Elem;
use crate::matrix::Mat2;

/// Outcome of one class-product computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EtaReport {
    pub q: u32,
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
    pub a: ClassLabel,
    pub b: ClassLabel,
    pub eta: usize,
    pub labels: Vec<ClassLabel>,
    pub traces: Vec<Elem>,
    pub elapsed_ms: f64,
}

/// `min(G)` with the first pair attaining it, in table order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinEta {
    pub q: u32,
    pub min_g: usize,
    pub witness: (ClassLabel, ClassLabel),
}

/// Which classes (by table index) and which traces occur in a product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSummary {
    pub classes: Vec<bool>,
    pub traces: Vec<bool>,
}

impl ProductSummary {
    pub fn eta(&self) -> usize {
        self.classes.iter().filter(|&&x| x).count()
    }

    pub fn labels(&self, table: &ClassTable) -> Vec<ClassLabel> {
        self.classes
            .iter()
            .zip(table.entries())
            .filter(|(&hit, _)| hit)
            .map(|(_, e)| e.label)
            .collect()
    }

    pub fn trace_list(&self) -> Vec<Elem> {
        self.traces
            .iter()
            .enumerate()
            .filter(|(_, &hit)| hit)
            .map(|(t, _)| Elem::from_code(t as u32))
            .collect()
    }

    pub fn contains(&self, table: &ClassTable, label: &ClassLabel) -> bool {
        table.index_of(label).is_some_and(|i| self.classes[i])
    }
}

/// Scans `{X·b : X ∈ orbit(a_idx)}`.
pub fn summarize(table: &ClassTable, a_idx: usize, b: &Mat2) -> ProductSummary {
    let g = table.group();
    let mut classes = vec![false; table.len()];
    let mut traces = vec![false; table.q() as usize];
    for x in table.orbit(a_idx) {
        let y = g.mul(x, b);
        classes[table.classify_index(&y)] = true;
        traces[g.trace(&y).code() as usize] = true;
    }
    ProductSummary { classes, traces }
}

fn summarize_matrices(table: &ClassTable, a: &Mat2, b: &Mat2) -> Result<ProductSummary> {
    table.group().check_special(a)?;
    table.group().check_special(b)?;
    Ok(summarize(table, table.classify_index(a), b))
}

/// Labels of the classes whose union is `A^S B^S`.
pub fn class_product_labels(table: &ClassTable, a: &Mat2, b: &Mat2) -> Result<BTreeSet<ClassLabel>> {
    Ok(summarize_matrices(table, a, b)?
        .labels(table)
        .into_iter()
        .collect())
}

/// Traces occurring in `A^S B^S`.
pub fn trace_set_of_product(table: &ClassTable, a: &Mat2, b: &Mat2) -> Result<BTreeSet<Elem>> {
    Ok(summarize_matrices(table, a, b)?
        .trace_list()
        .into_iter()
        .collect())
}

/// Number of classes in the product of two classes by index.
pub fn eta_index(table: &ClassTable, a_idx: usize, b_idx: usize) -> usize {
    summarize(table, a_idx, &table.entries()[b_idx].representative).eta()
}

pub fn eta(table: &ClassTable, a: &ClassLabel, b: &ClassLabel) -> Result<EtaReport> {
    let start = Instant::now();
    let a_idx = table.index_of(a).ok_or_else(|| unknown(table, a))?;
    let b_idx = table.index_of(b).ok_or_else(|| unknown(table, b))?;
    let summary = summarize(table, a_idx, &table.entries()[b_idx].representative);
    let f = table.field();
    Ok(EtaReport {
        q: f.q(),
        p: f.p(),
        m: f.m(),
        modulus: f.modulus().to_vec(),
        a: *a,
        b: *b,
        eta: summary.eta(),
        labels: summary.labels(table),
        traces: summary.trace_list(),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn unknown(table: &ClassTable, label: &ClassLabel) -> crate::error::Error {
    crate::error::Error::UnknownLabel {
        label: label.to_string(),
        q: table.q(),
    }
}

/// Unordered pairs `(i, j)`, `i <= j`, of noncentral class indices.
pub fn noncentral_pairs(table: &ClassTable) -> Vec<(usize, usize)> {
    let idx: Vec<usize> = table.noncentral().collect();
    let mut out = Vec::with_capacity(idx.len() * (idx.len() + 1) / 2);
    for (k, &i) in idx.iter().enumerate() {
        for &j in &idx[k..] {
            out.push((i, j));
        }
    }
    out
}

/// `eta` for every noncentral pair, in the order of [`noncentral_pairs`].
pub fn all_noncentral_etas(table: &ClassTable) -> Vec<((usize, usize), usize)> {
    // Orbits are built lazily; fill them up front so workers don't race to.
    table.elements();
    (0..table.len()).into_par_iter().for_each(|i| {
        table.orbit(i);
    });
    noncentral_pairs(table)
        .into_par_iter()
        .map(|(i, j)| ((i, j), eta_index(table, i, j)))
        .collect()
}

/// Smallest `eta(a^S b^S)` over noncentral `a`, `b`.
pub fn min_g(table: &ClassTable) -> Option<MinEta> {
    let etas = all_noncentral_etas(table);
    let ((i, j), value) = etas
        .iter()
        .copied()
        .min_by_key(|&(pair, e)| (e, pair))?;
    let entries = table.entries();
    Some(MinEta {
        q: table.q(),
        min_g: value,
        witness: (entries[i].label, entries[j].label),
    })
}
