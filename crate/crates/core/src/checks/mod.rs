//! Computational validators for the structural results on SL(2,q).
//!
//! Each validator returns a [`CheckResult`]. Universally quantified claims are
//! checked exhaustively up to a per-check field size and by seeded sampling
//! above it; the thresholds are the `*_EXHAUSTIVE_MAX_Q` constants in each
//! submodule.
//!
//! A [`Fault`] perturbs one coefficient of one named formula (or one claimed
//! count). It exists so tests can confirm every validator is able to fail.

mod cases;
mod counting;
mod coverage;
mod expr;
mod formulas;
mod theorems;

use std::fmt;
use std::str::FromStr;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::classes::ClassTable;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Mat2;

pub use cases::{check_even_case, check_odd_case};
pub use counting::check_counting_lemmas;
pub use coverage::check_trace_coverage;
pub use formulas::{check_conjugation_formulas, check_trace_formulas};
pub use theorems::verify_theorems;

/// Perturbation of a single formula, addressed by id (e.g. `"trace.unipotent_pair"`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fault {
    pub target: String,
    pub delta: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckConfig {
    /// Seed for sampled (non-exhaustive) runs.
    pub seed: u64,
    pub fault: Option<Fault>,
}

impl CheckConfig {
    pub fn with_seed(seed: u64) -> Self {
        CheckConfig { seed, fault: None }
    }

    pub fn with_fault(target: &str, delta: i64) -> Self {
        CheckConfig {
            seed: 0,
            fault: Some(Fault {
                target: target.to_string(),
                delta,
            }),
        }
    }

    /// Integer perturbation for formula `id`, zero unless targeted.
    pub(crate) fn offset(&self, id: &str) -> i64 {
        match &self.fault {
            Some(fault) if fault.target == id => fault.delta,
            _ => 0,
        }
    }

    /// Multiplier `1 + delta` for the designated coefficient of formula `id`.
    pub(crate) fn coef<'a>(&self, f: &'a Field, id: &str) -> expr::Fe<'a> {
        expr::Fe::int(f, 1 + self.offset(id))
    }

    pub(crate) fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub q: u32,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    pub details: Map<String, Value>,
}

/// Accumulates details and the first counterexample of a run.
pub(crate) struct Recorder {
    check: Check,
    q: u32,
    counterexample: Option<Value>,
    details: Map<String, Value>,
}

impl Recorder {
    pub fn new(check: Check, q: u32) -> Self {
        Recorder {
            check,
            q,
            counterexample: None,
            details: Map::new(),
        }
    }

    /// Records a failure; only the first counterexample is kept.
    pub fn fail(&mut self, payload: Value) {
        if self.counterexample.is_none() {
            self.counterexample = Some(payload);
        }
    }

    pub fn detail(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.to_string(), value.into());
    }

    pub fn finish(self) -> CheckResult {
        CheckResult {
            check: self.check.name().to_string(),
            q: self.q,
            passed: self.counterexample.is_none(),
            counterexample: self.counterexample,
            details: self.details,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    ConjugationFormulas,
    TraceFormulas,
    CountingLemmas,
    TraceCoverage,
    EvenCase,
    OddCase,
    Theorems,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::ConjugationFormulas,
        Check::TraceFormulas,
        Check::CountingLemmas,
        Check::TraceCoverage,
        Check::EvenCase,
        Check::OddCase,
        Check::Theorems,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::ConjugationFormulas => "conjugation_formulas",
            Check::TraceFormulas => "trace_formulas",
            Check::CountingLemmas => "counting_lemmas",
            Check::TraceCoverage => "trace_coverage",
            Check::EvenCase => "even_case",
            Check::OddCase => "odd_case",
            Check::Theorems => "theorems",
        }
    }

    /// Whether the check's hypotheses hold for GF(q).
    pub fn applies_to(self, q: u32) -> bool {
        match self {
            Check::EvenCase => q % 2 == 0,
            Check::OddCase => q % 2 == 1 && q > 3,
            _ => q >= 2,
        }
    }

    pub fn run(self, table: &ClassTable, cfg: &CheckConfig) -> Result<CheckResult> {
        if !self.applies_to(table.q()) {
            return Err(Error::NotApplicable {
                check: self.name(),
                q: table.q(),
            });
        }
        Ok(match self {
            Check::ConjugationFormulas => check_conjugation_formulas(table, cfg),
            Check::TraceFormulas => check_trace_formulas(table, cfg),
            Check::CountingLemmas => check_counting_lemmas(table.field(), cfg),
            Check::TraceCoverage => check_trace_coverage(table, cfg),
            Check::EvenCase => check_even_case(table, cfg)?,
            Check::OddCase => check_odd_case(table, cfg)?,
            Check::Theorems => verify_theorems(table, cfg),
        })
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
                format!("unknown check {s:?}; expected one of {}", names.join(", "))
            })
    }
}

/// Runs every applicable check on one field, in [`Check::ALL`] order.
pub fn run_suite(table: &ClassTable, cfg: &CheckConfig) -> Vec<CheckResult> {
    Check::ALL
        .into_iter()
        .filter(|c| c.applies_to(table.q()))
        .map(|c| c.run(table, cfg).expect("applicability was checked"))
        .collect()
}

/// The full group when `q <= max_q`, otherwise `samples` seeded draws from it.
pub(crate) fn group_sample(
    table: &ClassTable,
    max_q: u32,
    samples: usize,
    cfg: &CheckConfig,
    salt: u64,
) -> (Vec<Mat2>, bool) {
    let all = table.elements();
    if table.q() <= max_q {
        (all.to_vec(), true)
    } else {
        let mut rng = cfg.rng(salt);
        let picked = (0..samples)
            .map(|_| *all.choose(&mut rng).expect("group is nonempty"))
            .collect();
        (picked, false)
    }
}

pub(crate) fn elem_set_size(f: &Field, values: impl IntoIterator<Item = Elem>) -> usize {
    let mut seen = vec![false; f.q() as usize];
    let mut n = 0;
    for v in values {
        if !std::mem::replace(&mut seen[v.code() as usize], true) {
            n += 1;
        }
    }
    n
}

pub(crate) fn mat_json(m: &Mat2) -> Value {
    Value::String(m.to_string())
}
