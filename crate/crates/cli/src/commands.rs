//! Command implementations. Each returns the text to print; `verify` also
//! writes its artifacts and reports whether every check passed.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sl2q_core::field::prime_powers_up_to;
use sl2q_core::product::{eta, min_g, noncentral_pairs};
use sl2q_core::{Check, CheckConfig, CheckResult, ClassLabel, ClassTable, EtaReport, Field, MinEta, MAX_ORDER};

use crate::cache::{write_atomic, Cache, CacheEntry, Lookup, TOOL_VERSION};
use crate::manifest::{json_checksum, sha256_hex, FieldEntry, RunManifest};
use crate::output::{self, Format};

/// `clap` value parser for field orders.
pub fn parse_order(s: &str) -> Result<u64, String> {
    let q: u64 = s.trim().parse().map_err(|e| format!("{s:?} is not an integer: {e}"))?;
    Field::with_order(q).map_err(|e| e.to_string())?;
    Ok(q)
}

/// `clap` value parser for sweep bounds.
pub fn parse_qmax(s: &str) -> Result<u64, String> {
    let q: u64 = s.trim().parse().map_err(|e| format!("{s:?} is not an integer: {e}"))?;
    if !(2..=MAX_ORDER).contains(&q) {
        return Err(format!("qmax must be between 2 and {MAX_ORDER}"));
    }
    Ok(q)
}

/// A class label such as `U(1,+)`, or a matrix literal such as `[[1,1],[0,1]]`
/// whose class is looked up.
pub fn parse_operand(table: &ClassTable, s: &str) -> Result<ClassLabel> {
    let s = s.trim();
    if s.starts_with('[') {
        let m = table.group().parse(s).with_context(|| format!("matrix {s}"))?;
        Ok(table.classify(&m)?)
    } else {
        Ok(table.parse_label(s)?)
    }
}

pub fn table(q: u64, format: Format) -> Result<String> {
    output::render_table(&ClassTable::with_order(q)?, format)
}

pub fn eta_cmd(q: u64, a: &str, b: &str, format: Format) -> Result<String> {
    let t = ClassTable::with_order(q)?;
    let (a, b) = (parse_operand(&t, a)?, parse_operand(&t, b)?);
    output::render_eta(&eta(&t, &a, &b)?, format)
}

pub fn orders(q: Option<u64>, qmax: Option<u64>) -> Result<Vec<u64>> {
    match (q, qmax) {
        (Some(q), None) => Ok(vec![q]),
        (None, Some(qmax)) => Ok(prime_powers_up_to(qmax)),
        _ => bail!("give exactly one of --q and --qmax"),
    }
}

pub fn min_cmd(qs: &[u64], format: Format) -> Result<String> {
    let rows = qs
        .iter()
        .map(|&q| {
            min_g(&ClassTable::with_order(q)?).context("the group has noncentral classes")
        })
        .collect::<Result<Vec<MinEta>>>()?;
    output::render_min(&rows, format)
}

/// `eta` for every unordered pair of noncentral classes.
pub fn sweep(qs: &[u64], format: Format) -> Result<String> {
    let mut reports: Vec<EtaReport> = Vec::new();
    for &q in qs {
        let t = ClassTable::with_order(q)?;
        let pairs = noncentral_pairs(&t);
        let rows: Vec<EtaReport> = pairs
            .par_iter()
            .map(|&(i, j)| eta(&t, &t.entries()[i].label, &t.entries()[j].label))
            .collect::<sl2q_core::Result<_>>()?;
        reports.extend(rows);
    }
    output::render_sweep(&reports, format)
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub qmax: u64,
    pub checks: Vec<Check>,
    pub seed: u64,
    pub cache: Option<Cache>,
    pub out: PathBuf,
}

#[derive(Debug, Clone, Serialize)]
struct ReportEntry {
    p: u32,
    m: u32,
    #[serde(flatten)]
    result: CheckResult,
    elapsed_ms: f64,
}

#[derive(Debug, Clone, Default)]
pub struct CacheStats {
    pub hits: usize,
    pub misses: usize,
    pub invalid: usize,
}

pub struct VerifyOutcome {
    pub report: Value,
    pub stdout: String,
    pub all_passed: bool,
    pub cache: CacheStats,
}

fn run_one(table: &ClassTable, check: Check, opts: &VerifyOptions) -> (ReportEntry, Lookup) {
    let f = table.field();
    let (p, m) = (f.p(), f.m());
    let mut status = Lookup::Miss;
    if let Some(cache) = &opts.cache {
        let (entry, lookup) = cache.load(p, m, check, opts.seed);
        if let Lookup::Invalid(reason) = &lookup {
            eprintln!("warning: ignoring cache entry {reason}; recomputing");
        }
        if let Some(entry) = entry {
            let report = ReportEntry { p, m, result: entry.result, elapsed_ms: entry.elapsed_ms };
            return (report, lookup);
        }
        status = lookup;
    }
    let start = Instant::now();
    let result = check
        .run(table, &CheckConfig::with_seed(opts.seed))
        .expect("only applicable checks are scheduled");
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    if let Some(cache) = &opts.cache {
        let entry = CacheEntry {
            version: TOOL_VERSION.to_string(),
            p,
            m,
            check: check.name().to_string(),
            seed: opts.seed,
            result: result.clone(),
            elapsed_ms,
        };
        if let Err(e) = cache.store(&entry) {
            eprintln!("warning: could not write cache entry: {e:#}");
        }
    }
    (ReportEntry { p, m, result, elapsed_ms }, status)
}

pub fn verify(opts: &VerifyOptions) -> Result<VerifyOutcome> {
    let tables: Vec<ClassTable> = prime_powers_up_to(opts.qmax)
        .into_iter()
        .map(ClassTable::with_order)
        .collect::<sl2q_core::Result<_>>()?;
    let items: Vec<(usize, Check)> = tables
        .iter()
        .enumerate()
        .flat_map(|(i, t)| {
            opts.checks
                .iter()
                .copied()
                .filter(move |c| c.applies_to(t.q()))
                .map(move |c| (i, c))
        })
        .collect();

    let results: Vec<(ReportEntry, Lookup)> = items
        .par_iter()
        .map(|&(i, check)| run_one(&tables[i], check, opts))
        .collect();

    let mut stats = CacheStats::default();
    for (_, lookup) in &results {
        match lookup {
            Lookup::Hit => stats.hits += 1,
            Lookup::Miss => stats.misses += 1,
            Lookup::Invalid(_) => stats.invalid += 1,
        }
    }

    // min(G) per field: from the theorem check when it ran, else computed.
    let min_rows: Vec<(u32, usize)> = tables
        .par_iter()
        .map(|t| {
            let from_check = results.iter().find_map(|(e, _)| {
                (e.result.q == t.q() && e.result.check == Check::Theorems.name())
                    .then(|| e.result.details.get("min_g").and_then(Value::as_u64))
                    .flatten()
            });
            let value = from_check
                .map(|v| v as usize)
                .or_else(|| min_g(t).map(|m| m.min_g))
                .unwrap_or(0);
            (t.q(), value)
        })
        .collect();

    let entries: Vec<ReportEntry> = results.into_iter().map(|(e, _)| e).collect();
    let failed: Vec<String> = entries
        .iter()
        .filter(|e| !e.result.passed)
        .map(|e| format!("q={} {}", e.result.q, e.result.check))
        .collect();
    let report = json!({
        "tool_version": TOOL_VERSION,
        "command": "verify",
        "qmax": opts.qmax,
        "seed": opts.seed,
        "checks": opts.checks.iter().map(|c| c.name()).collect::<Vec<_>>(),
        "results": entries,
        "min_g": min_rows.iter().map(|(q, m)| json!({"q": q, "min_g": m})).collect::<Vec<_>>(),
        "summary": {
            "executed": entries.len(),
            "passed": entries.len() - failed.len(),
            "failed": failed,
        },
    });

    let report_text = serde_json::to_string_pretty(&report)? + "\n";
    let csv_text = output::min_g_csv(&min_rows)?;
    write_atomic(&opts.out.join("report.json"), report_text.as_bytes())?;
    write_atomic(&opts.out.join("min_g.csv"), csv_text.as_bytes())?;
    let mut manifest = RunManifest::new(
        "verify",
        tables.iter().map(|t| FieldEntry::from(t.field())).collect(),
    );
    manifest.checksums.insert("report.json".into(), json_checksum(&report));
    manifest.checksums.insert("min_g.csv".into(), sha256_hex(csv_text.as_bytes()));
    write_atomic(
        &opts.out.join("manifest.json"),
        (serde_json::to_string_pretty(&manifest)? + "\n").as_bytes(),
    )?;

    let mut stdout = String::new();
    for e in &entries {
        let status = if e.result.passed { "PASS" } else { "FAIL" };
        stdout += &format!("{status} q={:<3} {}\n", e.result.q, e.result.check);
        if let Some(cx) = &e.result.counterexample {
            stdout += &format!("     counterexample: {cx}\n");
        }
    }
    stdout += &format!(
        "{} checks, {} failed; report in {}\n",
        entries.len(),
        failed.len(),
        display(&opts.out)
    );
    Ok(VerifyOutcome {
        all_passed: failed.is_empty(),
        report,
        stdout,
        cache: stats,
    })
}

fn display(p: &Path) -> String {
    p.display().to_string()
}
