//! Rendering of tables, reports and sweeps as text, JSON or CSV.

use anyhow::Result;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};
use sl2q_core::{ClassTable, Elem, EtaReport, MinEta};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn join_codes<'a>(items: impl IntoIterator<Item = &'a Elem>) -> String {
    items.into_iter().map(|e| e.to_string()).collect::<Vec<_>>().join(";")
}

pub fn table_json(table: &ClassTable) -> Value {
    let f = table.field();
    let order: u64 = table.entries().iter().map(|e| e.size).sum();
    json!({
        "q": f.q(),
        "p": f.p(),
        "m": f.m(),
        "modulus": f.modulus(),
        "group_order": table.group().order(),
        "size_sum": order,
        "classes": table.entries().iter().map(|e| json!({
            "label": e.label,
            "representative": e.representative.to_string(),
            "size": e.size,
        })).collect::<Vec<_>>(),
    })
}

pub fn render_table(table: &ClassTable, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(&table_json(table)),
        Format::Csv => csv_string(
            &["label", "representative", "size"],
            table.entries().iter().map(|e| {
                vec![e.label.to_string(), e.representative.to_string(), e.size.to_string()]
            }),
        ),
        Format::Text => {
            let f = table.field();
            let mut out = format!(
                "SL(2,{}) over GF({}^{}), modulus {:?}: {} classes\n",
                f.q(),
                f.p(),
                f.m(),
                f.modulus(),
                table.len()
            );
            out += &format!("{:<10} {:<22} {:>12}\n", "label", "representative", "size");
            for e in table.entries() {
                out += &format!(
                    "{:<10} {:<22} {:>12}\n",
                    e.label.to_string(),
                    e.representative.to_string(),
                    e.size
                );
            }
            let sum: u64 = table.entries().iter().map(|e| e.size).sum();
            out += &format!("size sum {sum} = |SL(2,{})| {}\n", f.q(), table.group().order());
            Ok(out)
        }
    }
}

pub fn render_eta(report: &EtaReport, format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => csv_string(&["q", "a", "b", "eta", "traces"], [eta_row(report)]),
        Format::Text => {
            let labels: Vec<String> = report.labels.iter().map(|l| l.to_string()).collect();
            Ok(format!(
                "eta({} x {}) over GF({}) = {}\nclasses: {}\ntraces:  {}\n",
                report.a,
                report.b,
                report.q,
                report.eta,
                labels.join(" "),
                join_codes(&report.traces).replace(';', " "),
            ))
        }
    }
}

fn eta_row(r: &EtaReport) -> Vec<String> {
    vec![
        r.q.to_string(),
        r.a.to_string(),
        r.b.to_string(),
        r.eta.to_string(),
        join_codes(&r.traces),
    ]
}

pub fn render_sweep(reports: &[EtaReport], format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(&reports),
        Format::Csv => csv_string(&["q", "a", "b", "eta", "traces"], reports.iter().map(eta_row)),
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                out += &format!("q={:<4} {:<10} x {:<10} eta={}\n", r.q, r.a.to_string(), r.b.to_string(), r.eta);
            }
            Ok(out)
        }
    }
}

pub fn render_min(rows: &[MinEta], format: Format) -> Result<String> {
    match format {
        Format::Json => to_json(&rows),
        Format::Csv => csv_string(
            &["q", "min_g", "a", "b"],
            rows.iter().map(|r| {
                vec![
                    r.q.to_string(),
                    r.min_g.to_string(),
                    r.witness.0.to_string(),
                    r.witness.1.to_string(),
                ]
            }),
        ),
        Format::Text => Ok(rows
            .iter()
            .map(|r| format!("q={:<4} min_g={:<4} witness {} x {}\n", r.q, r.min_g, r.witness.0, r.witness.1))
            .collect()),
    }
}

/// `q,min_g` rows, the form written next to a verification report.
pub fn min_g_csv(rows: &[(u32, usize)]) -> Result<String> {
    csv_string(
        &["q", "min_g"],
        rows.iter().map(|(q, m)| vec![q.to_string(), m.to_string()]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_csv_quotes_representatives() {
        let t = ClassTable::with_order(2).unwrap();
        let csv = render_table(&t, Format::Csv).unwrap();
        assert!(csv.starts_with("label,representative,size\n"));
        assert!(csv.contains("Z(1),\"[[1,0],[0,1]]\",1\n"));
    }

    #[test]
    fn min_g_csv_rows() {
        assert_eq!(min_g_csv(&[(2, 1), (3, 2)]).unwrap(), "q,min_g\n2,1\n3,2\n");
    }
}
