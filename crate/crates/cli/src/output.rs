//! Text, CSV and JSON renderings of command results.

use std::io::{self, Write};

use anyhow::Result;
use serde::Serialize;

use cutcomplex::harness::{CheckRow, SuiteReport, TableReport};

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl Format {
    pub fn from_flags(json: bool, csv: bool) -> Format {
        match (json, csv) {
            (true, _) => Format::Json,
            (_, true) => Format::Csv,
            _ => Format::Text,
        }
    }
}

pub fn print_json<T: Serialize + ?Sized>(value: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    match writeln!(out) {
        // A closed pipe (e.g. `| head`) is not an error for a printer.
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

pub fn print_numbers(format: Format, values: &[i64]) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(values).expect("integers serialize")),
        Format::Csv => println!("{}", values.iter().map(i64::to_string).collect::<Vec<_>>().join(",")),
        Format::Text => println!("{}", values.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")),
    }
}

pub fn print_values(format: Format, values: &[(String, i64)]) -> Result<()> {
    match format {
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> =
                values.iter().map(|(k, v)| (k.clone(), (*v).into())).collect();
            print_json(&map)
        }
        Format::Csv => {
            let mut out = csv::Writer::from_writer(io::stdout());
            out.write_record(["element", "value"])?;
            for (k, v) in values {
                out.write_record([k.as_str(), &v.to_string()])?;
            }
            out.flush()?;
            Ok(())
        }
        Format::Text => {
            for (k, v) in values {
                println!("{k}\t{v}");
            }
            Ok(())
        }
    }
}

/// Prints check rows; in text mode passing rows are hidden when `failures_only` is set.
pub fn print_rows(format: Format, rows: &[CheckRow], failures_only: bool) -> Result<()> {
    match format {
        Format::Json => print_json(rows),
        Format::Csv => {
            let mut out = csv::Writer::from_writer(io::stdout());
            for row in rows {
                out.serialize(row)?;
            }
            out.flush()?;
            Ok(())
        }
        Format::Text => {
            for row in rows.iter().filter(|r| !failures_only || !r.status.is_success()) {
                println!(
                    "{:<10} {:<14} {:<32} {:<24} expected={} computed={}",
                    row.status, row.group, row.check, row.parameters, row.expected, row.computed
                );
            }
            Ok(())
        }
    }
}

pub fn print_tables(format: Format, reports: &[TableReport]) -> Result<()> {
    if format == Format::Json {
        return print_json(reports);
    }
    let mut out = csv::WriterBuilder::new()
        .delimiter(if format == Format::Csv { b',' } else { b'\t' })
        .from_writer(io::stdout());
    out.write_record(["table", "k", "n", "expected", "computed", "status", "note"])?;
    for report in reports {
        for c in &report.cells {
            let computed = c.computed.as_ref().map(ToString::to_string).unwrap_or_default();
            out.write_record([
                report.id.as_str(),
                &c.k.to_string(),
                &c.n.to_string(),
                &c.expected.to_string(),
                &computed,
                &c.status.to_string(),
                c.note.as_deref().unwrap_or(""),
            ])?;
        }
        for p in &report.predictions {
            let actual = p.actual_betti.map(|b| b.to_string()).unwrap_or_default();
            out.write_record([
                report.id.as_str(),
                &p.k.to_string(),
                &p.n.to_string(),
                &format!("({})", p.expected),
                &p.formula.to_string(),
                &p.status.to_string(),
                &format!("antichain prediction; actual {actual}"),
            ])?;
        }
    }
    out.flush()?;
    if format == Format::Text {
        for report in reports {
            let diff = report.diff();
            println!("{}: {} cells, {} differ", report.id, report.cells.len(), diff.len());
            for c in diff {
                let computed = c.computed.as_ref().map(ToString::to_string).unwrap_or_default();
                println!("  k={} n={}: expected {} computed {}", c.k, c.n, c.expected, computed);
            }
        }
    }
    Ok(())
}

pub fn print_suite(format: Format, report: &SuiteReport) -> Result<()> {
    match format {
        Format::Json => print_json(report),
        Format::Csv => {
            let mut out = csv::Writer::from_writer(io::stdout());
            for row in report.rows.iter().chain(&report.conjectures) {
                out.serialize(row)?;
            }
            out.flush()?;
            Ok(())
        }
        Format::Text => {
            print_rows(format, &report.rows, true)?;
            if !report.conjectures.is_empty() {
                println!("conjectures:");
                print_rows(format, &report.conjectures, false)?;
            }
            for (group, counts) in report.summary() {
                let parts: Vec<String> = counts.iter().map(|(s, n)| format!("{s} {n}")).collect();
                println!("{group:<14} {}", parts.join(", "));
            }
            println!(
                "{} checks in {} ms",
                report.rows.len() + report.conjectures.len(),
                report.elapsed_ms
            );
            Ok(())
        }
    }
}
