use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};
use multiplex_juggling::report::Report;
use serde::Serialize;

use crate::args::Format;

/// Where and how a command's result is written.
pub struct Sink {
    pub format: Format,
    pub destination: Option<PathBuf>,
}

impl Sink {
    pub fn emit(&self, text: &str) -> Result<()> {
        match &self.destination {
            Some(path) => {
                fs::write(path, text).with_context(|| format!("writing {}", path.display()))
            }
            None => {
                let mut out = io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
                Ok(())
            }
        }
    }

    pub fn emit_json<T: Serialize + ?Sized>(&self, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.emit(&text)
    }
}

pub fn csv_string<F>(write: F) -> Result<String>
where
    F: FnOnce(&mut csv::Writer<Vec<u8>>) -> Result<()>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w)?;
    let bytes = w.into_inner().context("flushing csv")?;
    Ok(String::from_utf8(bytes)?)
}

/// Right-aligned text grid; the first row is the header.
pub fn grid(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s:>w$}"))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn report_csv(report: &Report) -> Result<String> {
    csv_string(|w| {
        w.write_record(["name", "parameters", "expected", "actual", "pass"])?;
        for c in &report.checks {
            let params: Vec<String> = c
                .parameters
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            w.write_record([
                c.name.as_str(),
                &params.join(" "),
                &c.expected,
                &c.actual,
                if c.pass { "true" } else { "false" },
            ])?;
        }
        Ok(())
    })
}

/// One line per check plus a summary; failing checks show both values.
pub fn report_text(report: &Report) -> String {
    let mut out = String::new();
    for c in &report.checks {
        let params: Vec<String> = c
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!("{verdict}  {}  [{}]", c.name, params.join(" ")));
        if !c.pass {
            out.push_str(&format!("  expected {} got {}", c.expected, c.actual));
        }
        out.push('\n');
    }
    for note in &report.notes {
        out.push_str(&format!("note: {note}\n"));
    }
    let failed = report.failures().count();
    out.push_str(&format!(
        "{} checks, {} passed, {} failed\n",
        report.checks.len(),
        report.checks.len() - failed,
        failed
    ));
    out
}

pub fn emit_report(sink: &Sink, report: &Report) -> Result<()> {
    match sink.format {
        Format::Json => sink.emit_json(report),
        Format::Csv => sink.emit(&report_csv(report)?),
        Format::Table => sink.emit(&report_text(report)),
    }
}
