use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

/// Bumped whenever a field is added, removed or changes meaning.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Table,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "table" => Ok(OutputFormat::Table),
            other => Err(Error::InvalidInput(format!("unknown format `{other}` (json, csv, table)"))),
        }
    }
}

/// A named numeric check: passes when `|observed − expected| ≤ tolerance`.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub observed: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, observed: f64, expected: f64, tolerance: f64) -> Self {
        let passed = (observed - expected).abs() <= tolerance;
        Check { name: name.into(), observed, expected, tolerance, passed }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub experiment: String,
    pub seed: u64,
    pub inputs: Value,
    pub outputs: Value,
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(skip)]
    pub table: Table,
}

impl Report {
    pub fn new(experiment: &str, seed: u64, inputs: Value, outputs: Value, checks: Vec<Check>, table: Table) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            experiment: experiment.to_string(),
            seed,
            inputs,
            outputs,
            checks,
            passed,
            table,
        }
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::InvalidInput(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Table => Ok(self.render_table()),
        }
    }

    fn render_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::InvalidInput(e.to_string());
        w.write_record(&self.table.headers).map_err(io)?;
        for row in &self.table.rows {
            w.write_record(row).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidInput(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::InvalidInput(e.to_string()))
    }

    fn render_table(&self) -> String {
        let widths: Vec<usize> = (0..self.table.headers.len())
            .map(|i| {
                self.table
                    .rows
                    .iter()
                    .map(|r| r[i].chars().count())
                    .chain(std::iter::once(self.table.headers[i].chars().count()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| -> String {
            let padded: Vec<String> =
                cells.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = String::new();
        let _ = writeln!(out, "# {} (seed {})", self.experiment, self.seed);
        let _ = writeln!(out, "{}", line(&self.table.headers));
        let _ = writeln!(out, "{}", widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
        for row in &self.table.rows {
            let _ = writeln!(out, "{}", line(row));
        }
        out.push('\n');
        for c in &self.checks {
            let _ = writeln!(
                out,
                "[{}] {}: observed {:.3e}, expected {:.3e}, tolerance {:.1e}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.observed,
                c.expected,
                c.tolerance
            );
        }
        out
    }
}

/// Fixed-precision complex formatting for tables.
pub fn fmt_complex(c: Complex64) -> String {
    let re = if c.re == 0.0 { 0.0 } else { c.re };
    let im = if c.im == 0.0 { 0.0 } else { c.im };
    format!("{re:.12}{}{:.12}i", if im < 0.0 { "-" } else { "+" }, im.abs())
}

pub fn fmt_real(x: f64) -> String {
    format!("{:.12}", if x == 0.0 { 0.0 } else { x })
}
