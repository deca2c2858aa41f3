use std::io::Write;

use adjoint_local::report::Check;
use clap::ValueEnum;
use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1.0.0";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Format::from_str_value(s)
    }
}

impl Format {
    fn from_str_value(s: &str) -> Result<Format, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub id: String,
    pub paper_anchor: String,
    pub status: &'static str,
    pub lhs: String,
    pub rhs: String,
    pub delta: f64,
    pub wall_time: f64,
}

impl From<Check> for Record {
    fn from(c: Check) -> Record {
        Record {
            id: c.id,
            paper_anchor: c.anchor,
            status: if c.passed { "pass" } else { "fail" },
            lhs: c.lhs,
            rhs: c.rhs,
            delta: c.delta,
            wall_time: c.wall_time,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Serialize)]
pub struct Report<S: Serialize> {
    pub schema_version: &'static str,
    pub command: String,
    pub settings: S,
    pub summary: Summary,
    pub records: Vec<Record>,
}

impl<S: Serialize> Report<S> {
    pub fn new(command: String, settings: S, checks: Vec<Check>) -> Report<S> {
        let records: Vec<Record> = checks.into_iter().map(Record::from).collect();
        let passed = records.iter().filter(|r| r.status == "pass").count();
        let summary = Summary { total: records.len(), passed, failed: records.len() - passed };
        Report { schema_version: SCHEMA_VERSION, command, settings, summary, records }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

pub fn markdown_table(out: &mut impl Write, header: &[&str], rows: &[Vec<String>]) -> std::io::Result<()> {
    writeln!(out, "| {} |", header.join(" | "))?;
    writeln!(out, "|{}", "---|".repeat(header.len()))?;
    for r in rows {
        writeln!(out, "| {} |", r.iter().map(|c| md_cell(c)).collect::<Vec<_>>().join(" | "))?;
    }
    Ok(())
}

pub fn csv_table(out: impl Write, header: &[&str], rows: &[Vec<String>]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()
}

/// A table as a JSON array of objects keyed by the header.
pub fn json_table(out: &mut impl Write, header: &[&str], rows: &[Vec<String>]) -> std::io::Result<()> {
    let objs: Vec<serde_json::Map<String, serde_json::Value>> = rows
        .iter()
        .map(|r| header.iter().zip(r).map(|(h, v)| (h.to_string(), serde_json::Value::String(v.clone()))).collect())
        .collect();
    let doc = serde_json::json!({ "schema_version": SCHEMA_VERSION, "rows": objs });
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    writeln!(out)
}

pub fn write_table(format: Format, header: &[&str], rows: &[Vec<String>]) -> std::io::Result<()> {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match format {
        Format::Csv => csv_table(lock, header, rows),
        Format::Markdown => markdown_table(&mut lock, header, rows),
        Format::Json => json_table(&mut lock, header, rows),
    }
}

/// A closed downstream pipe (`| head`) is not an error.
pub fn quiet_pipe(r: std::io::Result<()>) -> std::io::Result<()> {
    match r {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => other,
    }
}

const RECORD_HEADER: [&str; 7] = ["id", "paper_anchor", "status", "lhs", "rhs", "delta", "wall_time"];

fn record_rows(records: &[Record]) -> Vec<Vec<String>> {
    records
        .iter()
        .map(|r| {
            vec![
                r.id.clone(),
                r.paper_anchor.clone(),
                r.status.to_string(),
                r.lhs.clone(),
                r.rhs.clone(),
                format!("{:e}", r.delta),
                format!("{:.6}", r.wall_time),
            ]
        })
        .collect()
}

pub fn write_report<S: Serialize>(format: Format, report: &Report<S>) -> std::io::Result<()> {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut lock, report)?;
            writeln!(lock)
        }
        Format::Csv => csv_table(lock, &RECORD_HEADER, &record_rows(&report.records)),
        Format::Markdown => {
            writeln!(lock, "**{}**: {}/{} passed\n", report.command, report.summary.passed, report.summary.total)?;
            markdown_table(&mut lock, &RECORD_HEADER, &record_rows(&report.records))
        }
    }
}
