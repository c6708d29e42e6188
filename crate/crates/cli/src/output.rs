//! Rendering of verdicts and tables as text, JSON or CSV.

use clap::ValueEnum;
use serde::Serialize;

use zigzag_core::verdict::ZigZagVerdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, false)
    }
}

/// A record that renders as one table row.
pub trait Tabular: Serialize {
    const HEADER: &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictRecord {
    pub case: &'static str,
    pub i: u32,
    pub rep: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<u64>,
    pub regime: String,
    pub p: u64,
    pub r0: i64,
    pub notes: Vec<String>,
}

impl VerdictRecord {
    pub fn new(v: &ZigZagVerdict) -> Self {
        VerdictRecord {
            case: v.case.kind(),
            i: v.case.index(),
            rep: v.rep.to_string(),
            tau: v.tau.map(|h| h.to_string()),
            t: v.t.map(|h| h.to_string()),
            nu: v.nu.map(|h| h.to_string()),
            lambda: v.rep.lambda().map(|l| l.to_string()),
            trace: v.trace,
            regime: v.regime.to_string(),
            p: v.p,
            r0: v.r0,
            notes: v.notes.clone(),
        }
    }
}

impl Tabular for VerdictRecord {
    const HEADER: &'static [&'static str] = &["case", "i", "rep", "tau", "t", "nu", "lambda", "trace", "regime", "p", "r0", "notes"];

    fn cells(&self) -> Vec<String> {
        vec![
            self.case.to_string(),
            self.i.to_string(),
            self.rep.clone(),
            opt(&self.tau),
            opt(&self.t),
            opt(&self.nu),
            opt(&self.lambda),
            opt(&self.trace),
            self.regime.clone(),
            self.p.to_string(),
            self.r0.to_string(),
            self.notes.join("; "),
        ]
    }
}

/// Renders a single record: `key: value` lines in text mode.
pub fn render_record<T: Tabular>(record: &T, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            for (key, value) in T::HEADER.iter().zip(record.cells()) {
                if !value.is_empty() {
                    out.push_str(&format!("{key}: {value}\n"));
                }
            }
            out
        }
        Format::Json => serde_json::to_string(record).expect("records serialize") + "\n",
        Format::Csv => render_csv(std::slice::from_ref(record)),
    }
}

fn render_csv<T: Tabular>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(T::HEADER).expect("in-memory write");
    for row in rows {
        w.write_record(row.cells()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
}

fn render_text_table<T: Tabular>(rows: &[T]) -> String {
    let cells: Vec<Vec<String>> = rows.iter().map(Tabular::cells).collect();
    let widths: Vec<usize> = T::HEADER
        .iter()
        .enumerate()
        .map(|(j, h)| cells.iter().map(|r| r[j].chars().count()).chain([h.len()]).max().unwrap_or(0))
        .collect();
    let line = |row: Vec<String>| {
        let padded: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(T::HEADER.iter().map(|h| h.to_string()).collect());
    for row in cells {
        out.push_str(&line(row));
    }
    out
}

#[derive(Serialize)]
struct Table<'a, T, S> {
    rows: &'a [T],
    #[serde(skip_serializing_if = "Option::is_none")]
    summary: Option<&'a S>,
}

/// Renders a table. The summary, if any, follows the rows in text mode, sits
/// beside them in JSON, and is left to the caller in CSV.
pub fn render_table<T: Tabular, S: Serialize + std::fmt::Display>(rows: &[T], summary: Option<&S>, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = render_text_table(rows);
            if let Some(s) = summary {
                out.push_str(&format!("{s}\n"));
            }
            out
        }
        Format::Json => serde_json::to_string(&Table { rows, summary }).expect("rows serialize") + "\n",
        Format::Csv => render_csv(rows),
    }
}
