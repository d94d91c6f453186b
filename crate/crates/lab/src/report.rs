//! Experiment reports and tabular output in text, CSV and JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::LabError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, LabError> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(LabError::Usage(format!("unknown format `{s}` (text, csv, json)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseRow {
    pub inputs: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub parameters: BTreeMap<String, String>,
    pub rows: Vec<CaseRow>,
    pub notes: Vec<String>,
}

impl ExperimentReport {
    pub fn new(experiment: &str) -> Self {
        ExperimentReport { experiment: experiment.to_string(), parameters: BTreeMap::new(), rows: Vec::new(), notes: Vec::new() }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.notes.push(text.into());
        self
    }

    /// Adds a row that passes when `expected == computed`.
    pub fn check(&mut self, inputs: impl Into<String>, expected: impl ToString, computed: impl ToString) -> bool {
        let (e, c) = (expected.to_string(), computed.to_string());
        let pass = e == c;
        self.rows.push(CaseRow { inputs: inputs.into(), expected: e, computed: c, pass });
        pass
    }

    /// Adds a row whose pass/fail is decided by the caller.
    pub fn claim(&mut self, inputs: impl Into<String>, expected: impl Into<String>, computed: impl Into<String>, pass: bool) -> bool {
        self.rows.push(CaseRow { inputs: inputs.into(), expected: expected.into(), computed: computed.into(), pass });
        pass
    }

    pub fn absorb(&mut self, other: ExperimentReport) {
        self.rows.extend(other.rows);
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed() {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Csv => {
                let rows: Vec<Vec<String>> = self
                    .rows
                    .iter()
                    .map(|r| {
                        vec![
                            self.experiment.clone(),
                            r.inputs.clone(),
                            r.expected.clone(),
                            r.computed.clone(),
                            if r.pass { "pass" } else { "fail" }.to_string(),
                        ]
                    })
                    .collect();
                csv_table(&["experiment", "inputs", "expected", "computed", "result"], &rows)
            }
            Format::Json => {
                #[derive(Serialize)]
                struct Out<'a> {
                    #[serde(flatten)]
                    report: &'a ExperimentReport,
                    verdict: &'static str,
                }
                let mut s = serde_json::to_string_pretty(&Out { report: self, verdict: self.verdict() }).expect("serializable");
                s.push('\n');
                s
            }
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "experiment: {}", self.experiment).unwrap();
        if !self.parameters.is_empty() {
            let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(out, "parameters: {}", params.join(" ")).unwrap();
        }
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| vec![r.inputs.clone(), r.expected.clone(), r.computed.clone(), if r.pass { "ok" } else { "FAIL" }.into()])
            .collect();
        out.push_str(&text_table(&["inputs", "expected", "computed", "result"], &rows));
        for n in &self.notes {
            writeln!(out, "note: {n}").unwrap();
        }
        let failed = self.failures().count();
        writeln!(out, "verdict: {} ({} rows, {} failed)", self.verdict(), self.rows.len(), failed).unwrap();
        out
    }
}

/// Left-aligned columns separated by two spaces, with a header rule.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    let mut out = format!("{}\n{}\n", line(header.to_vec()), rule.join("  "));
    for row in rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect())).unwrap();
    }
    out
}

/// RFC 4180 CSV with one header row.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

/// Renders a generic table in the requested format; JSON emits an array of objects.
pub fn render_table(format: Format, header: &[&str], rows: &[Vec<String>]) -> String {
    match format {
        Format::Text => text_table(header, rows),
        Format::Csv => csv_table(header, rows),
        Format::Json => {
            let objs: Vec<BTreeMap<&str, &str>> =
                rows.iter().map(|r| header.iter().copied().zip(r.iter().map(String::as_str)).collect()).collect();
            let mut s = serde_json::to_string_pretty(&objs).expect("serializable");
            s.push('\n');
            s
        }
    }
}
