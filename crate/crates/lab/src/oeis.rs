//! OEIS b-file ingestion and term-by-term comparison with computed counts.

use std::collections::BTreeMap;
use std::path::Path;

use distpat::CountTable;
use num_bigint::BigUint;
use serde::Deserialize;

use crate::error::{io_err, LabError, Result};
use crate::report::ExperimentReport;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OeisSnapshot {
    pub id: String,
    /// Index of the first term.
    pub offset: i64,
    pub terms: Vec<BigUint>,
}

impl OeisSnapshot {
    pub fn term(&self, index: i64) -> Option<&BigUint> {
        usize::try_from(index - self.offset).ok().and_then(|i| self.terms.get(i))
    }
}

/// Parses `index value` lines; blank lines and `#` comments are skipped.
/// Indices must be consecutive.
pub fn parse_bfile(id: &str, text: &str) -> Result<OeisSnapshot> {
    let err = |line: usize, msg: String| LabError::BFile { path: id.to_string(), msg: format!("line {line}: {msg}") };
    let mut offset = None;
    let mut terms = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(idx), Some(val), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(err(i + 1, format!("expected `index value`, got `{line}`")));
        };
        let idx: i64 = idx.parse().map_err(|_| err(i + 1, format!("bad index `{idx}`")))?;
        let val: BigUint = val.parse().map_err(|_| err(i + 1, format!("bad value `{val}`")))?;
        let first = *offset.get_or_insert(idx);
        if idx != first + terms.len() as i64 {
            return Err(err(i + 1, format!("index {idx} breaks the run starting at {first}")));
        }
        terms.push(val);
    }
    let offset = offset.ok_or_else(|| LabError::BFile { path: id.to_string(), msg: "no terms".into() })?;
    Ok(OeisSnapshot { id: id.to_string(), offset, terms })
}

/// Reads `bNNNNNN.txt`; the id is taken from the file name unless given.
pub fn load_bfile(path: &Path, id: Option<&str>) -> Result<OeisSnapshot> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let id = match id {
        Some(id) => id.to_string(),
        None => {
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
            match stem.strip_prefix('b') {
                Some(digits) if digits.chars().all(|c| c.is_ascii_digit()) && !digits.is_empty() => format!("A{digits}"),
                _ => stem.to_string(),
            }
        }
    };
    parse_bfile(&id, &text).map_err(|e| match e {
        LabError::BFile { msg, .. } => LabError::BFile { path: path.display().to_string(), msg },
        other => other,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct KnownDeviation {
    pub index: i64,
    /// Our count at that index, which differs from the OEIS term.
    pub computed: u64,
    pub note: String,
}

/// Per-sequence alignment from the sidecar file.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
pub struct SequenceConfig {
    /// Expected first index of the b-file, checked on comparison.
    pub offset: Option<i64>,
    /// Our size `n` equals the OEIS index plus `n_shift`.
    #[serde(default)]
    pub n_shift: i64,
    #[serde(default)]
    pub known_deviations: Vec<KnownDeviation>,
    pub description: Option<String>,
}

pub type Sidecar = BTreeMap<String, SequenceConfig>;

pub fn load_sidecar(path: &Path) -> Result<Sidecar> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    toml::from_str(&text).map_err(|e| LabError::Usage(format!("{}: {e}", path.display())))
}

pub const MIN_OVERLAP: usize = 3;

/// Compares every size present in both the snapshot and the table.
pub fn oeis_compare(snapshot: &OeisSnapshot, table: &CountTable, align: &SequenceConfig) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::new("oeis-compare");
    report.param("sequence", &snapshot.id).param("patterns", &table.patterns).param("n_shift", align.n_shift);
    if let Some(want) = align.offset {
        if want != snapshot.offset {
            return Err(LabError::BFile {
                path: snapshot.id.clone(),
                msg: format!("b-file starts at index {} but the sidecar says {want}", snapshot.offset),
            });
        }
    }
    let mut overlap = 0;
    for &(n, count) in &table.rows {
        let index = n as i64 - align.n_shift;
        let Some(term) = snapshot.term(index) else {
            continue;
        };
        overlap += 1;
        let inputs = format!("n={n} (index {index})");
        match align.known_deviations.iter().find(|d| d.index == index) {
            Some(d) => {
                let pass = d.computed == count;
                report.claim(inputs, format!("{term} (documented: {})", d.computed), count.to_string(), pass);
                report.note(format!("index {index}: {}", d.note));
            }
            None => {
                report.check(inputs, term, count);
            }
        }
    }
    if overlap < MIN_OVERLAP {
        return Err(LabError::Usage(format!(
            "{} and the table share {overlap} sizes; at least {MIN_OVERLAP} are needed",
            snapshot.id
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TEXT: &str = "# demo\n\n0 1\n1 1\n2 2\n3 5\n4 14\n";

    #[test]
    fn parses_and_indexes() {
        let s = parse_bfile("A000108", TEXT).unwrap();
        assert_eq!(s.offset, 0);
        assert_eq!(s.term(4), Some(&BigUint::from(14u32)));
        assert_eq!(s.term(5), None);
        assert_eq!(s.term(-1), None);
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_bfile("x", "0 1\n2 2\n").is_err());
        assert!(parse_bfile("x", "0 1 2\n").is_err());
        assert!(parse_bfile("x", "0 -1\n").is_err());
        assert!(parse_bfile("x", "# nothing\n").is_err());
    }

    #[test]
    fn compares_with_shift_and_deviation() {
        let s = parse_bfile("A000108", TEXT).unwrap();
        let table = CountTable { patterns: "t".into(), rows: vec![(1, 1), (2, 2), (3, 6), (4, 14)] };
        let plain = oeis_compare(&s, &table, &SequenceConfig::default()).unwrap();
        assert!(!plain.passed());
        let cfg = SequenceConfig {
            known_deviations: vec![KnownDeviation { index: 3, computed: 6, note: "one extra".into() }],
            ..Default::default()
        };
        assert!(oeis_compare(&s, &table, &cfg).unwrap().passed());
        let shifted = SequenceConfig { n_shift: 10, ..Default::default() };
        assert!(oeis_compare(&s, &table, &shifted).is_err());
        assert!(oeis_compare(&s, &table, &SequenceConfig { offset: Some(1), ..Default::default() }).is_err());
    }
}
