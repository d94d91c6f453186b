//! Inspection and spot-checking of the count cache.

use distpat::enumerate::CountCache;
use distpat::permcore::parse_pattern_set;
use distpat::{Enumerator, Limits};
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::error::Result;
use crate::report::ExperimentReport;

/// Rows, then the distinct pattern-set keys with the sizes cached for each.
pub fn show(cache: &CountCache) -> String {
    let records = cache.records();
    let mut out = format!("{}: {} rows\n", cache.path().display(), records.len());
    let mut last: Option<&str> = None;
    let mut sizes = Vec::new();
    let flush = |key: Option<&str>, sizes: &mut Vec<String>, out: &mut String| {
        if let Some(k) = key {
            out.push_str(&format!("  {k}  n = {}\n", sizes.join(",")));
        }
        sizes.clear();
    };
    for r in &records {
        if last != Some(r.patterns.as_str()) {
            flush(last, &mut sizes, &mut out);
            last = Some(&r.patterns);
        }
        sizes.push(r.n.to_string());
    }
    flush(last, &mut sizes, &mut out);
    out
}

/// Recomputes up to `sample` cached rows with `n ≤ max_n`, bypassing the cache.
pub fn verify(cache: &CountCache, sample: usize, max_n: usize, seed: u64) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::new("cache-verify");
    report.param("sample", sample).param("max_n", max_n).param("seed", seed);
    let mut rows: Vec<_> = cache.records().into_iter().filter(|r| r.n <= max_n).collect();
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    rows.shuffle(&mut rng);
    rows.truncate(sample);
    rows.sort_by(|a, b| (&a.patterns, a.n).cmp(&(&b.patterns, b.n)));
    let fresh = Enumerator::new(Limits::uniform(max_n));
    for r in &rows {
        let ps = parse_pattern_set(&r.patterns).map_err(distpat::Error::from)?;
        report.check(format!("{} n={}", r.patterns, r.n), r.count, fresh.count(r.n, &ps)?);
    }
    if rows.is_empty() {
        report.note("no cached rows within the size limit");
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn show_verify_clear() {
        let dir = tempfile::tempdir().unwrap();
        let cache = CountCache::open(dir.path().join("c.jsonl")).unwrap();
        assert!(verify(&cache, 5, 8, 1).unwrap().passed());
        cache.insert("2 #1 1", 5, 8).unwrap();
        cache.insert("2 #1 1", 6, 13).unwrap();
        cache.insert("1 3 2", 4, 14).unwrap();
        let text = show(&cache);
        assert!(text.contains("3 rows"));
        assert!(text.contains("2 #1 1  n = 5,6"));
        assert!(verify(&cache, 10, 8, 1).unwrap().passed());
        cache.insert("1 3 2", 5, 41).unwrap();
        assert!(!verify(&cache, 10, 8, 1).unwrap().passed());
        cache.clear().unwrap();
        assert!(show(&cache).contains("0 rows"));
    }
}
