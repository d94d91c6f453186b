//! Exhaustive counting and listing of pattern avoiders.
//!
//! Permutations are built one position at a time. A prefix is abandoned as soon
//! as some pattern has a witness lying entirely inside it; since shorter
//! prefixes were already witness free, only witnesses ending at the newest
//! position need checking. The search tree is split on the next value when more
//! than one worker is configured, and partial results are merged in value order.

mod cache;

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use cache::{CacheRecord, CountCache, ENGINE_VERSION};

use crate::error::{Error, Result};
use crate::matcher::CompiledPattern;
use crate::permcore::{render_pattern, DistantPattern, Permutation};

pub const DEFAULT_COUNT_CAP: usize = 12;
pub const DEFAULT_LIST_CAP: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub count_cap: usize,
    pub list_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { count_cap: DEFAULT_COUNT_CAP, list_cap: DEFAULT_LIST_CAP }
    }
}

impl Limits {
    /// Raises (or lowers) both caps to `cap`.
    pub fn uniform(cap: usize) -> Self {
        Limits { count_cap: cap, list_cap: cap }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    pub patterns: String,
    pub rows: Vec<(usize, u64)>,
}

impl CountTable {
    pub fn count(&self, n: usize) -> Option<u64> {
        self.rows.iter().find(|&&(m, _)| m == n).map(|&(_, c)| c)
    }

    pub fn counts(&self) -> Vec<u64> {
        self.rows.iter().map(|&(_, c)| c).collect()
    }
}

/// Avoiders of size `n` whose first entries are fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixQuery {
    pub n: usize,
    pub prefix: Vec<usize>,
}

impl PrefixQuery {
    pub fn new(n: usize, prefix: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for &v in &prefix {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPrefix { prefix, n });
            }
            seen[v] = true;
        }
        if prefix.len() > n {
            return Err(Error::InvalidPrefix { prefix, n });
        }
        Ok(PrefixQuery { n, prefix })
    }
}

/// Canonical cache key: sorted, deduplicated rendered patterns joined by `;`.
pub fn pattern_set_key(ps: &[DistantPattern]) -> String {
    let mut rendered: Vec<String> = ps.iter().map(render_pattern).collect();
    rendered.sort();
    rendered.dedup();
    rendered.join(";")
}

struct Search<'a> {
    n: usize,
    patterns: &'a [CompiledPattern],
}

impl Search<'_> {
    fn clean_at(&self, prefix: &[usize], end: usize) -> bool {
        self.patterns.iter().all(|p| !p.occurs_ending_at(prefix, end, self.n))
    }

    fn count(&self, prefix: &mut Vec<usize>, used: u64) -> u64 {
        let m = prefix.len();
        if m == self.n {
            return 1;
        }
        let mut total = 0;
        for v in 1..=self.n {
            if used & (1 << v) != 0 {
                continue;
            }
            prefix.push(v);
            if self.clean_at(prefix, m) {
                total += self.count(prefix, used | (1 << v));
            }
            prefix.pop();
        }
        total
    }

    fn list(&self, prefix: &mut Vec<usize>, used: u64, out: &mut Vec<Permutation>) {
        let m = prefix.len();
        if m == self.n {
            out.push(Permutation::from_vec_unchecked(prefix.clone()));
            return;
        }
        for v in 1..=self.n {
            if used & (1 << v) != 0 {
                continue;
            }
            prefix.push(v);
            if self.clean_at(prefix, m) {
                self.list(prefix, used | (1 << v), out);
            }
            prefix.pop();
        }
    }

    /// Places a fixed prefix, returning `None` when it already contains a witness.
    fn seed(&self, fixed: &[usize]) -> Option<(Vec<usize>, u64)> {
        let mut prefix = Vec::with_capacity(self.n);
        let mut used = 0u64;
        for &v in fixed {
            prefix.push(v);
            used |= 1 << v;
            if !self.clean_at(&prefix, prefix.len() - 1) {
                return None;
            }
        }
        Some((prefix, used))
    }

    /// Values that may extend `used`, in increasing order.
    fn branches(&self, used: u64) -> Vec<usize> {
        (1..=self.n).filter(|v| used & (1 << v) == 0).collect()
    }
}

/// Counting and listing front end carrying caps, worker count, and an optional cache.
#[derive(Clone)]
pub struct Enumerator {
    limits: Limits,
    pool: Option<Arc<rayon::ThreadPool>>,
    workers: usize,
    cache: Option<Arc<CountCache>>,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator::new(Limits::default())
    }
}

impl std::fmt::Debug for Enumerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Enumerator")
            .field("limits", &self.limits)
            .field("workers", &self.workers)
            .field("cache", &self.cache.as_ref().map(|c| c.path().to_path_buf()))
            .finish()
    }
}

impl Enumerator {
    pub fn new(limits: Limits) -> Self {
        Enumerator { limits, pool: None, workers: 1, cache: None }
    }

    /// `workers == 0` uses the global rayon pool; `1` runs on the calling thread.
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self.pool = if workers > 1 {
            Some(Arc::new(
                rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool"),
            ))
        } else {
            None
        };
        self
    }

    pub fn with_cache(mut self, cache: Arc<CountCache>) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn cache(&self) -> Option<&Arc<CountCache>> {
        self.cache.as_ref()
    }

    fn install<T: Send>(&self, job: impl FnOnce() -> T + Send) -> T {
        match &self.pool {
            Some(pool) => pool.install(job),
            None => job(),
        }
    }

    fn parallel(&self) -> bool {
        self.workers != 1
    }

    fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
        if n > cap {
            Err(Error::CapExceeded { what, n, cap })
        } else {
            Ok(())
        }
    }

    fn compile(ps: &[DistantPattern]) -> Result<Vec<CompiledPattern>> {
        if ps.is_empty() {
            return Err(Error::EmptyPatternSet);
        }
        Ok(ps.iter().map(CompiledPattern::new).collect())
    }

    fn count_raw(&self, n: usize, compiled: &[CompiledPattern], fixed: &[usize]) -> u64 {
        let search = Search { n, patterns: compiled };
        let Some((prefix, used)) = search.seed(fixed) else {
            return 0;
        };
        if !self.parallel() || prefix.len() + 1 >= n {
            let mut prefix = prefix;
            return search.count(&mut prefix, used);
        }
        let branches = search.branches(used);
        self.install(|| {
            branches
                .par_iter()
                .map(|&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    if search.clean_at(&p, p.len() - 1) {
                        search.count(&mut p, used | (1 << v))
                    } else {
                        0
                    }
                })
                .sum()
        })
    }

    /// `|Av_n(ps)|`.
    pub fn count(&self, n: usize, ps: &[DistantPattern]) -> Result<u64> {
        let compiled = Self::compile(ps)?;
        let key = pattern_set_key(ps);
        if let Some(hit) = self.cache.as_ref().and_then(|c| c.get(&key, n)) {
            return Ok(hit);
        }
        Self::check_cap("count", n, self.limits.count_cap)?;
        let count = self.count_raw(n, &compiled, &[]);
        if let Some(cache) = &self.cache {
            cache.insert(&key, n, count)?;
        }
        Ok(count)
    }

    /// Avoiders whose first entries equal `q.prefix`.
    pub fn count_with_prefix(&self, q: &PrefixQuery, ps: &[DistantPattern]) -> Result<u64> {
        let compiled = Self::compile(ps)?;
        Self::check_cap("count", q.n, self.limits.count_cap)?;
        Ok(self.count_raw(q.n, &compiled, &q.prefix))
    }

    /// `Av_n(ps)` in lexicographic order.
    pub fn list(&self, n: usize, ps: &[DistantPattern]) -> Result<Vec<Permutation>> {
        let compiled = Self::compile(ps)?;
        Self::check_cap("list", n, self.limits.list_cap)?;
        let search = Search { n, patterns: &compiled };
        if !self.parallel() || n < 2 {
            let mut out = Vec::new();
            search.list(&mut Vec::with_capacity(n), 0, &mut out);
            return Ok(out);
        }
        let parts: Vec<Vec<Permutation>> = self.install(|| {
            search
                .branches(0)
                .par_iter()
                .map(|&v| {
                    let mut out = Vec::new();
                    let mut p = vec![v];
                    if search.clean_at(&p, 0) {
                        search.list(&mut p, 1 << v, &mut out);
                    }
                    out
                })
                .collect()
        });
        Ok(parts.into_iter().flatten().collect())
    }

    /// Counts for `n = 0..=n_max`, consulting and filling the cache.
    pub fn sequence(&self, ps: &[DistantPattern], n_max: usize) -> Result<CountTable> {
        self.sequence_range(ps, 0, n_max)
    }

    pub fn sequence_range(&self, ps: &[DistantPattern], n_min: usize, n_max: usize) -> Result<CountTable> {
        let rows = (n_min..=n_max).map(|n| Ok((n, self.count(n, ps)?))).collect::<Result<_>>()?;
        Ok(CountTable { patterns: pattern_set_key(ps), rows })
    }
}

/// `|Av_n(ps)|` with default caps, single threaded, no cache.
pub fn count_avoiders(n: usize, ps: &[DistantPattern]) -> Result<u64> {
    Enumerator::default().count(n, ps)
}

pub fn list_avoiders(n: usize, ps: &[DistantPattern]) -> Result<Vec<Permutation>> {
    Enumerator::default().list(n, ps)
}

pub fn count_avoiders_with_prefix(q: &PrefixQuery, ps: &[DistantPattern]) -> Result<u64> {
    Enumerator::default().count_with_prefix(q, ps)
}

pub fn sequence(ps: &[DistantPattern], n_max: usize) -> Result<CountTable> {
    Enumerator::default().sequence(ps, n_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcher::avoids_all;
    use crate::permcore::all_permutations;

    fn set(items: &[&str]) -> Vec<DistantPattern> {
        items.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn brute(n: usize, ps: &[DistantPattern]) -> Vec<Permutation> {
        all_permutations(n).filter(|p| avoids_all(p, ps)).collect()
    }

    #[test]
    fn small_known_counts() {
        assert_eq!(count_avoiders(3, &set(&["2 #1 1"])).unwrap(), 3);
        assert_eq!(count_avoiders(4, &set(&["2 #1 1"])).unwrap(), 5);
    }

    #[test]
    fn listing_examples() {
        let show = |v: Vec<Permutation>| v.iter().map(|p| p.to_string()).collect::<Vec<_>>();
        assert_eq!(show(list_avoiders(2, &set(&["21"])).unwrap()), ["12"]);
        assert_eq!(show(list_avoiders(3, &set(&["2 #1 1"])).unwrap()), ["123", "132", "213"]);
        assert_eq!(show(list_avoiders(1, &set(&["1 #1 3 =0 2"])).unwrap()), ["1"]);
        assert_eq!(show(list_avoiders(0, &set(&["1"])).unwrap()), [""]);
        assert!(list_avoiders(1, &set(&["1"])).unwrap().is_empty());
    }

    #[test]
    fn matches_subset_filter() {
        for pats in [vec!["1 #1 3 =0 2"], vec!["#1 2 1", "1 2 3"], vec!["2 =1 1 #2"], vec!["1 =0 3 #1 2"]] {
            let ps = set(&pats);
            for n in 0..=7 {
                assert_eq!(list_avoiders(n, &ps).unwrap(), brute(n, &ps), "{pats:?} n={n}");
            }
        }
    }

    #[test]
    fn caps_refuse() {
        let e = Enumerator::default();
        assert!(matches!(e.count(13, &set(&["21"])), Err(Error::CapExceeded { cap: 12, .. })));
        assert!(matches!(e.list(10, &set(&["21"])), Err(Error::CapExceeded { cap: 9, .. })));
        assert!(matches!(e.count(3, &[]), Err(Error::EmptyPatternSet)));
        let raised = Enumerator::new(Limits::uniform(13));
        assert_eq!(raised.count(13, &set(&["21"])).unwrap(), 1);
    }

    #[test]
    fn prefix_counts_partition_the_total() {
        let ps = set(&["1 =0 3 #1 2"]);
        for n in 1..=7 {
            let total = count_avoiders(n, &ps).unwrap();
            let parts: u64 = (1..=n)
                .map(|i| count_avoiders_with_prefix(&PrefixQuery::new(n, vec![i]).unwrap(), &ps).unwrap())
                .sum();
            assert_eq!(parts, total);
        }
        // leading n cannot take part in an occurrence
        let q = PrefixQuery::new(4, vec![4]).unwrap();
        assert_eq!(count_avoiders_with_prefix(&q, &ps).unwrap(), count_avoiders(3, &ps).unwrap());
        let full = PrefixQuery::new(4, vec![2, 1, 4, 3]).unwrap();
        assert_eq!(count_avoiders_with_prefix(&full, &ps).unwrap(), 1);
        let bad = PrefixQuery::new(4, vec![1, 3, 4, 2]).unwrap();
        assert_eq!(count_avoiders_with_prefix(&bad, &ps).unwrap(), 0);
        assert!(PrefixQuery::new(3, vec![1, 1]).is_err());
        assert!(PrefixQuery::new(3, vec![4]).is_err());
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let ps = set(&["1 #1 2 =0 3"]);
        let one = Enumerator::default();
        let four = Enumerator::default().with_workers(4);
        for n in 0..=8 {
            assert_eq!(one.count(n, &ps).unwrap(), four.count(n, &ps).unwrap());
        }
        assert_eq!(one.list(7, &ps).unwrap(), four.list(7, &ps).unwrap());
    }

    #[test]
    fn sequence_uses_cache() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Arc::new(CountCache::open(dir.path().join("c.jsonl")).unwrap());
        let e = Enumerator::default().with_cache(cache.clone());
        let table = e.sequence(&set(&["21"]), 5).unwrap();
        assert_eq!(table.counts(), vec![1; 6]);
        assert_eq!(table.patterns, "2 1");
        assert_eq!(cache.len(), 6);
        assert_eq!(pattern_set_key(&set(&["21", "1 #1 2", "21"])), "1 #1 2;2 1");
    }
}
