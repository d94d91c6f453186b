//! Structural reductions of classical distant patterns.
//!
//! A classical distant pattern with `k` letters and total gap `S` is avoided
//! exactly when every classical pattern of size `S + k` obtained by filling the
//! gap slots is avoided. There are `(S + k)! / k!` such fillings. Boundary gaps
//! can instead be peeled off, which scales the count by a falling factorial.

use crate::enumerate::Enumerator;
use crate::error::{Error, Result};
use crate::permcore::perm::next_permutation;
use crate::permcore::{DistantPattern, Permutation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionResult {
    pub source: DistantPattern,
    /// Sorted lexicographically.
    pub classical_set: Vec<Permutation>,
}

impl ExpansionResult {
    pub fn as_patterns(&self) -> Vec<DistantPattern> {
        self.classical_set
            .iter()
            .map(|q| DistantPattern::classical(q.clone()).expect("non-empty"))
            .collect()
    }
}

/// `x (x-1) … (x-y+1)`; zero when `y > x`.
pub fn falling_factorial(x: u64, y: u64) -> u64 {
    if y > x {
        return 0;
    }
    (x - y + 1..=x).product()
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=m {
            if m - v + 1 < k - cur.len() {
                break;
            }
            cur.push(v);
            go(v + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, m, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Every classical pattern of size `S + k` whose letter positions carry `p`'s letters.
pub fn expand_classical(p: &DistantPattern) -> Result<ExpansionResult> {
    if !p.is_classical_dp() {
        return Err(Error::TightGapUnsupported { pattern: p.to_string(), what: "expansion" });
    }
    let k = p.size();
    let s = p.total_gap();
    let m = s + k;

    // Slot layout: r0 gap slots, letter 1, r1 gap slots, …, letter k, rk gap slots.
    let mut letter_slots = Vec::with_capacity(k);
    let mut gap_slots = Vec::with_capacity(s);
    let mut at = 0;
    for (j, g) in p.gaps().iter().enumerate() {
        gap_slots.extend(at..at + g.min_gap);
        at += g.min_gap;
        if j < k {
            letter_slots.push(at);
            at += 1;
        }
    }

    let letters = p.letters().values();
    let mut out = Vec::new();
    for chosen in combinations(m, k) {
        let mut rest: Vec<usize> = (1..=m).filter(|v| !chosen.contains(v)).collect();
        loop {
            let mut word = vec![0; m];
            for (j, &slot) in letter_slots.iter().enumerate() {
                word[slot] = chosen[letters[j] - 1];
            }
            for (&slot, &v) in gap_slots.iter().zip(&rest) {
                word[slot] = v;
            }
            out.push(Permutation::new(word).expect("filling is a bijection"));
            if !next_permutation(&mut rest) {
                break;
            }
        }
    }
    out.sort();
    Ok(ExpansionResult { source: p.clone(), classical_set: out })
}

/// `|Av_n(□^{r1} q □^{r2})| = n^{(r)} |Av_{n-r}(q)|` with `r = r1 + r2`.
///
/// The identity presumes `n ≥ r`; below that the falling factorial vanishes and
/// so does the returned value.
pub fn boundary_reduced_count(n: usize, p: &DistantPattern, engine: &Enumerator) -> Result<u64> {
    let r = p.leading_gap() + p.trailing_gap();
    let inner = p.without_boundary();
    if n < r {
        return Ok(0);
    }
    let factor = falling_factorial(n as u64, r as u64);
    Ok(factor * engine.count(n - r, std::slice::from_ref(&inner))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::count_avoiders;

    fn dp(s: &str) -> DistantPattern {
        s.parse().unwrap()
    }
    fn names(e: &ExpansionResult) -> Vec<String> {
        e.classical_set.iter().map(|q| q.to_string()).collect()
    }

    #[test]
    fn small_expansions() {
        assert_eq!(names(&expand_classical(&dp("1 #1 2")).unwrap()), ["123", "132", "213"]);
        assert_eq!(names(&expand_classical(&dp("2 #1 1")).unwrap()), ["231", "312", "321"]);
        assert_eq!(names(&expand_classical(&dp("2413")).unwrap()), ["2413"]);
        assert_eq!(names(&expand_classical(&dp("#1 1")).unwrap()), ["12", "21"]);
    }

    #[test]
    fn cardinality_is_falling_factorial() {
        for s in ["1 #2 3 #1 2", "#1 2 1 #2", "#3 1", "3 #1 1 2 #1"] {
            let p = dp(s);
            let (k, total) = (p.size() as u64, p.total_gap() as u64);
            let e = expand_classical(&p).unwrap();
            assert_eq!(e.classical_set.len() as u64, falling_factorial(total + k, total), "{s}");
            let mut dedup = e.classical_set.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), e.classical_set.len());
        }
    }

    #[test]
    fn rejects_tight_gaps() {
        assert!(matches!(expand_classical(&dp("1 =0 2")), Err(Error::TightGapUnsupported { .. })));
    }

    #[test]
    fn falling_factorials() {
        assert_eq!(falling_factorial(5, 2), 20);
        assert_eq!(falling_factorial(5, 0), 1);
        assert_eq!(falling_factorial(2, 3), 0);
    }

    #[test]
    fn boundary_reduction_examples() {
        let e = Enumerator::default();
        assert_eq!(boundary_reduced_count(4, &dp("#1 2 1"), &e).unwrap(), 4);
        assert_eq!(boundary_reduced_count(5, &dp("#1 1 3 2 #1"), &e).unwrap(), 100);
        for n in 0..=6 {
            let q = dp("1 3 2");
            assert_eq!(boundary_reduced_count(n, &q, &e).unwrap(), count_avoiders(n, &[q]).unwrap());
        }
    }
}
