//! Occurrence search for distant patterns.
//!
//! The search walks index tuples depth first. Each letter's candidate range is
//! clipped by the footprint the remaining letters and gaps still need, and a new
//! letter only has to be compared with its two nearest neighbours in letter value
//! among the letters already placed.

use crate::permcore::perm::flatten_distinct;
use crate::permcore::{DistantPattern, GapConstraint, OccurrenceWitness, Permutation};

#[derive(Debug, Clone)]
pub struct CompiledPattern {
    letters: Vec<usize>,
    gaps: Vec<GapConstraint>,
    /// Smallest 0-based position letter `j` can take.
    lead: Vec<usize>,
    /// Fewest host letters needed after letter `j`.
    trail: Vec<usize>,
    /// Nearest letters below/above letter `j` among letters `0..j`.
    fwd_neighbours: Vec<(Option<usize>, Option<usize>)>,
    /// Nearest letters below/above letter `j` among letters `j+1..k`.
    bwd_neighbours: Vec<(Option<usize>, Option<usize>)>,
}

fn neighbours(letters: &[usize], j: usize, among: impl Iterator<Item = usize>) -> (Option<usize>, Option<usize>) {
    let v = letters[j];
    let mut below: Option<usize> = None;
    let mut above: Option<usize> = None;
    for t in among {
        let w = letters[t];
        if w < v && below.is_none_or(|b| letters[b] < w) {
            below = Some(t);
        }
        if w > v && above.is_none_or(|a| letters[a] > w) {
            above = Some(t);
        }
    }
    (below, above)
}

impl CompiledPattern {
    pub fn new(p: &DistantPattern) -> Self {
        let letters = p.letters().values().to_vec();
        let gaps = p.gaps().to_vec();
        let k = letters.len();

        let mut lead = vec![0; k];
        lead[0] = gaps[0].min_gap;
        for j in 1..k {
            lead[j] = lead[j - 1] + gaps[j].min_gap + 1;
        }
        let mut trail = vec![0; k];
        trail[k - 1] = gaps[k].min_gap;
        for j in (0..k - 1).rev() {
            trail[j] = trail[j + 1] + gaps[j + 1].min_gap + 1;
        }
        let fwd_neighbours = (0..k).map(|j| neighbours(&letters, j, 0..j)).collect();
        let bwd_neighbours = (0..k).map(|j| neighbours(&letters, j, j + 1..k)).collect();
        CompiledPattern { letters, gaps, lead, trail, fwd_neighbours, bwd_neighbours }
    }

    pub fn size(&self) -> usize {
        self.letters.len()
    }

    pub fn footprint(&self) -> usize {
        self.lead[0] + self.trail[0] + 1
    }

    #[inline]
    fn fits(host: &[usize], pos: &[usize], nb: (Option<usize>, Option<usize>), value: usize) -> bool {
        nb.0.is_none_or(|b| host[pos[b]] < value) && nb.1.is_none_or(|a| host[pos[a]] > value)
    }

    /// Visits witnesses (0-based positions) in lexicographic order until `visit` returns `false`.
    /// Returns `false` when stopped early.
    pub fn for_each_occurrence(&self, host: &[usize], mut visit: impl FnMut(&[usize]) -> bool) -> bool {
        let k = self.size();
        if host.len() < self.footprint() {
            return true;
        }
        let mut pos = vec![0usize; k];
        self.forward(host, 0, &mut pos, &mut visit)
    }

    fn forward(&self, host: &[usize], j: usize, pos: &mut [usize], visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
        let k = self.size();
        let hi = host.len() - 1 - self.trail[j];
        let (lo, hi) = if j == 0 {
            (self.lead[0], hi)
        } else {
            let g = self.gaps[j];
            let lo = pos[j - 1] + g.min_gap + 1;
            if g.tight {
                (lo, hi.min(lo))
            } else {
                (lo, hi)
            }
        };
        let nb = self.fwd_neighbours[j];
        for p in lo..=hi {
            if !Self::fits(host, pos, nb, host[p]) {
                continue;
            }
            pos[j] = p;
            if j + 1 == k {
                if !visit(pos) {
                    return false;
                }
            } else if !self.forward(host, j + 1, pos, visit) {
                return false;
            }
        }
        true
    }

    pub fn occurs_in(&self, host: &[usize]) -> bool {
        !self.for_each_occurrence(host, |_| false)
    }

    /// Whether some witness inside `prefix` ends exactly at `end` (0-based), for a host
    /// whose full length is `total_len ≥ prefix.len()`. Only the trailing gap looks past the prefix.
    pub fn occurs_ending_at(&self, prefix: &[usize], end: usize, total_len: usize) -> bool {
        let k = self.size();
        if total_len - 1 - end < self.gaps[k].min_gap || end < self.lead[k - 1] {
            return false;
        }
        let mut pos = vec![0usize; k];
        pos[k - 1] = end;
        k == 1 || self.backward(prefix, k - 2, &mut pos)
    }

    fn backward(&self, host: &[usize], j: usize, pos: &mut [usize]) -> bool {
        let g = self.gaps[j + 1];
        let next = pos[j + 1];
        if next < g.min_gap + 1 {
            return false;
        }
        let hi = next - g.min_gap - 1;
        let lo = if g.tight { hi } else { self.lead[j] };
        if hi < self.lead[j] {
            return false;
        }
        let nb = self.bwd_neighbours[j];
        for p in (lo..=hi).rev() {
            if !Self::fits(host, pos, nb, host[p]) {
                continue;
            }
            pos[j] = p;
            if j == 0 || self.backward(host, j - 1, pos) {
                return true;
            }
        }
        false
    }
}

/// All witnesses, lexicographic by position tuple; positions are 1-based.
pub fn occurrences(host: &Permutation, p: &DistantPattern) -> Vec<OccurrenceWitness> {
    let compiled = CompiledPattern::new(p);
    let mut out = Vec::new();
    compiled.for_each_occurrence(host.values(), |pos| {
        out.push(OccurrenceWitness { positions: pos.iter().map(|&i| i + 1).collect() });
        true
    });
    out
}

pub fn avoids(host: &Permutation, p: &DistantPattern) -> bool {
    !CompiledPattern::new(p).occurs_in(host.values())
}

pub fn contains(host: &Permutation, p: &DistantPattern) -> bool {
    !avoids(host, p)
}

/// Conjunction of [`avoids`] over `ps`.
pub fn avoids_all(host: &Permutation, ps: &[DistantPattern]) -> bool {
    ps.iter().all(|p| avoids(host, p))
}

/// Checks a claimed witness directly against the occurrence definition.
pub fn is_witness(host: &Permutation, p: &DistantPattern, w: &OccurrenceWitness) -> bool {
    let (n, k) = (host.len(), p.size());
    let pos = &w.positions;
    if pos.len() != k || pos.windows(2).any(|x| x[0] >= x[1]) || pos[0] == 0 || pos[k - 1] > n {
        return false;
    }
    let values: Vec<usize> = pos.iter().map(|&i| host.at(i)).collect();
    if &flatten_distinct(&values) != p.letters() {
        return false;
    }
    let gaps = p.gaps();
    pos[0] > gaps[0].min_gap
        && n - pos[k - 1] >= gaps[k].min_gap
        && (1..k).all(|j| gaps[j].admits(pos[j] - pos[j - 1] - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use proptest::prelude::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }
    fn dp(s: &str) -> DistantPattern {
        s.parse().unwrap()
    }
    fn positions(ws: &[OccurrenceWitness]) -> Vec<Vec<usize>> {
        ws.iter().map(|w| w.positions.clone()).collect()
    }

    /// Every k-subset of positions, filtered by the definition.
    fn brute_occurrences(host: &Permutation, p: &DistantPattern) -> Vec<Vec<usize>> {
        (1..=host.len())
            .combinations(p.size())
            .filter(|c| is_witness(host, p, &OccurrenceWitness { positions: c.clone() }))
            .collect()
    }

    #[test]
    fn classical_occurrences() {
        let host = perm("32514");
        let ws = occurrences(&host, &dp("231"));
        assert_eq!(positions(&ws), vec![vec![1, 3, 4], vec![2, 3, 4]]);
        assert_eq!(ws[0].values(&host), vec![3, 5, 1]);
        assert_eq!(ws[1].values(&host), vec![2, 5, 1]);
        assert!(occurrences(&host, &dp("1 2 3")).is_empty());
    }

    #[test]
    fn vincular_occurrence() {
        let host = perm("621543");
        let ws = occurrences(&host, &dp("3 1 =0 2"));
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].values(&host), vec![6, 1, 5]);
    }

    #[test]
    fn distant_containment() {
        assert!(!avoids(&perm("3142"), &dp("1 #1 2")));
        assert_eq!(positions(&occurrences(&perm("3142"), &dp("1 #1 2"))), vec![vec![1, 3], vec![2, 4]]);
        assert!(!avoids(&perm("45132"), &dp("1 #1 2")));
        assert!(avoids(&perm("1234"), &dp("1 #3 2")));
        assert!(avoids(&perm("12345"), &dp("#2 1 #1 2 #1")));
        assert!(!avoids(&perm("123456"), &dp("#2 1 #1 2 #1")));
    }

    #[test]
    fn tight_gap_exact_size() {
        // 1 then 2 with exactly four letters between, then 3 anywhere later.
        let p = dp("1 =4 2 3");
        assert!(!avoids(&perm("1765423"), &p));
        assert!(avoids(&perm("1762543"), &p));
    }

    #[test]
    fn avoids_all_examples() {
        let set: Vec<_> = ["132", "231", "213"].iter().map(|s| dp(s)).collect();
        assert!(avoids_all(&perm("123"), &set));
        let size3: Vec<_> = ["123", "321", "1 #1 2 3"].iter().map(|s| dp(s)).collect();
        assert!(avoids_all(&perm("21"), &size3));
        let pi6: Vec<_> = ["#1 1 3 2", "1 3 2 #1", "1 3 4 2"].iter().map(|s| dp(s)).collect();
        assert!(!avoids_all(&perm("1342"), &pi6));
        assert!(avoids_all(&Permutation::default(), &pi6));
    }

    #[test]
    fn consecutive_windows() {
        let p = dp("1 =0 3 =0 2");
        let host = perm("2413576");
        let windows: Vec<Vec<usize>> = (1..=host.len() - 2)
            .filter(|&i| {
                let w = [host.at(i), host.at(i + 1), host.at(i + 2)];
                flatten_distinct(&w) == perm("132")
            })
            .map(|i| vec![i, i + 1, i + 2])
            .collect();
        assert_eq!(positions(&occurrences(&host, &p)), windows);
    }

    #[test]
    fn ending_at_matches_forward_search() {
        let p = CompiledPattern::new(&dp("1 #1 3 =0 2"));
        let host = perm("2517634");
        let n = host.len();
        let mut ends = vec![false; n];
        p.for_each_occurrence(host.values(), |pos| {
            ends[pos[2]] = true;
            true
        });
        for e in 0..n {
            assert_eq!(p.occurs_ending_at(&host.values()[..=e], e, n), ends[e], "end {e}");
        }
    }

    fn arb_pattern() -> impl Strategy<Value = DistantPattern> {
        (1usize..=3)
            .prop_flat_map(|k| {
                (
                    Just((1..=k).collect::<Vec<_>>()).prop_shuffle(),
                    proptest::collection::vec((0usize..3, any::<bool>()), k + 1),
                )
            })
            .prop_map(|(letters, raw)| {
                let k = letters.len();
                let gaps = raw
                    .into_iter()
                    .enumerate()
                    .map(|(j, (m, t))| GapConstraint { min_gap: m, tight: t && j != 0 && j != k })
                    .collect();
                DistantPattern::new(Permutation::new(letters).unwrap(), gaps).unwrap()
            })
    }

    fn arb_host() -> impl Strategy<Value = Permutation> {
        (0usize..=8)
            .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn search_equals_subset_scan(host in arb_host(), p in arb_pattern()) {
            let found = positions(&occurrences(&host, &p));
            prop_assert_eq!(&found, &brute_occurrences(&host, &p));
            prop_assert_eq!(avoids(&host, &p), found.is_empty());
        }

        #[test]
        fn raising_a_min_gap_only_removes_witnesses(host in arb_host(), p in arb_pattern(), j in 0usize..4) {
            let j = j % p.gaps().len();
            prop_assume!(!p.gaps()[j].tight);
            let mut gaps = p.gaps().to_vec();
            gaps[j].min_gap += 1;
            let tighter = DistantPattern::new(p.letters().clone(), gaps).unwrap();
            let before = positions(&occurrences(&host, &p));
            for w in positions(&occurrences(&host, &tighter)) {
                prop_assert!(before.contains(&w));
            }
        }
    }
}
