//! Constructive maps between avoider classes.
//!
//! * `forward_f` / `inverse_f`: avoiders of `2□^r1` against permutations whose
//!   cycles each span at most `r` values.
//! * `algorithm_g`: inserts a value into a 12-container, landing in the
//!   1□2-containers one size up.
//! * `ap_avoider_count`: permutations with no value progression, counted directly
//!   and through a consecutive distant pattern on the inverse.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::closedforms::{double_preimage_sum, factorial, fibonacci, inclusion_exclusion_sides, missed_image_sum};
use crate::enumerate::Enumerator;
use crate::error::{Error, Result};
use crate::matcher::CompiledPattern;
use crate::permcore::perm::all_permutations;
use crate::permcore::{DistantPattern, GapConstraint, Permutation};

/// A permutation in cycle notation, kept in standard form: each cycle starts at
/// its minimum and cycles are ordered by their minima.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclePermutation {
    cycles: Vec<Vec<usize>>,
}

impl CyclePermutation {
    /// Normalizes `cycles`, which must partition `1..=n`.
    pub fn new(mut cycles: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = cycles.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for &v in cycles.iter().flatten() {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation { values: cycles.concat(), len: n });
            }
            seen[v] = true;
        }
        if cycles.iter().any(Vec::is_empty) {
            return Err(Error::Precondition("empty cycle".into()));
        }
        for c in &mut cycles {
            let at = c.iter().enumerate().min_by_key(|&(_, v)| *v).map(|(i, _)| i).unwrap();
            c.rotate_left(at);
        }
        cycles.sort_by_key(|c| c[0]);
        Ok(CyclePermutation { cycles })
    }

    /// Cycle decomposition of `i ↦ p_i`.
    pub fn from_permutation(p: &Permutation) -> Self {
        let n = p.len();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut c = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                c.push(i);
                i = p.at(i);
            }
            cycles.push(c);
        }
        CyclePermutation { cycles }
    }

    /// One-line form of the map sending each element to its successor in its cycle.
    pub fn to_permutation(&self) -> Permutation {
        let mut out = vec![0; self.len()];
        for c in &self.cycles {
            for (i, &v) in c.iter().enumerate() {
                out[v - 1] = c[(i + 1) % c.len()];
            }
        }
        Permutation::new(out).expect("cycles partition 1..n")
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Largest `max − min` over the cycles.
    pub fn max_spread(&self) -> usize {
        self.cycles.iter().map(|c| spread(c)).max().unwrap_or(0)
    }
}

fn spread(c: &[usize]) -> usize {
    c.iter().max().unwrap() - c.iter().min().unwrap()
}

fn render_cycle(c: &[usize]) -> String {
    let parts: Vec<String> = c.iter().map(usize::to_string).collect();
    format!("({})", parts.join(" "))
}

impl fmt::Display for CyclePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            f.write_str(&render_cycle(c))?;
        }
        Ok(())
    }
}

impl FromStr for CyclePermutation {
    type Err = Error;

    /// Accepts `(1 3 4)(2 5)` and, when every entry is a single digit, `(134)(25)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("cannot parse cycle notation `{s}`"));
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = body.find(')').ok_or_else(bad)?;
            let inner = body[..close].trim();
            let cycle: Vec<usize> = if !inner.contains(char::is_whitespace) && inner.chars().all(|c| c.is_ascii_digit()) {
                inner.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()
            } else {
                inner.split_whitespace().map(|t| t.parse().map_err(|_| bad())).collect::<Result<_>>()?
            };
            cycles.push(cycle);
            rest = body[close + 1..].trim_start();
        }
        CyclePermutation::new(cycles)
    }
}

/// `2□^r1`: an inversion whose letters are more than `r` positions apart.
pub fn far_inversion(r: usize) -> DistantPattern {
    DistantPattern::new(
        "21".parse().expect("valid"),
        vec![GapConstraint::FREE, GapConstraint::at_least(r), GapConstraint::FREE],
    )
    .expect("valid pattern")
}

fn require_avoids(p: &Permutation, pattern: &DistantPattern) -> Result<()> {
    let compiled = CompiledPattern::new(pattern);
    let mut witness = None;
    compiled.for_each_occurrence(p.values(), |pos| {
        witness = Some(pos.iter().map(|i| i + 1).collect());
        false
    });
    match witness {
        Some(witness) => Err(Error::ContainsPattern { host: p.to_string(), pattern: pattern.to_string(), witness }),
        None => Ok(()),
    }
}

/// Sends an avoider of `2□^r1` to a permutation whose cycles span at most `r`.
///
/// The values of `p` split into consecutive blocks. Each block is opened by the
/// smallest unused position `j`; its cycle lists `j` and then the positions of
/// the remaining block values from largest to smallest.
pub fn forward_f(p: &Permutation, r: usize) -> Result<CyclePermutation> {
    require_avoids(p, &far_inversion(r))?;
    let n = p.len();
    let inv = p.inverse();
    let mut used = vec![false; n + 1];
    let mut cycles = Vec::new();
    let mut block_top = 0;
    for j in 1..=n {
        if used[j] {
            continue;
        }
        let top = p.at(j);
        if top <= block_top {
            return Err(Error::Disagreement(format!("{p}: position {j} opens a block below {block_top}")));
        }
        let mut cycle = vec![j];
        for v in (block_top + 1..top).rev() {
            cycle.push(inv.at(v));
        }
        for &i in &cycle {
            if used[i] {
                return Err(Error::Disagreement(format!("{p}: position {i} assigned twice")));
            }
            used[i] = true;
        }
        cycles.push(cycle);
        block_top = top;
    }
    CyclePermutation::new(cycles)
}

/// Inverse of [`forward_f`]: every cycle takes the next block of values, its
/// first element the largest and the rest in decreasing order.
pub fn inverse_f(c: &CyclePermutation, r: usize) -> Result<Permutation> {
    for cycle in c.cycles() {
        let s = spread(cycle);
        if s > r {
            return Err(Error::SpreadExceeded { cycle: render_cycle(cycle), spread: s, bound: r });
        }
    }
    let mut out = vec![0; c.len()];
    let mut next = 0;
    for cycle in c.cycles() {
        let top = next + cycle.len();
        for (i, &pos) in cycle.iter().enumerate() {
            out[pos - 1] = top - i;
        }
        next = top;
    }
    Permutation::new(out)
}

/// Permutations of size `n` with every cycle spanning at most `r`, by full scan.
pub fn cycle_spread_count(n: usize, r: usize) -> u64 {
    all_permutations(n).filter(|p| CyclePermutation::from_permutation(p).max_spread() <= r).count() as u64
}

/// Inserts `j` right after the first entry that is smaller than some later entry,
/// raising every old value `≥ j` by one.
pub fn algorithm_g(p: &Permutation, j: usize) -> Result<Permutation> {
    let n = p.len() + 1;
    if j == 0 || j > n {
        return Err(Error::Precondition(format!("insertion value {j} outside 1..={n}")));
    }
    let v = p.values();
    let mut suffix_max = 0;
    let mut starter = None;
    for i in (0..v.len()).rev() {
        if v[i] < suffix_max {
            starter = Some(i);
        }
        suffix_max = suffix_max.max(v[i]);
    }
    let Some(i) = starter else {
        return Err(Error::Precondition(format!("{p} contains no 12")));
    };
    let mut out: Vec<usize> = v.iter().map(|&x| if x >= j { x + 1 } else { x }).collect();
    out.insert(i + 1, j);
    Permutation::new(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreimageProfile {
    pub n: usize,
    /// Number of 1□2-containers of size `n` with a given number of preimages.
    pub histogram: BTreeMap<usize, u64>,
}

impl PreimageProfile {
    pub fn bucket(&self, m: usize) -> u64 {
        self.histogram.get(&m).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.histogram.values().sum()
    }
}

/// Runs the insertion map over every (12-container of size `n−1`, value) pair and
/// histograms the 1□2-containers of size `n` by how often each is hit.
pub fn preimage_histogram(n: usize, engine: &Enumerator) -> Result<PreimageProfile> {
    let cap = engine.limits().list_cap;
    if n > cap {
        return Err(Error::CapExceeded { what: "classify_preimages", n, cap });
    }
    if n < 2 {
        return Err(Error::Precondition("classify_preimages needs n ≥ 2".into()));
    }
    let spaced = CompiledPattern::new(&"1 #1 2".parse()?);
    let mut hits: HashMap<Permutation, usize> = HashMap::new();
    for p in all_permutations(n - 1) {
        if !p.has_ascent_pair() {
            continue;
        }
        for j in 1..=n {
            let image = algorithm_g(&p, j)?;
            if !spaced.occurs_in(image.values()) {
                return Err(Error::Disagreement(format!("g({p}, {j}) = {image} avoids 1□2")));
            }
            *hits.entry(image).or_default() += 1;
        }
    }
    let mut histogram = BTreeMap::new();
    for q in all_permutations(n) {
        if spaced.occurs_in(q.values()) {
            *histogram.entry(hits.get(&q).copied().unwrap_or(0)).or_insert(0u64) += 1;
        }
    }
    Ok(PreimageProfile { n, histogram })
}

/// [`preimage_histogram`], failing if a multiplicity above 2 shows up or the
/// histogram disagrees with the closed-form sums.
pub fn classify_preimages(n: usize, engine: &Enumerator) -> Result<PreimageProfile> {
    let profile = preimage_histogram(n, engine)?;
    if let Some((&m, _)) = profile.histogram.iter().next_back().filter(|(&m, _)| m > 2) {
        return Err(Error::Disagreement(format!("n = {n}: a container has {m} preimages")));
    }
    let b_size = factorial(n) - fibonacci(n + 1);
    let checks = [
        ("total", BigUint::from(profile.total()), b_size),
        ("double", BigUint::from(profile.bucket(2)), double_preimage_sum(n)),
        ("missed", BigUint::from(profile.bucket(0)), missed_image_sum(n)),
    ];
    for (what, got, want) in checks {
        if got != want {
            return Err(Error::Disagreement(format!("n = {n}: {what} count {got} but closed form gives {want}")));
        }
    }
    let (left, right) = inclusion_exclusion_sides(n);
    if left != right {
        return Err(Error::Disagreement(format!("n = {n}: inclusion-exclusion {left} ≠ {right}")));
    }
    Ok(profile)
}

/// Every `(p, j)` with `algorithm_g(p, j) = q`.
pub fn g_preimages(q: &Permutation) -> Vec<(Permutation, usize)> {
    let n = q.len();
    if n < 2 {
        return Vec::new();
    }
    all_permutations(n - 1)
        .filter(Permutation::has_ascent_pair)
        .flat_map(|p| (1..=n).map(move |j| (p.clone(), j)))
        .filter(|(p, j)| matches!(algorithm_g(p, *j), Ok(ref image) if image == q))
        .collect()
}

/// Does `p` have values `x, x+r, …, x+(k−1)r` at increasing positions?
pub fn has_value_progression(p: &Permutation, k: usize, r: usize) -> bool {
    let n = p.len();
    if k == 0 || (k - 1) * r >= n {
        return k == 0;
    }
    let inv = p.inverse();
    (1..=n - (k - 1) * r).any(|x| (1..k).all(|t| inv.at(x + (t - 1) * r) < inv.at(x + t * r)))
}

/// The all-tight pattern `12⋯k` whose consecutive letters sit exactly `r` apart,
/// i.e. with `r − 1` letters in each internal gap.
pub fn progression_pattern(k: usize, r: usize) -> Result<DistantPattern> {
    if k < 2 || r == 0 {
        return Err(Error::Precondition(format!("progressions need k ≥ 2 and r ≥ 1 (got k = {k}, r = {r})")));
    }
    DistantPattern::consecutive(Permutation::identity(k), r - 1)
}

/// Permutations of size `n` with no length-`k` value progression of difference `r`.
///
/// Counted by a direct scan and by avoidance of [`progression_pattern`]; the two
/// must agree.
pub fn ap_avoider_count(n: usize, k: usize, r: usize, engine: &Enumerator) -> Result<u64> {
    let pattern = progression_pattern(k, r)?;
    let cap = engine.limits().list_cap;
    if n > cap {
        return Err(Error::CapExceeded { what: "ap_avoider_count", n, cap });
    }
    let direct = all_permutations(n).filter(|p| !has_value_progression(p, k, r)).count() as u64;
    let via_pattern = engine.count(n, &[pattern])?;
    if direct != via_pattern {
        return Err(Error::Disagreement(format!(
            "n = {n}, k = {k}, r = {r}: direct scan {direct}, pattern count {via_pattern}"
        )));
    }
    Ok(direct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedforms::{consecutive_base, consecutive_dist_count};

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(forward_f(&perm("352149867"), 3).unwrap().to_string(), "(1 3 4)(2 5)(6 7 9 8)");
        assert_eq!(forward_f(&perm("41352867"), 4).unwrap().to_string(), "(1 3 5 2)(4)(6 8 7)");
        let c: CyclePermutation = "(1 3 4)(2 5)(6 7 9 8)".parse().unwrap();
        assert_eq!(inverse_f(&c, 3).unwrap(), perm("352149867"));
        let c: CyclePermutation = "(1352)(4)(687)".parse().unwrap();
        assert_eq!(inverse_f(&c, 4).unwrap(), perm("41352867"));
        assert_eq!(forward_f(&Permutation::identity(4), 1).unwrap().to_string(), "(1)(2)(3)(4)");
        assert_eq!(inverse_f(&"(1)(2)(3)".parse().unwrap(), 0).unwrap(), Permutation::identity(3));
    }

    #[test]
    fn precondition_failures() {
        let err = forward_f(&perm("312"), 1).unwrap_err();
        assert!(matches!(err, Error::ContainsPattern { ref witness, .. } if witness == &vec![1, 3]));
        let c: CyclePermutation = "(1 4)(2)(3)".parse().unwrap();
        assert!(matches!(inverse_f(&c, 2), Err(Error::SpreadExceeded { spread: 3, .. })));
    }

    #[test]
    fn cycle_notation_normalizes() {
        let c = CyclePermutation::new(vec![vec![5, 2], vec![4, 3, 1]]).unwrap();
        assert_eq!(c.to_string(), "(1 4 3)(2 5)");
        assert_eq!(CyclePermutation::from_permutation(&c.to_permutation()), c);
        assert!(CyclePermutation::new(vec![vec![1, 1]]).is_err());
        assert!("(1 2".parse::<CyclePermutation>().is_err());
    }

    #[test]
    fn round_trip_small() {
        let e = Enumerator::default();
        for r in 1..=3 {
            for n in 0..=6 {
                let avoiders = e.list(n, &[far_inversion(r)]).unwrap();
                assert_eq!(avoiders.len() as u64, cycle_spread_count(n, r), "n={n} r={r}");
                for p in avoiders {
                    let c = forward_f(&p, r).unwrap();
                    assert!(c.max_spread() <= r);
                    assert_eq!(inverse_f(&c, r).unwrap(), p);
                }
            }
        }
    }

    #[test]
    fn insertion_examples() {
        assert_eq!(algorithm_g(&perm("3412"), 2).unwrap(), perm("42513"));
        assert_eq!(algorithm_g(&perm("312"), 4).unwrap(), perm("3142"));
        assert_eq!(algorithm_g(&perm("231"), 1).unwrap(), perm("3142"));
        assert_eq!(algorithm_g(&perm("12"), 3).unwrap(), perm("132"));
        assert!(algorithm_g(&perm("321"), 1).is_err());
        assert!(algorithm_g(&perm("12"), 4).is_err());
    }

    #[test]
    fn preimage_profiles() {
        let e = Enumerator::default();
        let p4 = classify_preimages(4, &e).unwrap();
        assert_eq!(p4.total(), 19);
        assert_eq!(g_preimages(&perm("3142")), vec![(perm("231"), 1), (perm("312"), 4)]);
        assert!(g_preimages(&perm("45132")).is_empty());
        classify_preimages(6, &e).unwrap();
    }

    #[test]
    fn progressions() {
        let e = Enumerator::default();
        assert_eq!(ap_avoider_count(3, 2, 1, &e).unwrap(), 1);
        assert_eq!(ap_avoider_count(4, 5, 1, &e).unwrap(), 24);
        let q = Permutation::identity(3);
        let base = consecutive_base(&q, 6, &e).unwrap();
        let eq8 = consecutive_dist_count(6, 0, &q, &base).unwrap();
        assert_eq!(BigUint::from(ap_avoider_count(6, 3, 1, &e).unwrap()), eq8);
        for (k, r) in [(2, 2), (3, 2)] {
            ap_avoider_count(6, k, r, &e).unwrap();
        }
    }
}
