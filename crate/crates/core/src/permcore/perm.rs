//! Permutations in one-line notation and the flatten operator.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{1..n}` in one-line notation. The empty permutation is valid.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Permutation(Vec<usize>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Reverse,
    Complement,
    Inverse,
}

impl Symmetry {
    pub fn name(self) -> &'static str {
        match self {
            Symmetry::Reverse => "reverse",
            Symmetry::Complement => "complement",
            Symmetry::Inverse => "inverse",
        }
    }
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation { values, len: n });
            }
            seen[v] = true;
        }
        Ok(Permutation(values))
    }

    /// Caller guarantees `values` is a bijection on `1..=len`.
    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation(values)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// 1-based access, matching one-line notation.
    pub fn at(&self, position: usize) -> usize {
        self.0[position - 1]
    }

    pub fn reverse(&self) -> Self {
        Permutation(self.0.iter().rev().copied().collect())
    }

    pub fn complement(&self) -> Self {
        let n = self.len();
        Permutation(self.0.iter().map(|&v| n + 1 - v).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    pub fn apply_symmetry(&self, op: Symmetry) -> Self {
        match op {
            Symmetry::Reverse => self.reverse(),
            Symmetry::Complement => self.complement(),
            Symmetry::Inverse => self.inverse(),
        }
    }

    /// Whether `self` contains the classical pattern `12` (any ascent pair).
    pub fn has_ascent_pair(&self) -> bool {
        self.0.windows(2).any(|w| w[0] < w[1])
    }

    /// Removes the entry at a 1-based position and flattens the rest.
    pub fn delete_position(&self, position: usize) -> Self {
        let removed = self.0[position - 1];
        let rest = self
            .0
            .iter()
            .enumerate()
            .filter(|&(i, _)| i + 1 != position)
            .map(|(_, &v)| if v > removed { v - 1 } else { v })
            .collect();
        Permutation(rest)
    }

    /// Lexicographic successor, `None` after the last permutation.
    pub fn next_lex(&self) -> Option<Self> {
        let mut v = self.0.clone();
        next_permutation(&mut v).then_some(Permutation(v))
    }
}

pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All permutations of size `n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut current: Option<Vec<usize>> = Some((1..=n).collect());
    std::iter::from_fn(move || {
        let out = current.take()?;
        let mut next = out.clone();
        if next_permutation(&mut next) {
            current = Some(next);
        }
        Some(Permutation(out))
    })
}

/// The permutation order-isomorphic to `keys`. Keys must be pairwise distinct.
pub fn flatten<T: PartialOrd + fmt::Debug>(keys: &[T]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| keys[a].partial_cmp(&keys[b]).expect("flatten keys must be comparable"));
    for w in order.windows(2) {
        if keys[w[0]] == keys[w[1]] {
            let (first, second) = (w[0].min(w[1]) + 1, w[0].max(w[1]) + 1);
            return Err(Error::DuplicateKey { key: format!("{:?}", keys[w[0]]), first, second });
        }
    }
    let mut out = vec![0; keys.len()];
    for (rank, &idx) in order.iter().enumerate() {
        out[idx] = rank + 1;
    }
    Ok(Permutation(out))
}

/// Flattens a subsequence of distinct integers; used on hot paths where
/// distinctness is already known.
pub(crate) fn flatten_distinct(keys: &[usize]) -> Permutation {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_unstable_by_key(|&i| keys[i]);
    let mut out = vec![0; keys.len()];
    for (rank, &idx) in order.iter().enumerate() {
        out[idx] = rank + 1;
    }
    Permutation(out)
}

impl fmt::Display for Permutation {
    /// Concatenated digits when every value is a single digit, otherwise space separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&v| v <= 9) {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(" "))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts "41352867" (one digit per entry) or "10 2 1 ..." (whitespace or comma separated).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Precondition(format!("cannot read a permutation from {s:?}"));
        let values: Vec<usize> = if s.contains(|c: char| c.is_whitespace() || c == ',') {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn flatten_examples() {
        assert_eq!(flatten(&[3, 5, 1]).unwrap(), p("231"));
        assert_eq!(flatten(&[1, 2, 3, 4, 5, 6]).unwrap(), Permutation::identity(6));
        assert_eq!(flatten(&[4, 1, 3, 5, 2]).unwrap(), p("41352"));
        assert_eq!(flatten(&[0.5, -1.0, 7.25]).unwrap(), p("213"));
    }

    #[test]
    fn flatten_rejects_duplicates() {
        let err = flatten(&[3, 1, 3]).unwrap_err();
        assert!(matches!(err, Error::DuplicateKey { first: 1, second: 3, .. }), "{err}");
    }

    #[test]
    fn symmetries() {
        assert_eq!(p("12").reverse(), p("21"));
        assert_eq!(p("132").complement(), p("312"));
        let q = p("41352867");
        assert_eq!(q.inverse(), p("25314786"));
        assert_eq!(q.inverse().inverse(), q);
        assert_eq!(Permutation::default().inverse(), Permutation::default());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![2, 3]).is_err());
        assert!(Permutation::new(vec![]).is_ok());
    }

    #[test]
    fn lexicographic_listing() {
        let all: Vec<String> = all_permutations(3).map(|q| q.to_string()).collect();
        assert_eq!(all, ["123", "132", "213", "231", "312", "321"]);
        assert_eq!(all_permutations(0).count(), 1);
        assert_eq!(all_permutations(5).count(), 120);
    }

    #[test]
    fn delete_position_flattens() {
        assert_eq!(p("42513").delete_position(2), p("3412"));
        assert_eq!(p("3142").delete_position(3), p("312"));
    }

    #[test]
    fn display_and_parse() {
        let big = Permutation::new((1..=11).rev().collect()).unwrap();
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
        assert_eq!(p("1,3,2"), p("132"));
    }
}
