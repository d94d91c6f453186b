//! Distant patterns: a letter word plus one gap constraint per gap.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::perm::{Permutation, Symmetry};
use crate::error::{Error, Result};

/// Constraint on the number of host letters interleaved in one gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct GapConstraint {
    pub min_gap: usize,
    /// When set the gap holds exactly `min_gap` letters.
    pub tight: bool,
}

impl GapConstraint {
    pub const FREE: GapConstraint = GapConstraint { min_gap: 0, tight: false };
    pub const ADJACENT: GapConstraint = GapConstraint { min_gap: 0, tight: true };

    pub fn at_least(min_gap: usize) -> Self {
        GapConstraint { min_gap, tight: false }
    }

    pub fn exactly(size: usize) -> Self {
        GapConstraint { min_gap: size, tight: true }
    }

    pub fn is_free(self) -> bool {
        self == Self::FREE
    }

    /// Whether `size` interleaved letters satisfy the constraint.
    #[inline]
    pub fn admits(self, size: usize) -> bool {
        if self.tight {
            size == self.min_gap
        } else {
            size >= self.min_gap
        }
    }
}

/// `□^{r0} q1 □^{r1} q2 … qk □^{rk}` with optional tight internal gaps.
///
/// `gaps[0]` precedes the first letter, `gaps[k]` follows the last one, and
/// `gaps[j]` for `1 ≤ j < k` sits between letters `j` and `j + 1`.
/// Boundary gaps are never tight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistantPattern {
    letters: Permutation,
    gaps: Vec<GapConstraint>,
}

impl DistantPattern {
    pub fn new(letters: Permutation, gaps: Vec<GapConstraint>) -> Result<Self> {
        let k = letters.len();
        if k == 0 {
            return Err(Error::Precondition("a pattern needs at least one letter".into()));
        }
        if gaps.len() != k + 1 {
            return Err(Error::Precondition(format!(
                "pattern with {k} letters needs {} gaps, got {}",
                k + 1,
                gaps.len()
            )));
        }
        if gaps[0].tight || gaps[k].tight {
            return Err(Error::Precondition("boundary gaps cannot be tight".into()));
        }
        Ok(DistantPattern { letters, gaps })
    }

    /// The classical pattern `q` (all gaps free).
    pub fn classical(letters: Permutation) -> Result<Self> {
        let k = letters.len();
        Self::new(letters, vec![GapConstraint::FREE; k + 1])
    }

    /// `dist_r(q)`: every internal gap at least `r`, boundaries free.
    pub fn uniform(letters: Permutation, r: usize) -> Result<Self> {
        Self::with_internal(letters, GapConstraint::at_least(r))
    }

    /// The consecutive distant pattern with every internal gap exactly `r`.
    pub fn consecutive(letters: Permutation, r: usize) -> Result<Self> {
        Self::with_internal(letters, GapConstraint::exactly(r))
    }

    fn with_internal(letters: Permutation, gap: GapConstraint) -> Result<Self> {
        let k = letters.len();
        let mut gaps = vec![gap; k + 1];
        if let Some(first) = gaps.first_mut() {
            *first = GapConstraint::FREE;
        }
        gaps[k] = GapConstraint::FREE;
        Self::new(letters, gaps)
    }

    pub fn letters(&self) -> &Permutation {
        &self.letters
    }

    pub fn gaps(&self) -> &[GapConstraint] {
        &self.gaps
    }

    pub fn size(&self) -> usize {
        self.letters.len()
    }

    pub fn leading_gap(&self) -> usize {
        self.gaps[0].min_gap
    }

    pub fn trailing_gap(&self) -> usize {
        self.gaps[self.size()].min_gap
    }

    /// Sum of every minimum gap, boundaries included.
    pub fn total_gap(&self) -> usize {
        self.gaps.iter().map(|g| g.min_gap).sum()
    }

    /// Fewest host letters that can hold an occurrence.
    pub fn footprint(&self) -> usize {
        self.size() + self.total_gap()
    }

    pub fn is_classical_dp(&self) -> bool {
        self.gaps.iter().all(|g| !g.tight)
    }

    /// Same pattern with both boundary gaps cleared.
    pub fn without_boundary(&self) -> Self {
        let mut gaps = self.gaps.clone();
        let k = self.size();
        gaps[0] = GapConstraint::FREE;
        gaps[k] = GapConstraint::FREE;
        DistantPattern { letters: self.letters.clone(), gaps }
    }

    /// Reverse reverses letters and gap order; complement complements letters.
    pub fn apply_symmetry(&self, op: Symmetry) -> Result<Self> {
        match op {
            Symmetry::Reverse => Ok(DistantPattern {
                letters: self.letters.reverse(),
                gaps: self.gaps.iter().rev().copied().collect(),
            }),
            Symmetry::Complement => Ok(DistantPattern {
                letters: self.letters.complement(),
                gaps: self.gaps.clone(),
            }),
            Symmetry::Inverse => Err(Error::UnsupportedSymmetry(op.name())),
        }
    }
}

impl fmt::Display for DistantPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::dsl::render_pattern(self))
    }
}

impl FromStr for DistantPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(super::dsl::parse_pattern(s)?)
    }
}

/// `dist_r(q)` for a non-empty `q`.
pub fn make_uniform(q: &Permutation, r: usize) -> Result<DistantPattern> {
    DistantPattern::uniform(q.clone(), r)
}

pub fn pattern_symmetry(p: &DistantPattern, op: Symmetry) -> Result<DistantPattern> {
    p.apply_symmetry(op)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp(s: &str) -> DistantPattern {
        s.parse().unwrap()
    }

    #[test]
    fn uniform_patterns() {
        let q: Permutation = "312".parse().unwrap();
        let d = make_uniform(&q, 3).unwrap();
        assert_eq!(d.to_string(), "3 #3 1 #3 2");
        assert_eq!(d.total_gap(), 6);
        assert_eq!(make_uniform(&q, 0).unwrap(), DistantPattern::classical(q).unwrap());
        assert_eq!(make_uniform(&"12".parse().unwrap(), 1).unwrap(), dp("1 #1 2"));
    }

    #[test]
    fn table_one_symmetries() {
        // 1□(23 adjacent) reversed is (32 adjacent)□1
        let p = dp("1 #1 2 =0 3");
        assert_eq!(p.apply_symmetry(Symmetry::Reverse).unwrap(), dp("3 =0 2 #1 1"));
        // 1□(32 adjacent) complemented is 3□(12 adjacent)
        let p = dp("1 #1 3 =0 2");
        assert_eq!(p.apply_symmetry(Symmetry::Complement).unwrap(), dp("3 #1 1 =0 2"));
        assert!(matches!(p.apply_symmetry(Symmetry::Inverse), Err(Error::UnsupportedSymmetry(_))));
    }

    #[test]
    fn symmetry_involutions() {
        for s in ["#2 1 #1 3 =0 2", "2 =1 1 #3", "1"] {
            let p = dp(s);
            for op in [Symmetry::Reverse, Symmetry::Complement] {
                assert_eq!(p.apply_symmetry(op).unwrap().apply_symmetry(op).unwrap(), p);
            }
        }
    }

    #[test]
    fn construction_checks() {
        let q: Permutation = "21".parse().unwrap();
        assert!(DistantPattern::new(q.clone(), vec![GapConstraint::FREE; 2]).is_err());
        assert!(DistantPattern::new(
            q.clone(),
            vec![GapConstraint::ADJACENT, GapConstraint::FREE, GapConstraint::FREE]
        )
        .is_err());
        assert!(DistantPattern::classical(Permutation::default()).is_err());
        assert_eq!(dp("#2 2 #1 1 #1").footprint(), 6);
    }
}
