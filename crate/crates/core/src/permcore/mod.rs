//! Core domain types: permutations, the flatten operator, distant patterns,
//! their symmetries, and the pattern text form.

pub mod dsl;
pub mod pattern;
pub mod perm;

pub use dsl::{parse_pattern, parse_pattern_set, render_pattern, ParseError, ParseErrorKind};
pub use pattern::{make_uniform, pattern_symmetry, DistantPattern, GapConstraint};
pub use perm::{all_permutations, flatten, Permutation, Symmetry};

/// Strictly increasing 1-based host positions certifying an occurrence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OccurrenceWitness {
    pub positions: Vec<usize>,
}

impl OccurrenceWitness {
    pub fn first(&self) -> usize {
        self.positions[0]
    }

    pub fn last(&self) -> usize {
        *self.positions.last().expect("witness is non-empty")
    }

    /// Host values at the witness positions.
    pub fn values(&self, host: &Permutation) -> Vec<usize> {
        self.positions.iter().map(|&i| host.at(i)).collect()
    }
}
