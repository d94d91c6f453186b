//! Gap-constrained ("distant") permutation patterns.
//!
//! A distant pattern is a classical pattern with a lower bound (or, when tight,
//! an exact size) on the number of host letters between consecutive letters and
//! around the pattern. This crate matches such patterns, enumerates their
//! avoiders, and evaluates the exact counting identities known for them.

pub mod bijections;
pub mod closedforms;
pub mod enumerate;
pub mod error;
pub mod expand;
pub mod matcher;
pub mod permcore;

pub use enumerate::{count_avoiders, list_avoiders, CountTable, Enumerator, Limits, PrefixQuery};
pub use error::{Error, Result};
pub use matcher::{avoids, avoids_all, occurrences};
pub use permcore::{parse_pattern, render_pattern, DistantPattern, GapConstraint, OccurrenceWitness, Permutation};
