//! Named pattern sets used by the experiments, in pattern-DSL text form.

use distpat::{DistantPattern, Permutation};

use crate::error::Result;

pub const FAR_INVERSION: &str = "2 #1 1";
pub const SPACED_ASCENT: &str = "1 #1 2";

/// `{□132, 132□, 1342}`.
pub const KUSZMAUL6: &[&str] = &["#1 1 3 2", "1 3 2 #1", "1 3 4 2"];
pub const KUSZMAUL6_CLASSICAL: &[&str] = &["2431", "2143", "3142", "4132", "1432", "1342", "1324", "1423", "1243"];

/// `{13□2, 1324, 2431, 3142, 4132}`.
pub const KUSZMAUL5: &[&str] = &["1 3 #1 2", "1324", "2431", "3142", "4132"];
pub const KUSZMAUL5_CLASSICAL: &[&str] = &["2431", "2413", "3142", "4132", "1432", "1342", "1324", "1423"];

/// The three Wilf classes of three-letter patterns with one tight and one free gap.
pub const VINCULAR_CLASSES: [[&str; 4]; 3] = [
    ["1 =0 2 #1 3", "3 =0 2 #1 1", "1 #1 2 =0 3", "3 #1 2 =0 1"],
    ["1 #1 3 =0 2", "2 =0 1 #1 3", "2 =0 3 #1 1", "3 #1 1 =0 2"],
    ["1 =0 3 #1 2", "3 =0 1 #1 2", "2 #1 3 =0 1", "2 #1 1 =0 3"],
];

/// Gap shapes built from 123 and from 132; each X entry is compared to the Y entry below it.
pub const VENN_X: [&str; 4] = ["1 #1 2 =0 3", "1 =0 2 #1 3", "1 #1 2 #1 3", "1 =0 2 =0 3"];
pub const VENN_Y: [&str; 4] = ["1 #1 3 =0 2", "1 =0 3 #1 2", "1 #1 3 #1 2", "1 =0 3 =0 2"];

/// The Wilf class {1234, 1243, 2143} with one free gap inserted at each of the three places.
pub const SQUARE_PLACEMENTS: [[&str; 3]; 3] = [
    ["1 #1 2 3 4", "1 #1 2 4 3", "2 #1 1 4 3"],
    ["1 2 #1 3 4", "1 2 #1 4 3", "2 1 #1 4 3"],
    ["1 2 3 #1 4", "1 2 4 #1 3", "2 1 4 #1 3"],
];

pub fn patterns(texts: &[&str]) -> Result<Vec<DistantPattern>> {
    texts.iter().map(|t| Ok(t.parse::<DistantPattern>()?)).collect()
}

pub fn pattern(text: &str) -> Result<DistantPattern> {
    Ok(text.parse()?)
}

/// `12⋯k`.
pub fn increasing(k: usize) -> Permutation {
    Permutation::identity(k)
}

/// `12⋯(k−2) k (k−1)`.
pub fn near_increasing(k: usize) -> Permutation {
    let mut v: Vec<usize> = (1..=k).collect();
    if k >= 2 {
        v.swap(k - 2, k - 1);
    }
    Permutation::new(v).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn everything_parses() {
        for set in [KUSZMAUL6, KUSZMAUL6_CLASSICAL, KUSZMAUL5, KUSZMAUL5_CLASSICAL, &VENN_X[..], &VENN_Y[..]] {
            patterns(set).unwrap();
        }
        for c in &VINCULAR_CLASSES {
            patterns(c).unwrap();
        }
        for c in &SQUARE_PLACEMENTS {
            patterns(c).unwrap();
        }
        assert_eq!(near_increasing(3).to_string(), "132");
        assert_eq!(near_increasing(4).to_string(), "1243");
    }
}
