use std::fmt;
use std::str::FromStr;

use crate::error::LabError;

/// Inclusive size range written `7` or `3..11`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeRange {
    pub lo: usize,
    pub hi: usize,
}

impl SizeRange {
    pub fn new(lo: usize, hi: usize) -> Self {
        SizeRange { lo, hi }
    }

    pub fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl FromStr for SizeRange {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, LabError> {
        let bad = || LabError::Usage(format!("bad size range `{s}` (expected N or A..B)"));
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let r = match s.split_once("..") {
            Some((a, b)) => SizeRange { lo: parse(a)?, hi: parse(b.trim_start_matches('='))? },
            None => {
                let n = parse(s)?;
                SizeRange { lo: n, hi: n }
            }
        };
        if r.lo > r.hi {
            return Err(bad());
        }
        Ok(r)
    }
}

impl fmt::Display for SizeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_forms() {
        assert_eq!("7".parse::<SizeRange>().unwrap(), SizeRange::new(7, 7));
        assert_eq!("3..6".parse::<SizeRange>().unwrap(), SizeRange::new(3, 6));
        assert_eq!("3..=6".parse::<SizeRange>().unwrap(), SizeRange::new(3, 6));
        assert!("6..3".parse::<SizeRange>().is_err());
        assert!("x".parse::<SizeRange>().is_err());
        assert_eq!(SizeRange::new(3, 6).to_string(), "3..6");
    }
}
