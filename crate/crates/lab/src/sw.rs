//! Growth-rate tables: n-th roots of avoider counts, and the linear-gap family `1□^r2`.

use distpat::closedforms::{nth_root, ratio_to_factorial, spread_lower_bound};
use distpat::permcore::GapConstraint;
use distpat::{DistantPattern, Enumerator, Permutation};
use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::ToPrimitive;

use crate::error::Result;
use crate::range::SizeRange;

#[derive(Debug, Clone, PartialEq)]
pub struct RootRow {
    pub n: usize,
    pub count: u64,
    pub root: f64,
}

pub fn sw_root_estimate(ps: &[DistantPattern], sizes: SizeRange, engine: &Enumerator) -> Result<Vec<RootRow>> {
    sizes
        .iter()
        .filter(|&n| n >= 1)
        .map(|n| {
            let count = engine.count(n, ps)?;
            Ok(RootRow { n, count, root: nth_root(&BigUint::from(count), n) })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearGapRow {
    pub n: usize,
    pub r: usize,
    pub count: u64,
    /// `count / n!` as a decimal.
    pub ratio: f64,
    pub lower_bound: BigUint,
}

impl LinearGapRow {
    pub fn bound_holds(&self) -> bool {
        BigUint::from(self.count) >= self.lower_bound
    }
}

/// `1□^r2` with `r = ⌊c₁ n⌋`; sizes with `r = 0` are skipped.
pub fn linear_gap_rows(c1: Ratio<u64>, sizes: SizeRange, engine: &Enumerator) -> Result<Vec<LinearGapRow>> {
    let mut out = Vec::new();
    for n in sizes.iter() {
        let r = (c1 * Ratio::from_integer(n as u64)).to_integer() as usize;
        if r == 0 {
            continue;
        }
        let p = DistantPattern::new(
            Permutation::identity(2),
            vec![GapConstraint::FREE, GapConstraint::at_least(r), GapConstraint::FREE],
        )?;
        let count = engine.count(n, &[p])?;
        let ratio = ratio_to_factorial(&BigUint::from(count), n).to_f64().unwrap_or(f64::NAN);
        out.push(LinearGapRow { n, r, count, ratio, lower_bound: spread_lower_bound(n, r)? });
    }
    Ok(out)
}
