//! Exact recurrences, sums and generating-function identities.

mod series;

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::enumerate::Enumerator;
use crate::error::{Error, Result};
use crate::matcher::CompiledPattern;
use crate::permcore::{DistantPattern, Permutation};

pub use series::{catalan_series, series_arith, SeriesOp, SeriesTable};

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `F_1 = F_2 = 1`. `F_0 = 0` is accepted as well.
pub fn fibonacci(n: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// `n + Σ_{k=1}^{n-3} (n - (k+2) F_{n-k-1}) · k · k!`, which equals `F_{n+1}` for `n ≥ 3`.
pub fn fib_distant_recurrence(n: usize) -> BigInt {
    let mut total = BigInt::from(n);
    for k in 1..=n.saturating_sub(3) {
        let inner = BigInt::from(n) - BigInt::from(k + 2) * BigInt::from(fibonacci(n - (k + 1)));
        total += inner * k * BigInt::from(factorial(k));
    }
    total
}

/// `Σ_{k≥0} C(2n-2k, n-1-2k) C(n-k, k) / (n-k)`, the number of avoiders of `12□3`.
pub fn firro_count(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Precondition("firro_count needs n ≥ 1".into()));
    }
    let mut total = BigRational::zero();
    let mut k = 0;
    while 2 * k < n {
        let num = binomial(2 * n - 2 * k, n - 1 - 2 * k) * binomial(n - k, k);
        total += BigRational::new(BigInt::from(num), BigInt::from(n - k));
        k += 1;
    }
    if !total.is_integer() {
        return Err(Error::Disagreement(format!("firro_count({n}) is not integral: {total}")));
    }
    Ok(total.to_integer().magnitude().clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceTrace {
    pub name: String,
    /// Initial values the recurrence starts from.
    pub basis: Vec<(usize, BigUint)>,
    /// `(n, value)` for `0 ..= n_max`, basis included.
    pub values: Vec<(usize, BigUint)>,
}

impl RecurrenceTrace {
    pub fn value(&self, n: usize) -> Option<&BigUint> {
        self.values.get(n).map(|(_, v)| v)
    }

    pub fn as_u64(&self) -> Vec<u64> {
        self.values.iter().map(|(_, v)| v.to_u64().expect("fits in u64")).collect()
    }
}

/// Shared skeleton of the two vincular recurrences; `tail(n, v)` is the sum term.
fn vincular_trace(name: &str, n_max: usize, tail: impl Fn(usize, &[BigUint]) -> BigUint) -> RecurrenceTrace {
    let mut v: Vec<BigUint> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n <= 3 {
            v.push(factorial(n));
            continue;
        }
        let mut x = v[n - 1].clone() + &v[n - 2] * (n - 1) + &v[n - 3] * ((n + 1) * (n - 2) / 2);
        x += tail(n, &v);
        x += n - 1;
        v.push(x);
    }
    RecurrenceTrace {
        name: name.to_string(),
        basis: (0..=3.min(n_max)).map(|i| (i, factorial(i))).collect(),
        values: v.into_iter().enumerate().collect(),
    }
}

/// Avoiders of the vincular pattern `12̲□3` (`1 =0 2 #1 3`).
pub fn vinc_12sq3_recurrence(n_max: usize) -> RecurrenceTrace {
    vincular_trace("12sq3", n_max, |n, a| {
        (4..n).map(|i| (binomial(n, i - 1) - 1u32) * &a[n - i]).sum()
    })
}

/// Avoiders of the vincular pattern `1□32̲` (`1 #1 3 =0 2`).
pub fn vinc_1sq32_recurrence(n_max: usize) -> RecurrenceTrace {
    vincular_trace("1sq32", n_max, |n, b| {
        (2..=n.saturating_sub(3)).map(|i| (binomial(n - 2, i) * i + binomial(n - 1, i - 1)) * &b[i - 1]).sum()
    })
}

/// The same sequence as [`vinc_1sq32_recurrence`] with the sum re-indexed by `j = n - i + 1`.
pub fn vinc_1sq32_reindexed(n_max: usize) -> RecurrenceTrace {
    vincular_trace("1sq32-reindexed", n_max, |n, b| {
        (4..n).map(|j| (binomial(n - 2, j - 3) * (n - j + 1) + binomial(n - 1, j - 1)) * &b[n - j]).sum()
    })
}

/// Avoiders of the all-tight `dist_r(q)`, built from the avoider counts of the
/// contiguous pattern `q` at sizes `l = ⌊n/(r+1)⌋` and `l + 1`.
pub fn consecutive_dist_count(n: usize, r: usize, q: &Permutation, base: &BTreeMap<usize, BigUint>) -> Result<BigUint> {
    if q.is_empty() {
        return Err(Error::Precondition("empty pattern".into()));
    }
    let classes = r + 1;
    let l = n / classes;
    let u = n % classes;
    let lookup = |size: usize| base.get(&size).ok_or(Error::MissingBase(size));
    let small = lookup(l)?;
    let mut out = factorial(n) / (factorial(l).pow((classes - u) as u32) * factorial(l + 1).pow(u as u32));
    out *= small.pow((classes - u) as u32);
    if u > 0 {
        out *= lookup(l + 1)?.pow(u as u32);
    }
    Ok(out)
}

/// Avoider counts of the contiguous pattern `q` for sizes `0 ..= n_max`.
pub fn consecutive_base(q: &Permutation, n_max: usize, engine: &Enumerator) -> Result<BTreeMap<usize, BigUint>> {
    let p = DistantPattern::consecutive(q.clone(), 0)?;
    let ps = [p];
    (0..=n_max).map(|n| Ok((n, BigUint::from(engine.count(n, &ps)?)))).collect()
}

/// Right-hand side of `G = 1 + G(xH₁ + xH₂ + x³H₁) + G²(x − 2x² − x³ − x⁴)`.
pub fn eq9_rhs(g: &SeriesTable, h1: &SeriesTable, h2: &SeriesTable) -> Result<SeriesTable> {
    let n = g.truncation();
    let linear = h1.shift(1).add(&h2.shift(1))?.add(&h1.shift(3))?;
    let poly = SeriesTable::polynomial(n, &[(1, 1), (2, -2), (3, -1), (4, -1)]);
    let quad = g.mul(g)?.mul(&poly)?;
    SeriesTable::one(n).add(&g.mul(&linear)?)?.add(&quad)
}

/// Checks the functional equation coefficient-wise up to `x^N`.
pub fn verify_eq9(truncation: usize, g: &SeriesTable, h1: &SeriesTable, h2: &SeriesTable) -> Result<bool> {
    for s in [g, h1, h2] {
        if s.truncation() != truncation {
            return Err(Error::TruncationMismatch { left: truncation, right: s.truncation() });
        }
    }
    Ok(eq9_rhs(g, h1, h2)? == *g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Eq9Tables {
    pub g: SeriesTable,
    pub h1: SeriesTable,
    pub h2: SeriesTable,
}

/// `G`, `H₁`, `H₂` from listing `Av_n(1□3□2)` for `n ≤ N`.
///
/// `H₁` keeps avoiders with no `1□32̲` occurrence ending at the last position,
/// `H₂` those with no `1̲3□2` occurrence starting at the first position.
pub fn eq9_oracle_tables(truncation: usize, engine: &Enumerator) -> Result<Eq9Tables> {
    let base: DistantPattern = "1 #1 3 #1 2".parse()?;
    let end_anchored = CompiledPattern::new(&"1 #1 3 =0 2".parse()?);
    let start_anchored = CompiledPattern::new(&"1 =0 3 #1 2".parse()?);
    let (mut g, mut h1, mut h2) = (Vec::new(), Vec::new(), Vec::new());
    for n in 0..=truncation {
        let avoiders = engine.list(n, std::slice::from_ref(&base))?;
        g.push(avoiders.len() as u64);
        let mut c1 = 0u64;
        let mut c2 = 0u64;
        // The empty permutation belongs to neither subclass.
        for p in avoiders.iter().filter(|p| !p.is_empty()) {
            let host = p.values();
            if !end_anchored.occurs_ending_at(host, n - 1, n) {
                c1 += 1;
            }
            let starts_at_one = !start_anchored.for_each_occurrence(host, |pos| pos[0] != 0);
            if !starts_at_one {
                c2 += 1;
            }
        }
        h1.push(c1);
        h2.push(c2);
    }
    Ok(Eq9Tables {
        g: SeriesTable::from_coeffs(truncation, g),
        h1: SeriesTable::from_coeffs(truncation, h1),
        h2: SeriesTable::from_coeffs(truncation, h2),
    })
}

/// `C + x³C`, the avoider series of `{□132, 132□, 1342}` from `n = 4` on.
pub fn kuszmaul6_series(truncation: usize) -> SeriesTable {
    let c = catalan_series(truncation);
    c.add(&c.shift(3)).expect("same truncation")
}

/// `C(1 + x³C)`, the avoider series of `{13□2, 1324, 2431, 3142, 4132}` for `n ≥ 1`.
pub fn kuszmaul5_series(truncation: usize) -> SeriesTable {
    let c = catalan_series(truncation);
    let inner = SeriesTable::one(truncation).add(&c.shift(3)).expect("same truncation");
    c.mul(&inner).expect("same truncation")
}

/// Whether `count < (1 - 1/k!)^{r+1} · n!`, compared exactly as
/// `count · (k!)^{r+1} < (k! - 1)^{r+1} · n!`.
pub fn dist_upper_bound_holds(count: &BigUint, n: usize, k: usize, r: usize) -> bool {
    let kf = factorial(k);
    let e = (r + 1) as u32;
    count * kf.pow(e) < (kf - 1u32).pow(e) * factorial(n)
}

/// `((r-1)!)^{⌊n/r⌋}`, a lower bound on `|Av_n(1□^r2)|`.
pub fn spread_lower_bound(n: usize, r: usize) -> Result<BigUint> {
    if r == 0 {
        return Err(Error::Precondition("spread bound needs r ≥ 1".into()));
    }
    Ok(factorial(r - 1).pow((n / r) as u32))
}

/// `count^{1/n}` as a float.
pub fn nth_root(count: &BigUint, n: usize) -> f64 {
    if n == 0 || count.is_zero() {
        return 0.0;
    }
    let bits = count.bits();
    // Scale down large values so the float conversion stays finite.
    let shift = bits.saturating_sub(1000);
    let mantissa = (count >> shift).to_f64().unwrap_or(f64::MAX);
    ((mantissa.ln() + shift as f64 * std::f64::consts::LN_2) / n as f64).exp()
}

/// Ratio `count / n!` in lowest terms.
pub fn ratio_to_factorial(count: &BigUint, n: usize) -> BigRational {
    BigRational::new(BigInt::from(count.clone()), BigInt::from(factorial(n)))
}

/// `Σ_{j=3}^{n-1} (j-2)(n-j)(n-j)!`: the number of 1□2-containers hit twice by the insertion map.
pub fn double_preimage_sum(n: usize) -> BigUint {
    (3..n).map(|j| factorial(n - j) * ((j - 2) * (n - j))).sum()
}

/// `Σ_{k=3}^{n-2} (F_{n-k+1} - 1) k (k-2) (k-2)!`: the number of 1□2-containers the insertion map misses.
pub fn missed_image_sum(n: usize) -> BigUint {
    (3..=n.saturating_sub(2)).map(|k| (fibonacci(n - k + 1) - 1u32) * factorial(k - 2) * (k * (k - 2))).sum()
}

/// Both sides of `(n! − F_{n+1}) − missed = (n! − n) − double`, signed.
pub fn inclusion_exclusion_sides(n: usize) -> (BigInt, BigInt) {
    let nf = BigInt::from(factorial(n));
    let left = &nf - BigInt::from(fibonacci(n + 1)) - BigInt::from(missed_image_sum(n));
    let right = nf - BigInt::from(n) - BigInt::from(double_preimage_sum(n));
    (left, right)
}
