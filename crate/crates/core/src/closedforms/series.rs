//! Truncated power series with exact integer coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Coefficients of `x^0 ..= x^N`. Arithmetic never reads or produces terms past `N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeriesTable {
    coeffs: Vec<BigInt>,
}

impl SeriesTable {
    pub fn zero(truncation: usize) -> Self {
        SeriesTable { coeffs: vec![BigInt::zero(); truncation + 1] }
    }

    pub fn one(truncation: usize) -> Self {
        Self::monomial(truncation, 0, 1)
    }

    /// `c·x^power`, or zero when `power > truncation`.
    pub fn monomial(truncation: usize, power: usize, c: i64) -> Self {
        let mut s = Self::zero(truncation);
        if power <= truncation {
            s.coeffs[power] = BigInt::from(c);
        }
        s
    }

    /// Takes the first `truncation + 1` values, padding with zeros.
    pub fn from_coeffs<T: Into<BigInt>>(truncation: usize, values: impl IntoIterator<Item = T>) -> Self {
        let mut s = Self::zero(truncation);
        for (slot, v) in s.coeffs.iter_mut().zip(values) {
            *slot = v.into();
        }
        s
    }

    /// Polynomial from `(power, coefficient)` terms.
    pub fn polynomial(truncation: usize, terms: &[(usize, i64)]) -> Self {
        let mut s = Self::zero(truncation);
        for &(p, c) in terms {
            if p <= truncation {
                s.coeffs[p] += c;
            }
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, power: usize) -> &BigInt {
        &self.coeffs[power]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, power: usize, value: impl Into<BigInt>) {
        self.coeffs[power] = value.into();
    }

    fn same_truncation(&self, other: &Self) -> Result<()> {
        if self.truncation() != other.truncation() {
            return Err(Error::TruncationMismatch { left: self.truncation(), right: other.truncation() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_truncation(other)?;
        Ok(SeriesTable { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_truncation(other)?;
        Ok(SeriesTable { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    /// Cauchy product truncated at `N`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_truncation(other)?;
        let n = self.truncation();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        Ok(out)
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.truncation();
        let mut out = Self::zero(n);
        for i in k..=n {
            out.coeffs[i] = self.coeffs[i - k].clone();
        }
        out
    }

    pub fn scale(&self, c: i64) -> Self {
        SeriesTable { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }
}

impl fmt::Display for SeriesTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] + O(x^{})", parts.join(", "), self.truncation() + 1)
    }
}

/// The operations exposed for combining tables by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Multiply,
    Shift(usize),
}

/// Folds `operands` left to right with `op`; `Shift` applies to the single operand.
pub fn series_arith(op: SeriesOp, operands: &[&SeriesTable]) -> Result<SeriesTable> {
    let (first, rest) = operands
        .split_first()
        .ok_or_else(|| Error::Precondition("series_arith needs at least one operand".into()))?;
    match op {
        SeriesOp::Shift(k) => {
            if !rest.is_empty() {
                return Err(Error::Precondition("shift takes exactly one operand".into()));
            }
            Ok(first.shift(k))
        }
        SeriesOp::Add => rest.iter().try_fold((*first).clone(), |acc, s| acc.add(s)),
        SeriesOp::Multiply => rest.iter().try_fold((*first).clone(), |acc, s| acc.mul(s)),
    }
}

/// Catalan numbers `1, 1, 2, 5, 14, …` up to `x^N`.
pub fn catalan_series(truncation: usize) -> SeriesTable {
    let mut c: Vec<BigInt> = Vec::with_capacity(truncation + 1);
    c.push(BigInt::one());
    for n in 1..=truncation {
        let next = (0..n).map(|i| &c[i] * &c[n - 1 - i]).sum();
        c.push(next);
    }
    SeriesTable { coeffs: c }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &SeriesTable) -> Vec<i64> {
        s.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn catalan_values_and_functional_equation() {
        let c = catalan_series(12);
        assert_eq!(ints(&c)[..7], [1, 1, 2, 5, 14, 42, 132]);
        assert_eq!(c.coeff(0), &BigInt::from(1));
        assert_eq!(c.coeff(4), &BigInt::from(14));
        let rhs = SeriesTable::one(12).add(&c.mul(&c).unwrap().shift(1)).unwrap();
        assert_eq!(rhs, c);
    }

    #[test]
    fn arithmetic_examples() {
        let c = catalan_series(8);
        let sum = series_arith(SeriesOp::Add, &[&c, &c.shift(3)]).unwrap();
        assert_eq!(sum.coeff(3), &BigInt::from(6));
        let one = SeriesTable::one(8);
        assert_eq!(series_arith(SeriesOp::Multiply, &[&one, &c]).unwrap(), c);
        assert_eq!(series_arith(SeriesOp::Shift(3), &[&c]).unwrap().coeff(3), &BigInt::from(1));
        assert_eq!(c.sub(&c).unwrap(), SeriesTable::zero(8));
    }

    #[test]
    fn truncation_mismatch_is_rejected() {
        let a = catalan_series(4);
        let b = catalan_series(5);
        assert!(matches!(a.add(&b), Err(Error::TruncationMismatch { left: 4, right: 5 })));
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn shift_past_truncation_vanishes() {
        let c = catalan_series(3);
        assert_eq!(c.shift(4), SeriesTable::zero(3));
        assert_eq!(SeriesTable::monomial(3, 5, 7), SeriesTable::zero(3));
    }
}
