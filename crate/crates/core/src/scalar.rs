//! Numeric modes for probability computations.
//!
//! Two interchangeable scalar types back every exact computation:
//! `f64` (fast, scales to long horizons) and [`BigRational`] (exact, the
//! correctness oracle for short horizons). Algorithms are generic over
//! [`Scalar`] so both modes share one code path and can be diffed
//! against each other.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Which scalar backs a computation. Carried through reports for provenance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NumericMode {
    Float64,
    Rational,
}

impl NumericMode {
    pub fn as_str(self) -> &'static str {
        match self {
            NumericMode::Float64 => "float64",
            NumericMode::Rational => "rational",
        }
    }
}

impl std::str::FromStr for NumericMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "float" | "float64" | "f64" => Ok(NumericMode::Float64),
            "rational" | "exact" => Ok(NumericMode::Rational),
            other => Err(format!("unknown numeric mode `{other}`")),
        }
    }
}

/// Probability-valued scalar: `f64` or exact rational.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    const MODE: NumericMode;

    fn zero() -> Self;
    fn one() -> Self;
    /// The fraction `num/den`.
    fn ratio(num: u64, den: u64) -> Self;
    fn to_f64(&self) -> f64;
    fn is_zero(&self) -> bool;

    /// `Π (1 - num_i/den_i)` over the given terms. Every `num_i < den_i`
    /// must hold (callers validate); the empty product is 1.
    ///
    /// The float implementation accumulates in log space via `log1p` so
    /// long survival products do not underflow.
    fn product_complements<I: Iterator<Item = (u64, u64)>>(terms: I) -> Self {
        let mut acc = Self::one();
        for (num, den) in terms {
            acc = acc * (Self::one() - Self::ratio(num, den));
        }
        acc
    }
}

impl Scalar for f64 {
    const MODE: NumericMode = NumericMode::Float64;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn product_complements<I: Iterator<Item = (u64, u64)>>(terms: I) -> Self {
        let mut log_sum = 0.0f64;
        for (num, den) in terms {
            if num == 0 {
                continue;
            }
            log_sum += (-(num as f64) / den as f64).ln_1p();
        }
        log_sum.exp()
    }
}

impl Scalar for BigRational {
    const MODE: NumericMode = NumericMode::Rational;

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn ratio(num: u64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Relative agreement check used when diffing float against rational
/// results or the two exact routes in float mode.
pub fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        return true;
    }
    (a - b).abs() <= rel * scale
}

/// True when the value is a sane probability for its mode: exact bounds
/// in rational, `1e-12` slack in float.
pub fn valid_probability<S: Scalar>(value: &S) -> bool {
    match S::MODE {
        NumericMode::Rational => *value >= S::zero() && *value <= S::one(),
        NumericMode::Float64 => {
            let v = value.to_f64();
            (-1e-12..=1.0 + 1e-12).contains(&v)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_values() {
        assert_eq!(<f64 as Scalar>::ratio(2, 3), 2.0 / 3.0);
        let r = <BigRational as Scalar>::ratio(2, 4);
        assert_eq!(r, <BigRational as Scalar>::ratio(1, 2));
    }

    #[test]
    fn product_complements_matches_naive() {
        let terms = [(1u64, 3u64), (2, 5), (3, 7)];
        let expect = (1.0 - 1.0 / 3.0) * (1.0 - 2.0 / 5.0) * (1.0 - 3.0 / 7.0);
        let got = <f64 as Scalar>::product_complements(terms.iter().copied());
        assert!((got - expect).abs() < 1e-15);

        let exact = <BigRational as Scalar>::product_complements(terms.iter().copied());
        assert_eq!(exact, <BigRational as Scalar>::ratio(2 * 3 * 4, 3 * 5 * 7));
    }

    #[test]
    fn empty_product_is_one() {
        let got = <f64 as Scalar>::product_complements(std::iter::empty());
        assert_eq!(got, 1.0);
    }
}
