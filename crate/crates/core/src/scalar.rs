//! Coefficient fields.
//!
//! Everything in this crate is generic over a [`Scalar`], a field with a
//! conversion from exact rationals. The acceptance checks are exact-zero
//! tests, so [`crate::Rational`] is the type to use in practice; the float
//! implementation exists for quick exploratory runs and is only as trustworthy
//! as its tolerance.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

pub trait Scalar:
    Num + Clone + Debug + Display + PartialEq + Signed + FromPrimitive + Send + Sync + 'static
{
    /// Exact embedding of a rational number.
    fn from_rational(q: &BigRational) -> Self;

    /// Whether this coefficient should be dropped from a sparse container.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every scalar type embeds i64")
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }
}

impl Scalar for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
}

impl Scalar for Rational64 {
    fn from_rational(q: &BigRational) -> Self {
        let n = q.numer().to_i64().expect("numerator overflows i64");
        let d = q.denom().to_i64().expect("denominator overflows i64");
        Rational64::new(n, d)
    }
}

impl Scalar for f64 {
    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn is_negligible(&self) -> bool {
        self.abs() < 1e-10
    }
}

/// Parses `"p/q"` or `"p"` into an exact rational. Whitespace is ignored.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// n! as a scalar.
pub fn factorial<S: Scalar>(n: usize) -> S {
    (1..=n).fold(S::one(), |acc, k| acc * S::from_int(k as i64))
}

/// Product of factorials of the entries of a multi-index.
pub fn multi_factorial<S: Scalar>(alpha: &[u8]) -> S {
    alpha
        .iter()
        .fold(S::one(), |acc, &a| acc * factorial::<S>(a as usize))
}

/// Binomial coefficient as an integer; small arguments only.
pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn parses_rationals() {
        assert_eq!(
            parse_rational("-3/6"),
            Some(BigRational::new((-1).into(), 2.into()))
        );
        assert_eq!(parse_rational(" 7 "), Some(BigRational::from_integer(7.into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn display_is_reduced() {
        let q = parse_rational("4/-6").unwrap();
        assert_eq!(q.to_string(), "-2/3");
        assert_eq!(parse_rational("4/2").unwrap().to_string(), "2");
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial::<BigRational>(5), BigRational::from_integer(120.into()));
        assert_eq!(multi_factorial::<f64>(&[2, 3, 0]), 12.0);
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(2, 3), 0);
    }

    #[test]
    fn float_tolerance() {
        assert!(1e-13f64.is_negligible());
        assert!(!<BigRational as Scalar>::is_negligible(&BigRational::one()));
    }
}
