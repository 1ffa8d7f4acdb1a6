//! Numeric types that can carry belief masses.
//!
//! Every rule in this crate is written against [`Scalar`], so the same code
//! runs on `f32`, `f64`, and exact [`BigRational`] arithmetic. The exact
//! instantiation is what the test suite uses to check identities that only
//! hold up to rounding in floating point.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// A mass value type.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// `true` when arithmetic is exact (no rounding).
    const EXACT: bool;

    /// Parses a plain decimal literal such as `"0.25"`, `"1"` or `"-3.5e-2"`.
    fn from_decimal(text: &str) -> Option<Self>;

    /// Converts a tolerance given in `f64` into this type.
    fn tolerance(eps: f64) -> Self {
        Self::from_f64(eps).expect("tolerance must be finite")
    }

    /// Lossy view used for reporting.
    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        (self.clone() - other.clone()).abs() <= Self::tolerance(eps)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_decimal(text: &str) -> Option<Self> {
        text.trim().parse::<f64>().ok().filter(|v| v.is_finite())
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_decimal(text: &str) -> Option<Self> {
        text.trim().parse::<f32>().ok().filter(|v| v.is_finite())
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_decimal(text: &str) -> Option<Self> {
        parse_decimal_exact(text.trim())
    }
}

/// Sums an iterator of scalars left to right.
pub fn sum<'a, T: Scalar>(values: impl IntoIterator<Item = &'a T>) -> T {
    values.into_iter().fold(T::zero(), |acc, v| acc + v.clone())
}

fn parse_decimal_exact(text: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer = BigInt::parse_bytes(all_digits.as_bytes(), 10)?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - i32::try_from(frac_part.len()).ok()?;
    let ten = BigInt::from(10u8);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    if value.is_zero() {
        Some(BigRational::zero())
    } else {
        Some(value)
    }
}
