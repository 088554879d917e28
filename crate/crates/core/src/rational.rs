//! Exact rational scalars.
//!
//! [`Rational`] is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator. Text form is `"p/q"` or a plain integer.

use alloc::string::String;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn parse(text: &str) -> Result<Rational> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let bad = || Error::Invalid(alloc::format!("not a rational: {text:?}"));
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn floor_i64(x: &Rational) -> i64 {
    x.floor().to_integer().to_i64().expect("floor out of i64 range")
}

pub fn ceil_i64(x: &Rational) -> i64 {
    x.ceil().to_integer().to_i64().expect("ceil out of i64 range")
}

/// `x - floor(x)`, in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// The integer value of `x`, if it is one and fits.
pub fn as_i64(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// Decimal rendering rounded half away from zero. Display only.
pub fn to_decimal(x: &Rational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = x.abs() * Rational::from_integer(scale.clone());
    let rounded = (scaled + ratio(1, 2)).floor().to_integer();
    let (whole, rest) = rounded.div_rem(&scale);
    let mut out = String::new();
    if x.is_negative() && !rounded.is_zero() {
        out.push('-');
    }
    out.push_str(&alloc::format!("{whole}"));
    if places > 0 {
        let digits = alloc::format!("{rest}");
        out.push('.');
        for _ in digits.len()..places {
            out.push('0');
        }
        out.push_str(&digits);
    }
    out
}
