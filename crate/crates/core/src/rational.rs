//! Exact-rational string conversions shared by reports and file formats.

use std::str::FromStr;

use num::{pow::Pow, ToPrimitive};

use crate::error::{FcaError, Result};

pub use num::bigint::BigInt;
pub use num::rational::BigRational;
pub use num::{One, Zero};

/// Canonical fraction form `p/q`, always with an explicit denominator
/// (`1/1`, `2/5`, `0/1`, …), so report values are unambiguous.
pub fn rational_str(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Nearest floating-point approximation, for optional display only.
pub fn rational_to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Parses a decimal literal (`"3"`, `"-34.5"`, `"1.2e-3"`) into an exact
/// rational.
pub fn parse_decimal(text: &str) -> Result<BigRational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(FcaError::parse("empty number".to_string()));
    }
    let err = || FcaError::parse(format!("invalid number {text:?}"));

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = s[pos + 1..].parse().map_err(|_| err())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.find('.') {
        Some(pos) => (&digits[..pos], &digits[pos + 1..]),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    let joined = format!("{int_part}{frac_part}");
    let unscaled =
        BigInt::from_str(if joined.is_empty() { "0" } else { &joined }).map_err(|_| err())?;
    let ten = BigInt::from(10);
    let scale = exponent - frac_part.len() as i64;
    let value = if scale >= 0 {
        BigRational::from_integer(unscaled * ten.pow(scale as u64))
    } else {
        BigRational::new(unscaled, ten.pow((-scale) as u64))
    };
    Ok(if sign < 0 { -value } else { value })
}

/// Parses `p/q` fractions, integers, and decimal literals into an exact
/// rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    if let Some(pos) = s.find('/') {
        let numer = BigInt::from_str(s[..pos].trim())
            .map_err(|_| FcaError::parse(format!("invalid fraction {text:?}")))?;
        let denom = BigInt::from_str(s[pos + 1..].trim())
            .map_err(|_| FcaError::parse(format!("invalid fraction {text:?}")))?;
        if denom.is_zero() {
            return Err(FcaError::parse(format!(
                "zero denominator in fraction {text:?}"
            )));
        }
        return Ok(BigRational::new(numer, denom));
    }
    parse_decimal(s)
}

/// Shorthand for building small rationals in code: `ratio(2, 5)` is `2/5`.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand for whole-number rationals.
pub fn whole(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
