use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Parses the `RAT` grammar: optional sign, decimal integer, optional
/// `/` followed by a positive integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(text.to_string());
    let s = text.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix(['+', '-']).unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let num: BigInt = num.strip_prefix('+').unwrap_or(num).parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn rational_floor(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub fn rational_ceil(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}
