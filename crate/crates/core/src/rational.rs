//! Exact rational helpers shared by every module.

use alloc::format;
use alloc::string::String;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Reduced fraction with positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn pow10(n: u64) -> BigInt {
    num_traits::pow(BigInt::from(10u8), n as usize)
}

pub fn floor(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub fn ceil(q: &Rational) -> BigInt {
    -((-q.numer()).div_floor(q.denom()))
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// Parses `p`, `-p`, `p/q` or a finite decimal `0.125`.
pub fn parse(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::SyntaxError { position: 0, message: format!("not an exact rational: {t:?}") };
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::OutOfRange(String::from("zero denominator")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let w =
            if whole_digits.is_empty() { BigInt::zero() } else { BigInt::from_str(whole_digits).map_err(|_| bad())? };
        let f = BigInt::from_str(frac).map_err(|_| bad())?;
        let scale = pow10(frac.len() as u64);
        let v = Rational::new(w * &scale + f, scale);
        return Ok(if negative { -v } else { v });
    }
    BigInt::from_str(t).map(Rational::from_integer).map_err(|_| bad())
}

/// Canonical `p/q` text, or `p` for integers.
pub fn render(q: &Rational) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse("21/1100").unwrap(), ratio(21, 1100));
        assert_eq!(parse("-3").unwrap(), int(-3));
        assert_eq!(parse("0.125").unwrap(), ratio(1, 8));
        assert_eq!(parse("-1.5").unwrap(), ratio(-3, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(floor(&ratio(-1, 2)), BigInt::from(-1));
        assert_eq!(ceil(&ratio(-1, 2)), BigInt::from(0));
        assert_eq!(floor(&int(3)), BigInt::from(3));
        assert_eq!(ceil(&ratio(7, 2)), BigInt::from(4));
        assert_eq!(render(&ratio(4, 2)), "2");
        assert_eq!(render(&ratio(-6, 4)), "-3/2");
    }
}
