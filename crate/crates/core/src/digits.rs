//! Base-10 digit streams for numbers in `(0, 1)`.
//!
//! Position `n >= 1` is the `n`-th digit after the decimal point. Streams
//! backed by rationals or algebraic numbers never end in a run of nines:
//! `1/2` is `5000...`, not `4999...`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algnum::{self, AlgebraicNumber};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

type DigitFn = Arc<dyn Fn(u64) -> u8 + Send + Sync>;

#[derive(Clone)]
enum Source {
    /// Long division: `remainder / denom` is the unread tail.
    Rational {
        remainder: BigInt,
        denom: BigInt,
    },
    Algebraic(AlgebraicNumber),
    /// Digit `m*(n-1)+k` is digit `n` of part `k`.
    Interleaved(Vec<DigitStream>),
    Function(DigitFn),
}

/// Memoized digit function.
#[derive(Clone)]
pub struct DigitStream {
    source: Source,
    cache: Vec<u8>,
}

impl DigitStream {
    pub fn rational(q: &Rational) -> Result<DigitStream> {
        if q <= &Rational::zero() || q >= &Rational::one() {
            return Err(Error::OutOfRange(alloc::format!("{} is not in (0, 1)", rational::render(q))));
        }
        Ok(DigitStream {
            source: Source::Rational { remainder: q.numer().clone(), denom: q.denom().clone() },
            cache: Vec::new(),
        })
    }

    pub fn algebraic(x: &AlgebraicNumber) -> Result<DigitStream> {
        if let Some(q) = x.as_rational() {
            return Self::rational(q);
        }
        x.check_unit_interval()?;
        Ok(DigitStream { source: Source::Algebraic(x.clone()), cache: Vec::new() })
    }

    pub fn interleaved(parts: Vec<DigitStream>) -> Result<DigitStream> {
        if parts.is_empty() {
            return Err(Error::OutOfRange(alloc::string::String::from("interleaving needs at least one stream")));
        }
        Ok(DigitStream { source: Source::Interleaved(parts), cache: Vec::new() })
    }

    /// Stream given by a digit function; `f(n)` must lie in `0..=9`.
    pub fn from_fn(f: impl Fn(u64) -> u8 + Send + Sync + 'static) -> DigitStream {
        DigitStream { source: Source::Function(Arc::new(f)), cache: Vec::new() }
    }

    /// Digit at position `n >= 1`.
    pub fn digit(&mut self, n: u64) -> u8 {
        assert!(n >= 1, "digit positions start at 1");
        while (self.cache.len() as u64) < n {
            let next = self.cache.len() as u64 + 1;
            let d = self.compute(next);
            self.cache.push(d);
        }
        self.cache[n as usize - 1]
    }

    pub fn prefix(&mut self, count: usize) -> Vec<u8> {
        (1..=count as u64).map(|n| self.digit(n)).collect()
    }

    fn compute(&mut self, n: u64) -> u8 {
        match &mut self.source {
            Source::Rational { remainder, denom } => {
                let (d, r) = (&*remainder * 10u8).div_rem(denom);
                *remainder = r;
                u8::try_from(d).expect("long division digit")
            }
            Source::Algebraic(x) => {
                let scaled = x.floor_scaled_refining(n);
                algnum::digit_of(&scaled)
            }
            Source::Interleaved(parts) => {
                let m = parts.len() as u64;
                let k = (n - 1) % m;
                let inner = (n - 1) / m + 1;
                parts[k as usize].digit(inner)
            }
            Source::Function(f) => f(n),
        }
    }
}

impl fmt::Debug for DigitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.source {
            Source::Rational { .. } => "rational",
            Source::Algebraic(_) => "algebraic",
            Source::Interleaved(_) => "interleaved",
            Source::Function(_) => "function",
        };
        write!(f, "DigitStream({kind}, {} cached)", self.cache.len())
    }
}

/// Pre-period length and period length of the decimal expansion of a
/// rational in `[0, 1)`. Terminating expansions have period 1 (repeating
/// zero).
pub fn expansion_shape(q: &Rational) -> (usize, usize) {
    let mut d = q.denom().clone();
    let two = BigInt::from(2u8);
    let five = BigInt::from(5u8);
    let (mut a, mut b) = (0usize, 0usize);
    while d.is_even() {
        d /= &two;
        a += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        b += 1;
    }
    let pre = a.max(b);
    if d.is_one() {
        return (pre, 1);
    }
    let ten = BigInt::from(10u8);
    let mut acc = &ten % &d;
    let mut period = 1;
    while !acc.is_one() {
        acc = (acc * &ten) % &d;
        period += 1;
    }
    (pre, period)
}

/// Exact value of `0.pre(rep)(rep)...`; an empty `rep` means the expansion
/// terminates after `pre`.
pub fn rational_from_digits(pre: &[u8], rep: &[u8]) -> Rational {
    let to_int = |ds: &[u8]| ds.iter().fold(BigInt::zero(), |acc, &d| acc * 10u8 + d);
    let p = to_int(pre);
    let scale_pre = rational::pow10(pre.len() as u64);
    if rep.is_empty() {
        return Rational::new(p, scale_pre);
    }
    let r = to_int(rep);
    let nines = rational::pow10(rep.len() as u64) - 1u8;
    Rational::new(p * &nines + r, scale_pre * nines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use alloc::vec;

    #[test]
    fn rational_streams() {
        let mut s = DigitStream::rational(&ratio(21, 1100)).unwrap();
        assert_eq!(s.prefix(6), vec![0, 1, 9, 0, 9, 0]);
        let mut h = DigitStream::rational(&ratio(1, 2)).unwrap();
        assert_eq!(h.prefix(4), vec![5, 0, 0, 0]);
        let mut t = DigitStream::rational(&ratio(1, 3)).unwrap();
        assert_eq!(t.prefix(5), vec![3; 5]);
        assert!(DigitStream::rational(&ratio(1, 1)).is_err());
    }

    #[test]
    fn shapes() {
        assert_eq!(expansion_shape(&ratio(21, 1100)), (2, 2));
        assert_eq!(expansion_shape(&ratio(1, 2)), (1, 1));
        assert_eq!(expansion_shape(&ratio(1, 7)), (0, 6));
        assert_eq!(expansion_shape(&ratio(1, 3)), (0, 1));
    }

    #[test]
    fn from_digit_blocks() {
        assert_eq!(rational_from_digits(&[0, 1], &[9, 0]), ratio(21, 1100));
        assert_eq!(rational_from_digits(&[5], &[]), ratio(1, 2));
        assert_eq!(rational_from_digits(&[], &[3]), ratio(1, 3));
    }

    #[test]
    fn function_and_interleaved() {
        let ones = DigitStream::from_fn(|_| 1);
        let zeros = DigitStream::rational(&ratio(1, 2)).unwrap();
        let mut z = DigitStream::interleaved(vec![ones, zeros]).unwrap();
        assert_eq!(z.prefix(6), vec![1, 5, 1, 0, 1, 0]);
    }
}
