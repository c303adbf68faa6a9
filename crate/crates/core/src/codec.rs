//! Encodings of finite sequences of reals as single reals.
//!
//! `h` maps the line onto `(0, 1)`; `interleave` merges the digit streams of
//! `m` numbers in `(0, 1)` so that digit `m*(n-1)+k` of the result is digit
//! `n` of entry `k`. `encode` composes the two.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algnum::AlgebraicNumber;
use crate::digits::{self, DigitStream};
use crate::error::{Error, Result};
use crate::rational::{self, int, ratio, Rational};

/// `h(x) = (1 + x / (1 + |x|)) / 2`, an increasing bijection from the line
/// onto `(0, 1)`.
pub fn h_map(x: &AlgebraicNumber) -> AlgebraicNumber {
    if x.sign() == Ordering::Less {
        // 1 / (2 - 2x)
        x.mobius(&int(0), &int(1), &int(-2), &int(2))
    } else {
        // (2x + 1) / (2x + 2)
        x.mobius(&int(2), &int(1), &int(2), &int(2))
    }
}

pub fn h_map_rational(x: &Rational) -> Rational {
    if x < &Rational::zero() {
        Rational::one() / (int(2) - int(2) * x)
    } else {
        (int(2) * x + int(1)) / (int(2) * x + int(2))
    }
}

pub fn h_inverse(y: &AlgebraicNumber) -> Result<AlgebraicNumber> {
    y.check_unit_interval()?;
    Ok(if y.cmp_rational(&ratio(1, 2)) == Ordering::Less {
        // (2y - 1) / (2y)
        y.mobius(&int(2), &int(-1), &int(2), &int(0))
    } else {
        // (2y - 1) / (2 - 2y)
        y.mobius(&int(2), &int(-1), &int(-2), &int(2))
    })
}

/// Nonempty list of exact reals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteSequence(Vec<AlgebraicNumber>);

impl FiniteSequence {
    pub fn new(items: Vec<AlgebraicNumber>) -> Result<FiniteSequence> {
        if items.is_empty() {
            return Err(Error::LengthUnderflow);
        }
        Ok(FiniteSequence(items))
    }

    pub fn from_rationals(items: &[Rational]) -> Result<FiniteSequence> {
        Self::new(items.iter().cloned().map(AlgebraicNumber::from_rational).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn items(&self) -> &[AlgebraicNumber] {
        &self.0
    }

    /// Entry `k`, counted from 1.
    pub fn evaluate(&self, k: usize) -> Result<&AlgebraicNumber> {
        k.checked_sub(1).and_then(|i| self.0.get(i)).ok_or(Error::IndexOutOfRange { index: k, len: self.0.len() })
    }

    pub fn append(&self, x: AlgebraicNumber) -> FiniteSequence {
        let mut v = self.0.clone();
        v.push(x);
        FiniteSequence(v)
    }

    pub fn truncate(&self) -> Result<FiniteSequence> {
        if self.0.len() < 2 {
            return Err(Error::LengthUnderflow);
        }
        Ok(FiniteSequence(self.0[..self.0.len() - 1].to_vec()))
    }

    /// Entries as rationals, when they all are.
    pub fn as_rationals(&self) -> Option<Vec<Rational>> {
        self.0.iter().map(|x| x.as_rational().cloned()).collect()
    }
}

impl fmt::Display for FiniteSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(AlgebraicNumber::render).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Digit stream of the interleaving of the entries, which must lie in
/// `(0, 1)`.
pub fn interleave(s: &FiniteSequence) -> Result<DigitStream> {
    let parts = s.items().iter().map(DigitStream::algebraic).collect::<Result<Vec<_>>>()?;
    if parts.len() == 1 {
        return Ok(parts.into_iter().next().expect("one part"));
    }
    DigitStream::interleaved(parts)
}

/// Exact interleaving of rationals in `(0, 1)`.
///
/// With pre-periods `s_k` and periods `t_k`, the result has pre-period at
/// most `m * max s_k` and period dividing `m * lcm t_k`.
pub fn interleave_rational(qs: &[Rational]) -> Result<Rational> {
    if qs.is_empty() {
        return Err(Error::LengthUnderflow);
    }
    let mut pre = 0;
    let mut period = 1;
    for q in qs {
        let (s, t) = digits::expansion_shape(q);
        pre = pre.max(s);
        period = period.lcm(&t);
    }
    let parts = qs.iter().map(DigitStream::rational).collect::<Result<Vec<_>>>()?;
    let mut z = DigitStream::interleaved(parts)?;
    let m = qs.len();
    let ds = z.prefix(m * (pre + period));
    Ok(digits::rational_from_digits(&ds[..m * pre], &ds[m * pre..]))
}

/// `h` applied entrywise, then interleaved.
pub fn encode(s: &FiniteSequence) -> Result<DigitStream> {
    let mapped = FiniteSequence(s.items().iter().map(h_map).collect());
    interleave(&mapped)
}

pub fn encode_rational(qs: &[Rational]) -> Result<Rational> {
    let mapped: Vec<Rational> = qs.iter().map(h_map_rational).collect();
    interleave_rational(&mapped)
}

/// The `m` rationals whose interleaving is `z`, or `None` when some
/// extracted stream ends in repeating nines or is identically zero.
pub fn deinterleave(z: &Rational, m: usize) -> Result<Option<FiniteSequence>> {
    if m == 0 {
        return Err(Error::OutOfRange(String::from("m must be at least 1")));
    }
    let mut stream = DigitStream::rational(z)?;
    let (s, t) = digits::expansion_shape(z);
    // Digit n of stream k sits at position m*(n-1)+k of z, which is in the
    // periodic part once n > s/m; shifting n by t moves the position by a
    // multiple of t.
    let pre = s.div_ceil(m);
    let mut out = Vec::with_capacity(m);
    for k in 1..=m {
        let digit = |n: usize, st: &mut DigitStream| st.digit((m * (n - 1) + k) as u64);
        let head: Vec<u8> = (1..=pre).map(|n| digit(n, &mut stream)).collect();
        let rep: Vec<u8> = (pre + 1..=pre + t).map(|n| digit(n, &mut stream)).collect();
        if rep.iter().all(|&d| d == 9) {
            return Ok(None);
        }
        let q = digits::rational_from_digits(&head, &rep);
        if q.is_zero() {
            return Ok(None);
        }
        out.push(AlgebraicNumber::from_rational(q));
    }
    Ok(Some(FiniteSequence(out)))
}

/// First `count` digits of each of the `m` streams interleaved in `z`.
pub fn deinterleave_prefix(z: &mut DigitStream, m: usize, count: usize) -> Result<Vec<Vec<u8>>> {
    if m == 0 {
        return Err(Error::OutOfRange(String::from("m must be at least 1")));
    }
    Ok((1..=m).map(|k| (1..=count).map(|n| z.digit((m * (n - 1) + k) as u64)).collect()).collect())
}

/// Inverse of `encode_rational`, when it exists.
pub fn decode_rational(z: &Rational, m: usize) -> Result<Option<Vec<Rational>>> {
    let Some(s) = deinterleave(z, m)? else { return Ok(None) };
    let ys = s.as_rationals().expect("rational entries");
    let mut out = Vec::with_capacity(m);
    for y in ys {
        let x = h_inverse(&AlgebraicNumber::from_rational(y))?;
        out.push(x.as_rational().cloned().expect("rational image"));
    }
    Ok(Some(out))
}

/// Renders a list of rationals as `[a, b, c]`.
pub fn render_rationals(qs: &[Rational]) -> String {
    let parts: Vec<String> = qs.iter().map(rational::render).collect();
    format!("[{}]", parts.join(", "))
}
