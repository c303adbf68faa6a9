//! Exact real algebraic numbers: a squarefree integer polynomial plus an
//! isolating interval.
//!
//! An irrational number keeps an open interval `(lo, hi)` whose endpoints
//! are not roots and which contains exactly one root. A rational number
//! keeps its primitive linear polynomial and the degenerate interval
//! `[q, q]`. Any bisection that lands exactly on the root converts the
//! value to the rational form.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::upoly::{IsolatedRoot, UPoly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraicNumber {
    poly: UPoly,
    lo: Rational,
    hi: Rational,
}

impl AlgebraicNumber {
    pub fn from_rational(q: Rational) -> Self {
        AlgebraicNumber { poly: UPoly::linear_root(&q), lo: q.clone(), hi: q }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rational::int(n))
    }

    /// The unique root of `poly` in the closed interval `[lo, hi]`.
    pub fn new(poly: &UPoly, lo: Rational, hi: Rational) -> Result<Self> {
        if poly.is_zero() || poly.deg() == 0 {
            return Err(Error::InvalidInstance(String::from("defining polynomial must be non-constant")));
        }
        if lo > hi {
            return Err(Error::InvalidInstance(String::from("empty isolating interval")));
        }
        let p = poly.squarefree();
        let lo_root = p.sign_at(&lo) == Ordering::Equal;
        let hi_root = p.sign_at(&hi) == Ordering::Equal;
        if lo == hi {
            return if lo_root {
                Ok(Self::from_rational(lo))
            } else {
                Err(Error::InvalidInstance(String::from("degenerate interval is not a root")))
            };
        }
        let inside = p.count_roots_open(&lo, &hi);
        let total = inside + usize::from(lo_root) + usize::from(hi_root);
        if total != 1 {
            return Err(Error::InvalidInstance(format!("interval contains {total} roots, expected 1")));
        }
        if lo_root {
            return Ok(Self::from_rational(lo));
        }
        if hi_root {
            return Ok(Self::from_rational(hi));
        }
        Ok(AlgebraicNumber { poly: p, lo, hi })
    }

    /// All real roots of a nonzero polynomial, ascending.
    pub fn roots_of(poly: &UPoly) -> Vec<AlgebraicNumber> {
        if poly.deg() == 0 {
            return Vec::new();
        }
        let p = poly.squarefree();
        p.isolate_roots()
            .into_iter()
            .map(|r| match r {
                IsolatedRoot::Exact(q) => Self::from_rational(q),
                IsolatedRoot::Open(lo, hi) => AlgebraicNumber { poly: p.clone(), lo, hi },
            })
            .collect()
    }

    pub fn poly(&self) -> &UPoly {
        &self.poly
    }

    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    pub fn is_rational(&self) -> bool {
        self.lo == self.hi
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.lo)
    }

    /// Halves the isolating interval.
    fn bisect(&mut self) {
        if self.is_rational() {
            return;
        }
        let mid = rational::midpoint(&self.lo, &self.hi);
        self.split_at(&mid);
    }

    /// Narrows the interval to one side of `q` and reports where the number
    /// lies relative to `q`.
    fn split_at(&mut self, q: &Rational) -> Ordering {
        if self.is_rational() {
            return self.lo.cmp(q);
        }
        if q <= &self.lo {
            return Ordering::Greater;
        }
        if q >= &self.hi {
            return Ordering::Less;
        }
        let s_q = self.poly.sign_at(q);
        if s_q == Ordering::Equal {
            *self = Self::from_rational(q.clone());
            return Ordering::Equal;
        }
        if self.poly.sign_at(&self.lo) != s_q {
            self.hi = q.clone();
            Ordering::Less
        } else {
            self.lo = q.clone();
            Ordering::Greater
        }
    }

    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        self.clone().split_at(q)
    }

    pub fn sign(&self) -> Ordering {
        self.cmp_rational(&Rational::zero())
    }

    /// Same number with an isolating interval no wider than `width`.
    pub fn refine(&self, width: &Rational) -> AlgebraicNumber {
        assert!(width.is_positive(), "refinement width must be positive");
        let mut a = self.clone();
        while !a.is_rational() && &(&a.hi - &a.lo) > width {
            // Prefer the multiple of `width` just below the midpoint, so
            // that refined intervals fall on the width grid.
            let mid = rational::midpoint(&a.lo, &a.hi);
            let grid = (&mid / width).floor() * width;
            if grid > a.lo {
                a.split_at(&grid);
            } else {
                a.bisect();
            }
        }
        a
    }

    /// Sign of `q` evaluated at this number.
    pub fn sign_of(&self, q: &UPoly) -> Ordering {
        if q.is_zero() {
            return Ordering::Equal;
        }
        if let Some(r) = self.as_rational() {
            return q.sign_at(r);
        }
        let g = self.poly.gcd(q);
        if g.deg() > 0 && g.count_roots_open(&self.lo, &self.hi) == 1 {
            return Ordering::Equal;
        }
        let qs = q.squarefree();
        let mut a = self.clone();
        loop {
            if let Some(r) = a.as_rational() {
                return q.sign_at(r);
            }
            let clear = qs.sign_at(&a.lo) != Ordering::Equal
                && qs.sign_at(&a.hi) != Ordering::Equal
                && qs.count_roots_open(&a.lo, &a.hi) == 0;
            if clear {
                return q.sign_at(&a.lo);
            }
            a.bisect();
        }
    }

    /// Exact total order.
    pub fn compare(&self, other: &AlgebraicNumber) -> Ordering {
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => return a.cmp(b),
            (Some(a), None) => return other.cmp_rational(a).reverse(),
            (None, Some(b)) => return self.cmp_rational(b),
            (None, None) => {}
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        if a.hi > b.lo && b.hi > a.lo {
            // Overlapping intervals: equal exactly when the common factor
            // has a root in the overlap.
            let g = a.poly.gcd(&b.poly);
            if g.deg() > 0 {
                let lo = (&a.lo).max(&b.lo).clone();
                let hi = (&a.hi).min(&b.hi).clone();
                if g.count_roots_open(&lo, &hi) > 0 {
                    return Ordering::Equal;
                }
            }
        }
        loop {
            if a.is_rational() || b.is_rational() {
                return a.compare(&b);
            }
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            if a.hi.clone() - &a.lo >= b.hi.clone() - &b.lo {
                a.bisect();
            } else {
                b.bisect();
            }
        }
    }

    /// A rational strictly between `self` and a larger number.
    pub fn rational_between(&self, upper: &AlgebraicNumber) -> Rational {
        debug_assert_eq!(self.compare(upper), Ordering::Less);
        let (mut a, mut b) = (self.clone(), upper.clone());
        while a.hi >= b.lo {
            if a.hi.clone() - &a.lo >= b.hi.clone() - &b.lo {
                a.bisect();
            } else {
                b.bisect();
            }
        }
        rational::midpoint(&a.hi, &b.lo)
    }

    pub fn neg(&self) -> AlgebraicNumber {
        if let Some(q) = self.as_rational() {
            return Self::from_rational(-q);
        }
        let coeffs: Vec<BigInt> =
            self.poly.coeffs().iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect();
        AlgebraicNumber { poly: UPoly::new(coeffs).normalized(), lo: -&self.hi, hi: -&self.lo }
    }

    pub fn abs(&self) -> AlgebraicNumber {
        if self.sign() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Image under `y = (a*x + b) / (c*x + d)`, which must be defined and
    /// monotone on the isolating interval (`c*x + d` has no zero there).
    pub fn mobius(&self, a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> AlgebraicNumber {
        let f = |x: &Rational| (a * x + b) / (c * x + d);
        if let Some(q) = self.as_rational() {
            return Self::from_rational(f(q));
        }
        // Make the interval avoid the pole.
        let mut src = self.clone();
        if !c.is_zero() {
            let pole = -d / c;
            while !src.is_rational() && src.lo <= pole && pole <= src.hi {
                src.bisect();
            }
            if let Some(q) = src.as_rational() {
                return Self::from_rational(f(q));
            }
        }
        // Inverse: x = (d*y - b) / (-c*y + a).
        let l = lcm_denoms(&[a, b, c, d]);
        let big = |q: &Rational| (q * &l).to_integer();
        let p = src.poly.mobius(&big(d), &-big(b), &-big(c), &big(a)).normalized();
        let (u, v) = (f(&src.lo), f(&src.hi));
        let (lo, hi) = if u <= v { (u, v) } else { (v, u) };
        AlgebraicNumber::new(&p, lo, hi).expect("monotone image keeps a single root")
    }

    /// `floor(10^n * x)`.
    pub fn floor_scaled(&self, n: u64) -> BigInt {
        self.clone().floor_scaled_refining(n)
    }

    /// `floor(10^n * x)`, keeping the narrowed interval.
    pub(crate) fn floor_scaled_refining(&mut self, n: u64) -> BigInt {
        let scale = Rational::from_integer(rational::pow10(n));
        let a = self;
        loop {
            if let Some(q) = a.as_rational() {
                return rational::floor(&(q * &scale));
            }
            let lo = rational::floor(&(&a.lo * &scale));
            let hi = rational::ceil(&(&a.hi * &scale));
            if &hi - &lo <= BigInt::one() {
                return lo;
            }
            // Split at a grid point near the middle, strictly inside.
            let mid = rational::floor(&(rational::midpoint(&a.lo, &a.hi) * &scale));
            let boundary = Rational::new(mid.max(lo + BigInt::one()), rational::pow10(n));
            a.split_at(&boundary);
        }
    }

    /// `floor(x)`.
    pub fn floor(&self) -> BigInt {
        self.floor_scaled(0)
    }

    /// Digit `n >= 1` after the decimal point, `floor(10 * frac(10^(n-1) x))`,
    /// for `x` in `(0, 1)`.
    pub fn nth_digit(&self, n: u64) -> Result<u8> {
        self.check_unit_interval()?;
        if n == 0 {
            return Err(Error::OutOfRange(String::from("digit positions start at 1")));
        }
        Ok(digit_of(&self.floor_scaled(n)))
    }

    pub fn check_unit_interval(&self) -> Result<()> {
        if self.sign() != Ordering::Greater || self.cmp_rational(&Rational::one()) != Ordering::Less {
            return Err(Error::OutOfRange(format!("{self} is not in (0, 1)")));
        }
        Ok(())
    }

    /// `alg poly="x^2-2" interval=(1,2)`, or the plain rational.
    pub fn render(&self) -> String {
        match self.as_rational() {
            Some(q) => rational::render(q),
            None => format!(
                "alg poly=\"{}\" interval=({},{})",
                self.poly.render("x"),
                rational::render(&self.lo),
                rational::render(&self.hi)
            ),
        }
    }
}

pub(crate) fn digit_of(scaled_floor: &BigInt) -> u8 {
    let d = num_integer::Integer::mod_floor(scaled_floor, &BigInt::from(10));
    u8::try_from(d).expect("residue mod 10")
}

fn lcm_denoms(qs: &[&Rational]) -> BigInt {
    qs.iter().fold(BigInt::one(), |acc, q| num_integer::Integer::lcm(&acc, q.denom()))
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

/// Parses `alg poly="..." interval=(lo,hi)` or a rational.
pub fn parse_algebraic(text: &str) -> Result<AlgebraicNumber> {
    let t = text.trim();
    let Some(rest) = t.strip_prefix("alg") else {
        return rational::parse(t).map(AlgebraicNumber::from_rational);
    };
    let bad = |m: &str| Error::SyntaxError { position: 0, message: format!("{m} in {t:?}") };
    let rest = rest.trim_start();
    let rest = rest.strip_prefix("poly=\"").ok_or_else(|| bad("expected poly=\""))?;
    let (poly_text, rest) = rest.split_once('"').ok_or_else(|| bad("unterminated poly"))?;
    let rest = rest.trim_start().strip_prefix("interval=").ok_or_else(|| bad("expected interval="))?;
    let inner = rest
        .trim()
        .strip_prefix(['(', '['])
        .and_then(|r| r.strip_suffix([')', ']']))
        .ok_or_else(|| bad("expected (lo,hi)"))?;
    let (lo, hi) = inner.split_once(',').ok_or_else(|| bad("expected lo,hi"))?;
    let (poly, names) = crate::parse::parse_poly(poly_text)?;
    if names.len() > 1 {
        return Err(bad("polynomial must be univariate"));
    }
    let up = poly.to_upoly(1).ok_or_else(|| bad("polynomial must be univariate"))?;
    AlgebraicNumber::new(&up, rational::parse(lo)?, rational::parse(hi)?)
}
