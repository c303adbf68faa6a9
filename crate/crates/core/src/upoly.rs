//! Dense univariate polynomials over the integers, with Sturm-sequence root
//! counting and exact real root isolation.
//!
//! Coefficients are stored in ascending degree order and the vector never
//! ends in a zero, so the zero polynomial is the empty vector.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UPoly {
    coeffs: Vec<BigInt>,
}

/// A real root located either exactly (rational) or in an open interval
/// whose endpoints are not roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsolatedRoot {
    Exact(Rational),
    Open(Rational, Rational),
}

impl UPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly { coeffs: vec![BigInt::one()] }
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        UPoly::from_i64(&[0, 1])
    }

    /// `den*x - num`, the primitive linear polynomial vanishing at `q`.
    pub fn linear_root(q: &Rational) -> Self {
        UPoly::new(vec![-q.numer().clone(), q.denom().clone()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn neg(&self) -> Self {
        UPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        UPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = UPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content, keeping the sign of the leading coefficient.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        UPoly { coeffs: self.coeffs.iter().map(|c| c / &g).collect() }
    }

    /// Primitive part with a positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let p = self.primitive();
        if p.lc().is_negative() {
            p.neg()
        } else {
            p
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of `p(x)` computed on the homogenized integer form.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        let Some(deg) = self.degree() else {
            return Ordering::Equal;
        };
        let (n, d) = (x.numer(), x.denom());
        let mut acc = self.coeffs[deg].clone();
        let mut dpow = d.clone();
        for i in (0..deg).rev() {
            acc = acc * n + &self.coeffs[i] * &dpow;
            dpow *= d;
        }
        acc.sign_ordering()
    }

    pub fn sign_at_pos_inf(&self) -> Ordering {
        self.lc().sign_ordering()
    }

    pub fn sign_at_neg_inf(&self) -> Ordering {
        let s = self.lc().sign_ordering();
        if self.deg() % 2 == 1 {
            s.reverse()
        } else {
            s
        }
    }

    /// Pseudo-remainder `lc(b)^k * a mod b` with `k = deg a - deg b + 1`.
    /// Returns the remainder and `k`.
    pub fn pseudo_rem(&self, b: &Self) -> (Self, usize) {
        assert!(!b.is_zero(), "pseudo-division by zero polynomial");
        let db = b.deg();
        if self.is_zero() || self.deg() < db {
            return (self.clone(), 0);
        }
        let k = self.deg() - db + 1;
        let lcb = b.lc();
        let mut r = self.coeffs.clone();
        for _ in 0..k {
            let dr = r.len() - 1;
            if dr < db {
                for c in r.iter_mut() {
                    *c *= &lcb;
                }
                continue;
            }
            let lead = r[dr].clone();
            for c in r.iter_mut() {
                *c *= &lcb;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[dr - db + j] -= &lead * bc;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            if r.is_empty() {
                break;
            }
        }
        (UPoly::new(r), k)
    }

    /// Exact quotient over the integers, `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(UPoly::zero());
        }
        let dd = d.deg();
        if self.deg() < dd {
            return None;
        }
        let lcd = d.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.deg() - dd + 1];
        for i in (0..q.len()).rev() {
            let top = r[i + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (c, rem) = top.div_rem(&lcd);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] -= &c * dc;
            }
            q[i] = c;
        }
        if r.iter().all(Zero::is_zero) {
            Some(UPoly::new(q))
        } else {
            None
        }
    }

    /// Greatest common divisor, normalized (primitive, positive leading
    /// coefficient); a nonzero constant gcd is returned as `1`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.deg() < b.deg() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (r, _) = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        if a.is_zero() {
            return UPoly::zero();
        }
        if a.deg() == 0 {
            return UPoly::one();
        }
        a.normalized()
    }

    /// Product of the distinct irreducible factors, normalized.
    pub fn squarefree(&self) -> Self {
        if self.deg() == 0 {
            return self.normalized();
        }
        let g = self.gcd(&self.derivative());
        let p = self.primitive();
        p.exact_div(&g).expect("gcd divides polynomial").normalized()
    }

    /// Sturm chain `p, p', -rem(p, p'), ...` scaled by positive factors.
    pub fn sturm_chain(&self) -> Vec<UPoly> {
        let mut chain = vec![self.clone()];
        let d = self.derivative();
        if d.is_zero() {
            return chain;
        }
        chain.push(d);
        loop {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            let (r, k) = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            let flip = b.lc().is_negative() && k % 2 == 1;
            let r = r.primitive();
            chain.push(if flip { r } else { r.neg() });
        }
        chain
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`.
    /// Assumes `self` is squarefree.
    pub fn count_roots_open(&self, lo: &Rational, hi: &Rational) -> usize {
        let chain = self.sturm_chain();
        let v = |x: &Rational| variations(chain.iter().map(|p| p.sign_at(x)));
        let half_open = v(lo) - v(hi);
        let at_hi = usize::from(self.sign_at(hi) == Ordering::Equal);
        (half_open as isize - at_hi as isize).max(0) as usize
    }

    /// Total number of distinct real roots. Assumes squarefree.
    pub fn count_real_roots(&self) -> usize {
        let chain = self.sturm_chain();
        let lo = variations(chain.iter().map(UPoly::sign_at_neg_inf));
        let hi = variations(chain.iter().map(UPoly::sign_at_pos_inf));
        lo - hi
    }

    /// A power of two strictly greater than the Cauchy root bound.
    pub fn root_bound(&self) -> Rational {
        let lc = self.lc().abs();
        let max = self.coeffs[..self.deg()].iter().map(|c| c.abs()).max().unwrap_or_default();
        let cauchy = Rational::one() + Rational::new(max, lc);
        let mut b = Rational::one();
        while b <= cauchy {
            b *= rational::int(2);
        }
        b
    }

    /// Isolates every real root of a squarefree polynomial, in increasing
    /// order.
    ///
    /// Bisection runs on dyadic intervals aligned to a power-of-two bound, so
    /// an irrational root is reported in the first aligned interval of width
    /// at most one that contains it alone with non-root endpoints; roots
    /// that land on a bisection point are reported exactly.
    pub fn isolate_roots(&self) -> Vec<IsolatedRoot> {
        let mut out = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let chain = self.sturm_chain();
        let b = self.root_bound();
        let lo = -b.clone();
        let count = sign_variations(&chain, &lo) - sign_variations(&chain, &b);
        self.isolate_in(&chain, lo, b, count, &mut out);
        out
    }

    fn isolate_in(&self, chain: &[UPoly], lo: Rational, hi: Rational, count: usize, out: &mut Vec<IsolatedRoot>) {
        if count == 0 {
            return;
        }
        let hi_root = self.sign_at(&hi) == Ordering::Equal;
        let endpoints_clear = !hi_root && self.sign_at(&lo) != Ordering::Equal;
        if count == 1 && endpoints_clear && &hi - &lo <= Rational::one() {
            out.push(IsolatedRoot::Open(lo, hi));
            return;
        }
        let mid = rational::midpoint(&lo, &hi);
        let mid_root = self.sign_at(&mid) == Ordering::Equal;
        let v_lo = sign_variations(chain, &lo);
        let v_mid = sign_variations(chain, &mid);
        let v_hi = sign_variations(chain, &hi);
        let left = v_lo - v_mid - usize::from(mid_root);
        let right = v_mid - v_hi - usize::from(hi_root);
        self.isolate_in(chain, lo, mid.clone(), left, out);
        if mid_root {
            out.push(IsolatedRoot::Exact(mid.clone()));
        }
        self.isolate_in(chain, mid, hi, right, out);
    }

    /// `p((a*y + b) / (c*y + d)) * (c*y + d)^n` for `n = deg p`.
    pub fn mobius(&self, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> Self {
        let n = self.deg();
        let num = UPoly::new(vec![b.clone(), a.clone()]);
        let den = UPoly::new(vec![d.clone(), c.clone()]);
        let mut acc = UPoly::zero();
        for (i, coef) in self.coeffs.iter().enumerate() {
            let term = num.pow(i).mul(&den.pow(n - i)).scale(coef);
            acc = acc.add(&term);
        }
        acc
    }

    /// Renders with the given variable name, e.g. `x^2-2`.
    pub fn render(&self, var: &str) -> String {
        let mut s = String::new();
        if self.is_zero() {
            return String::from("0");
        }
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let first = s.is_empty();
            if c.is_negative() {
                s.push('-');
            } else if !first {
                s.push('+');
            }
            let mag = c.abs();
            if i == 0 || !mag.is_one() {
                let _ = write!(s, "{mag}");
                if i > 0 {
                    s.push('*');
                }
            }
            match i {
                0 => {}
                1 => s.push_str(var),
                _ => {
                    let _ = write!(s, "{var}^{i}");
                }
            }
        }
        s
    }
}

fn sign_variations(chain: &[UPoly], x: &Rational) -> usize {
    variations(chain.iter().map(|p| p.sign_at(x)))
}

pub(crate) fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn sqrt_two_isolates_to_unit_intervals() {
        let p = UPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(p.isolate_roots(), vec![IsolatedRoot::Open(int(-2), int(-1)), IsolatedRoot::Open(int(1), int(2))]);
    }

    #[test]
    fn golden_mean_root_in_one_two() {
        let p = UPoly::from_i64(&[-1, -1, 1]);
        let roots = p.isolate_roots();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[1], IsolatedRoot::Open(int(1), int(2)));
        assert_eq!(roots[0], IsolatedRoot::Open(int(-1), int(0)));
    }

    #[test]
    fn exact_rational_roots_on_grid() {
        // (x)(2x-1)(x+3)
        let p = UPoly::from_i64(&[0, 1]).mul(&UPoly::from_i64(&[-1, 2])).mul(&UPoly::from_i64(&[3, 1]));
        let roots = p.isolate_roots();
        assert_eq!(
            roots,
            vec![IsolatedRoot::Exact(int(-3)), IsolatedRoot::Exact(int(0)), IsolatedRoot::Exact(ratio(1, 2))]
        );
    }

    #[test]
    fn off_grid_rational_root_is_bracketed() {
        let p = UPoly::from_i64(&[-1, 3]);
        assert_eq!(p.isolate_roots(), vec![IsolatedRoot::Open(int(0), int(1))]);
    }

    #[test]
    fn squarefree_and_gcd() {
        // (x-1)^2 (x+2)
        let p = UPoly::from_i64(&[-1, 1]).pow(2).mul(&UPoly::from_i64(&[2, 1]));
        assert_eq!(p.squarefree(), UPoly::from_i64(&[-1, 1]).mul(&UPoly::from_i64(&[2, 1])));
        let q = UPoly::from_i64(&[-1, 1]).mul(&UPoly::from_i64(&[5, 0, 1]));
        assert_eq!(p.gcd(&q), UPoly::from_i64(&[-1, 1]));
        assert_eq!(UPoly::from_i64(&[1, 1]).gcd(&UPoly::from_i64(&[1, 2])), UPoly::one());
    }

    #[test]
    fn sturm_counts() {
        let p = UPoly::from_i64(&[0, -1, 0, 1]); // x^3 - x
        assert_eq!(p.count_real_roots(), 3);
        assert_eq!(p.count_roots_open(&ratio(-1, 2), &int(2)), 2);
        assert_eq!(p.count_roots_open(&int(-1), &int(1)), 1);
        assert_eq!(UPoly::from_i64(&[1, 0, 1]).count_real_roots(), 0);
    }

    #[test]
    fn mobius_substitution() {
        // p(x) = x - 1, x = (y + 0)/(0*y + 2) => (y/2 - 1) * 2 = y - 2
        let p = UPoly::from_i64(&[-1, 1]);
        let q = p.mobius(&BigInt::from(1), &BigInt::from(0), &BigInt::from(0), &BigInt::from(2));
        assert_eq!(q, UPoly::from_i64(&[-2, 1]));
    }

    #[test]
    fn render_forms() {
        assert_eq!(UPoly::from_i64(&[-2, 0, 1]).render("x"), "x^2-2");
        assert_eq!(UPoly::from_i64(&[-1, -1, 1]).render("x"), "x^2-x-1");
        assert_eq!(UPoly::from_i64(&[-1, 2, 3]).render("x"), "3*x^2+2*x-1");
    }

    #[test]
    fn sign_matches_rational_eval() {
        let p = UPoly::from_i64(&[7, -3, 0, 2, -1]);
        for n in -20..20 {
            let x = ratio(n, 7);
            let v = p.eval(&x);
            assert_eq!(p.sign_at(&x), v.cmp(&Rational::zero()));
        }
    }
}
