//! Sparse multivariate polynomials with integer coefficients.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;
use crate::upoly::UPoly;

/// Variable index. Free variables of an n-ary formula are `1..=n`.
pub type Var = u32;

/// Power product as sorted `(variable, exponent)` pairs with positive
/// exponents.
///
/// Ordered by total degree, then lexicographically with `x1 > x2 > ...`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(&(a, ea)), Some(&(b, eb))) if a == b => {
                    out.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
                (Some(&(a, ea)), Some(&(b, _))) if a < b => {
                    out.push((a, ea));
                    i += 1;
                }
                (Some(_), Some(&(b, eb))) => {
                    out.push((b, eb));
                    j += 1;
                }
                (Some(&x), None) => {
                    out.push(x);
                    i += 1;
                }
                (None, Some(&y)) => {
                    out.push(y);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.0.get(i), other.0.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(a, ea)), Some(&(b, eb))) => {
                        if a != b {
                            // A smaller variable index ranks higher.
                            return if a < b { Ordering::Greater } else { Ordering::Less };
                        }
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn int(c: i64) -> Self {
        Poly::constant(BigInt::from(c))
    }

    pub fn var(v: Var) -> Self {
        Poly::monomial(BigInt::one(), Monomial::var(v, 1))
    }

    pub fn monomial(c: BigInt, m: Monomial) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.0.is_empty())
    }

    /// Constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.is_constant() {
            return self.terms.get(&Monomial::one()).cloned();
        }
        None
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Coefficients with respect to `v`: element `i` multiplies `v^i`.
    pub fn coefficients_in(&self, v: Var) -> Vec<Poly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Poly::zero(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            out[e].add_term(m.without(v), c.clone());
        }
        out
    }

    pub fn from_coefficients(v: Var, coeffs: &[Poly]) -> Poly {
        let x = Poly::var(v);
        let mut acc = Poly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            acc = acc.add(&c.mul(&x.pow(i as u32)));
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let rest = m.without(v).mul(&Monomial::var(v, e - 1));
            out.add_term(rest, c * BigInt::from(e));
        }
        out
    }

    /// Renames variables through `f`.
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut acc = Monomial::one();
            for &(v, e) in &m.0 {
                acc = acc.mul(&Monomial::var(f(v), e));
            }
            out.add_term(acc, c.clone());
        }
        out
    }

    /// Exact value at a rational assignment; unassigned variables read as 0.
    pub fn eval(&self, at: &dyn Fn(Var) -> Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = Rational::from_integer(c.clone());
            for &(v, e) in &m.0 {
                t *= num_traits::pow(at(v), e as usize);
            }
            acc += t;
        }
        acc
    }

    /// Substitutes a rational value for one variable, clearing the
    /// denominator with a positive factor. The result has the same sign as
    /// the substituted polynomial at every point.
    pub fn substitute_rational(&self, v: Var, q: &Rational) -> Poly {
        let coeffs = self.coefficients_in(v);
        let d = coeffs.len() - 1;
        let (n, den) = (q.numer(), q.denom());
        let mut acc = Poly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            let k = num_traits::pow(n.clone(), i) * num_traits::pow(den.clone(), d - i);
            acc = acc.add(&c.scale(&k));
        }
        acc
    }

    /// Divides every coefficient by `k`, which must divide them all.
    pub fn div_exact_by(&self, k: &BigInt) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c / k)).collect() }
    }

    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Leading coefficient under the monomial order.
    pub fn leading_coefficient(&self) -> BigInt {
        self.terms.iter().next_back().map(|(_, c)| c.clone()).unwrap_or_default()
    }

    /// Content-free with positive leading coefficient. Returns the
    /// normalized polynomial and whether it was negated.
    pub fn normalize(&self) -> (Poly, bool) {
        if self.is_zero() {
            return (Poly::zero(), false);
        }
        let g = self.content();
        let negate = self.leading_coefficient().is_negative();
        let g = if negate { -g } else { g };
        let p = Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c / &g)).collect() };
        (p, negate)
    }

    /// Univariate view, when no variable other than `v` occurs.
    pub fn to_upoly(&self, v: Var) -> Option<UPoly> {
        if self.vars().iter().any(|&w| w != v) {
            return None;
        }
        let coeffs = self.coefficients_in(v);
        Some(UPoly::new(coeffs.iter().map(|c| c.as_constant().unwrap_or_default()).collect()))
    }

    pub fn from_upoly(p: &UPoly, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(Monomial::var(v, i as u32), c.clone());
        }
        out
    }

    /// Renders in descending monomial order, e.g. `x1^2*x2-3*x3+1`.
    pub fn render(&self, name: &dyn Fn(Var) -> String) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (m, c) in self.terms.iter().rev() {
            if c.is_negative() {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            let mag = c.abs();
            let unit = mag.is_one();
            if m.0.is_empty() || !unit {
                let _ = write!(s, "{mag}");
            }
            for (k, &(v, e)) in m.0.iter().enumerate() {
                if k > 0 || !unit {
                    s.push('*');
                }
                s.push_str(&name(v));
                if e > 1 {
                    let _ = write!(s, "^{e}");
                }
            }
        }
        s
    }
}
