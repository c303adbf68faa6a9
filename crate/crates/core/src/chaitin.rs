//! Bounded search for natural solutions of a parametric Diophantine
//! equation `f(N, x_1, ..., x_m) = 0`, and the dyadic lower approximations
//! `omega_M = sum_{N <= M} 2^(-N) A_{M,N}` built from it.
//!
//! `A_{M,N}` is 1 when some `x` with every coordinate in `1..M` zeroes `f`.
//! The reported witness is the least one in colexicographic order: `x_1`
//! varies fastest.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::parse::parse_poly;
use crate::poly::{Poly, Var};
use crate::rational::Rational;

/// Name of the parameter variable in the polynomial syntax.
pub const PARAMETER: &str = "N";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiophantineInstance {
    poly: Poly,
    param: Option<Var>,
    search: Vec<Var>,
    names: Vec<String>,
}

impl DiophantineInstance {
    /// `search` lists the search variables in order `x_1, ..., x_m`.
    pub fn new(poly: Poly, param: Option<Var>, search: Vec<Var>) -> Result<DiophantineInstance> {
        if search.is_empty() {
            return Err(Error::InvalidInstance(String::from("at least one search variable is required")));
        }
        let known: Vec<Var> = search.iter().copied().chain(param).collect();
        if let Some(v) = poly.vars().into_iter().find(|v| !known.contains(v)) {
            return Err(Error::InvalidInstance(format!("variable x{v} is neither the parameter nor searched")));
        }
        let names = search.iter().map(|v| format!("x{v}")).collect();
        Ok(DiophantineInstance { poly, param, search, names })
    }

    /// Parses a polynomial; `N` is the parameter and the remaining names, in
    /// sorted order, are the search variables.
    pub fn parse(text: &str) -> Result<DiophantineInstance> {
        let (poly, names) = parse_poly(text)?;
        let mut param = None;
        let mut search = Vec::new();
        let mut search_names = Vec::new();
        for (i, n) in names.into_iter().enumerate() {
            let v = i as Var + 1;
            if n == PARAMETER {
                param = Some(v);
            } else {
                search.push(v);
                search_names.push(n);
            }
        }
        let mut inst = Self::new(poly, param, search)?;
        inst.names = search_names;
        Ok(inst)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn search_vars(&self) -> usize {
        self.search.len()
    }

    pub fn search_names(&self) -> &[String] {
        &self.names
    }

    /// `f(n, x)` by exact integer evaluation.
    pub fn eval(&self, n: u64, x: &[u64]) -> BigInt {
        let at = |v: Var| {
            if Some(v) == self.param {
                return Rational::from_integer(n.into());
            }
            let k = self.search.iter().position(|&w| w == v).expect("known variable");
            Rational::from_integer(x[k].into())
        };
        self.poly.eval(&at).to_integer()
    }

    /// The polynomial with the parameter fixed, as coefficients in `x_1`
    /// over monomials in `x_2..x_m` (exponent vectors indexed like
    /// `search[1..]`).
    fn specialize(&self, n: u64) -> Vec<Vec<(BigInt, Vec<u32>)>> {
        let p = match self.param {
            Some(v) => self.poly.substitute_rational(v, &Rational::from_integer(n.into())),
            None => self.poly.clone(),
        };
        let x1 = self.search[0];
        p.coefficients_in(x1)
            .into_iter()
            .map(|c| {
                c.terms().map(|(m, k)| (k.clone(), self.search[1..].iter().map(|&v| m.exponent(v)).collect())).collect()
            })
            .collect()
    }
}

/// Witness of `A_{M,N} = 1`: the colex-least `x` in `1..M` with
/// `f(N, x) = 0`, or `None`.
pub fn bounded_bit(f: &DiophantineInstance, m_bound: u64, n: u64) -> Option<Vec<u64>> {
    if m_bound <= 1 {
        return None;
    }
    let hi = m_bound - 1;
    let coeffs = f.specialize(n);
    let dims = f.search_vars();
    let degree = coeffs.len() - 1;
    // Largest point the difference table is seeded at.
    let reach = BigInt::from(hi.max(degree as u64 + 1));
    let magnitude: BigInt = coeffs
        .iter()
        .enumerate()
        .flat_map(|(k, c)| {
            let reach = &reach;
            c.iter().map(move |(a, e)| a.abs() * reach.pow(k as u32 + e.iter().sum::<u32>()))
        })
        .sum();
    // Forward differences of order k are bounded by 2^k times the largest
    // value.
    let bound = magnitude << (degree + 2);
    if bound.bits() < 126 {
        search_i128(&coeffs, dims, hi)
    } else {
        search_big(f, n, dims, hi)
    }
}

/// Iterates `x_2..x_m` in colex order, calling `row` until it returns a
/// witness.
fn for_each_row(dims: usize, hi: u64, mut row: impl FnMut(&[u64]) -> Option<u64>) -> Option<Vec<u64>> {
    let mut rest = vec![1u64; dims - 1];
    loop {
        if let Some(x1) = row(&rest) {
            let mut w = vec![x1];
            w.extend_from_slice(&rest);
            return Some(w);
        }
        let mut i = 0;
        loop {
            if i == rest.len() {
                return None;
            }
            if rest[i] < hi {
                rest[i] += 1;
                break;
            }
            rest[i] = 1;
            i += 1;
        }
    }
}

fn search_i128(coeffs: &[Vec<(BigInt, Vec<u32>)>], dims: usize, hi: u64) -> Option<Vec<u64>> {
    let coeffs: Vec<Vec<(i128, Vec<u32>)>> = coeffs
        .iter()
        .map(|c| c.iter().map(|(a, e)| (a.to_i128().expect("bounded coefficient"), e.clone())).collect())
        .collect();
    let degree = coeffs.len() - 1;
    let mut row_poly = vec![0i128; degree + 1];
    let mut diffs = vec![0i128; degree + 1];
    for_each_row(dims, hi, |rest| {
        for (k, c) in coeffs.iter().enumerate() {
            row_poly[k] =
                c.iter().map(|(a, e)| e.iter().zip(rest).fold(*a, |acc, (&p, &x)| acc * (x as i128).pow(p))).sum();
        }
        let eval = |x: i128| row_poly.iter().rev().fold(0i128, |acc, &c| acc * x + c);
        // diffs[k] = k-th forward difference at the current point.
        for (k, d) in diffs.iter_mut().enumerate() {
            *d = (0..=k).map(|j| binomial_sign(k, j) * eval(1 + j as i128)).sum();
        }
        for x in 1..=hi {
            if diffs[0] == 0 {
                return Some(x);
            }
            for k in 0..degree {
                diffs[k] += diffs[k + 1];
            }
        }
        None
    })
}

/// `(-1)^(k-j) * C(k, j)`.
fn binomial_sign(k: usize, j: usize) -> i128 {
    let mut c: i128 = 1;
    for i in 0..j {
        c = c * (k - i) as i128 / (i + 1) as i128;
    }
    if (k - j) % 2 == 1 {
        -c
    } else {
        c
    }
}

fn search_big(f: &DiophantineInstance, n: u64, dims: usize, hi: u64) -> Option<Vec<u64>> {
    let mut x = vec![1u64; dims];
    for_each_row(dims, hi, |rest| {
        x[1..].copy_from_slice(rest);
        (1..=hi).find(|&x1| {
            x[0] = x1;
            f.eval(n, &x).is_zero()
        })
    })
}

/// Exact dyadic rational `numer / 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    pub numer: BigInt,
    pub exp: u64,
}

impl Dyadic {
    /// Lowest terms: odd numerator or zero over `2^0`.
    pub fn reduced(&self) -> Dyadic {
        if self.numer.is_zero() {
            return Dyadic { numer: BigInt::zero(), exp: 0 };
        }
        let tz = self.numer.trailing_zeros().unwrap_or(0).min(self.exp);
        Dyadic { numer: &self.numer >> tz, exp: self.exp - tz }
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.numer.clone(), BigInt::one() << self.exp)
    }

    /// `p/2^k` in lowest terms.
    pub fn render(&self) -> String {
        let r = self.reduced();
        format!("{}/2^{}", r.numer, r.exp)
    }
}

/// `omega_M = sum_{N=1}^{M} 2^(-N) A_{M,N}`.
pub fn omega_approx(f: &DiophantineInstance, m_bound: u64) -> Dyadic {
    let mut numer = BigInt::zero();
    for n in 1..=m_bound {
        if bounded_bit(f, m_bound, n).is_some() {
            numer += BigInt::one() << (m_bound - n);
        }
    }
    Dyadic { numer, exp: m_bound }
}

/// Least `M <= cap` with `A_{M,N} = 1`.
pub fn stabilization_bound(f: &DiophantineInstance, n: u64, cap: u64) -> Option<u64> {
    bounded_bit(f, cap, n)?;
    // A_{M,N} is monotone in M; the largest coordinate of the witness
    // found at the cap bounds the answer from above.
    let (mut lo, mut hi) = (1u64, cap);
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if bounded_bit(f, mid, n).is_some() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// Exact sign check of a stored witness.
pub fn verify_witness(f: &DiophantineInstance, n: u64, w: &[u64]) -> bool {
    w.len() == f.search_vars() && f.eval(n, w).is_zero() && !w.contains(&0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubes() -> DiophantineInstance {
        DiophantineInstance::parse("x^3 + y^3 + z^3 - N").unwrap()
    }

    #[test]
    fn twenty_nine() {
        let f = cubes();
        assert_eq!(bounded_bit(&f, 4, 29), Some(vec![3, 1, 1]));
        assert_eq!(bounded_bit(&f, 3, 29), None);
        assert_eq!(bounded_bit(&f, 1, 3), None);
        assert!(verify_witness(&f, 29, &[3, 1, 1]));
    }

    #[test]
    fn stabilization() {
        let f = cubes();
        assert_eq!(stabilization_bound(&f, 29, 10), Some(4));
        assert_eq!(stabilization_bound(&f, 3, 10), Some(2));
        assert_eq!(stabilization_bound(&f, 4, 10), None);
    }

    #[test]
    fn omega_small() {
        let f = cubes();
        // Only N = 3 has a solution among N <= 4 with coordinates below 4.
        let w = omega_approx(&f, 4);
        assert_eq!(w.to_rational(), Rational::new(1.into(), 8.into()));
        assert_eq!(w.render(), "1/2^3");
        assert_eq!(omega_approx(&f, 1).render(), "0/2^0");
    }

    #[test]
    fn no_parameter_and_errors() {
        let f = DiophantineInstance::parse("x*y - 6").unwrap();
        assert_eq!(bounded_bit(&f, 7, 1), Some(vec![6, 1]));
        assert!(DiophantineInstance::parse("N - 3").is_err());
    }

    #[test]
    fn big_path_matches() {
        let f = DiophantineInstance::parse("x^40 - 2^40 + y - 1").unwrap();
        assert_eq!(bounded_bit(&f, 4, 1), Some(vec![2, 1]));
    }
}
