//! Diagonalization against a stream of definable numbers.
//!
//! Term `n` of the enumeration contributes `x_n = u` when it is unary and
//! defines exactly `{u}`, and `x_n = 0` otherwise. Digit `n` of the
//! diagonal number is 3 when `floor(10^n |x_n|)` ends in 7, and 7 otherwise,
//! so the diagonal number differs from every `x_n` at digit `n`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algnum::{self, AlgebraicNumber};
use crate::enumerator::TermStream;
use crate::error::{Error, Result};
use crate::qe;
use crate::rational::Rational;
use crate::term::GeneratorKind;

/// Why `x_n` has its value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// The term has the given arity, not 1.
    NonUnary(u32),
    /// The unary set is empty.
    Empty,
    /// The unary set has this many components and is not a single point.
    NotSingleton(usize),
    Singleton,
    /// Listed explicitly.
    Listed,
    /// Past the end of an explicit list.
    Padding,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::NonUnary(k) => write!(f, "arity {k}"),
            Provenance::Empty => f.write_str("empty set"),
            Provenance::NotSingleton(c) => write!(f, "{c} components"),
            Provenance::Singleton => f.write_str("singleton"),
            Provenance::Listed => f.write_str("listed"),
            Provenance::Padding => f.write_str("padding"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StreamEntry {
    pub index: usize,
    pub value: AlgebraicNumber,
    pub provenance: Provenance,
}

/// Source of the numbers `x_1, x_2, ...`.
#[derive(Clone, Debug)]
pub enum NumberStream {
    /// Singletons among the terms enumerated from semialgebraic generators.
    Enumerated(Vec<GeneratorKind>),
    /// An explicit list, continued by zeros.
    Curated(Vec<AlgebraicNumber>),
}

impl NumberStream {
    pub fn take(&self, count: usize) -> Result<Vec<StreamEntry>> {
        match self {
            NumberStream::Enumerated(gens) => singleton_entries(gens, count),
            NumberStream::Curated(xs) => Ok((1..=count)
                .map(|n| match xs.get(n - 1) {
                    Some(x) => StreamEntry { index: n, value: x.clone(), provenance: Provenance::Listed },
                    None => {
                        StreamEntry { index: n, value: AlgebraicNumber::from_int(0), provenance: Provenance::Padding }
                    }
                })
                .collect()),
        }
    }
}

/// `[0, 1, 355/113, sqrt 2, golden mean]`.
pub fn curated_stream() -> NumberStream {
    use crate::upoly::UPoly;
    let q = |p, d| AlgebraicNumber::from_rational(crate::rational::ratio(p, d));
    let root = |c: &[i64]| {
        AlgebraicNumber::new(&UPoly::from_i64(c), crate::rational::int(1), crate::rational::int(2))
            .expect("single root in (1, 2)")
    };
    NumberStream::Curated(alloc::vec![q(0, 1), q(1, 1), q(355, 113), root(&[-2, 0, 1]), root(&[-1, -1, 1])])
}

pub fn singleton_stream(generators: &[GeneratorKind], count: usize) -> Result<Vec<AlgebraicNumber>> {
    Ok(singleton_entries(generators, count)?.into_iter().map(|e| e.value).collect())
}

fn singleton_entries(generators: &[GeneratorKind], count: usize) -> Result<Vec<StreamEntry>> {
    if generators.contains(&GeneratorKind::Nat) {
        return Err(Error::NonSemialgebraic);
    }
    let mut out = Vec::with_capacity(count);
    for (i, (_, term)) in TermStream::new(generators).take(count).enumerate() {
        let index = i + 1;
        let zero = AlgebraicNumber::from_int(0);
        if term.arity() != 1 {
            out.push(StreamEntry { index, value: zero, provenance: Provenance::NonUnary(term.arity()) });
            continue;
        }
        let described = term.to_poly_formula().and_then(|f| qe::describe_unary(&f)).map_err(|e| match e {
            Error::UnsupportedDegree { variable, degree } => Error::UnsupportedDegreeInTerm { index, variable, degree },
            other => other,
        })?;
        let entry = match qe::extract_singleton(&described) {
            Some(u) => StreamEntry { index, value: u, provenance: Provenance::Singleton },
            None if described.is_empty() => StreamEntry { index, value: zero, provenance: Provenance::Empty },
            None => {
                StreamEntry { index, value: zero, provenance: Provenance::NotSingleton(described.components.len()) }
            }
        };
        out.push(entry);
    }
    Ok(out)
}

/// `floor(10^n |x|) mod 10`.
pub fn scaled_digit(x: &AlgebraicNumber, n: u64) -> u8 {
    algnum::digit_of(&x.abs().floor_scaled(n))
}

/// 3 when `floor(10^n |x|)` ends in 7, otherwise 7.
pub fn diagonal_digit(x: &AlgebraicNumber, n: u64) -> u8 {
    if scaled_digit(x, n) == 7 {
        3
    } else {
        7
    }
}

/// Evidence that the diagonal number differs from `x_n` at digit `n`.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub n: usize,
    pub value: AlgebraicNumber,
    pub provenance: Provenance,
    pub digit_of_value: u8,
    pub alpha: u8,
}

impl Certificate {
    /// `n=<n> x_n=<value> digit(x_n)=<d> alpha=<3|7>`.
    pub fn render(&self) -> String {
        format!("n={} x_n={} digit(x_n)={} alpha={}", self.n, self.value.render(), self.digit_of_value, self.alpha)
    }
}

#[derive(Clone, Debug)]
pub struct Diagonal {
    pub digits: Vec<u8>,
    pub certificates: Vec<Certificate>,
}

impl Diagonal {
    /// The number `0.alpha_1 alpha_2 ... alpha_N`.
    pub fn partial_value(&self) -> Rational {
        crate::digits::rational_from_digits(&self.digits, &[])
    }
}

pub fn diagonal_number(stream: &NumberStream, count: usize) -> Result<Diagonal> {
    let entries = stream.take(count)?;
    Ok(diagonal_from_entries(&entries))
}

pub fn diagonal_from_entries(entries: &[StreamEntry]) -> Diagonal {
    let mut digits = Vec::with_capacity(entries.len());
    let mut certificates = Vec::with_capacity(entries.len());
    for (i, e) in entries.iter().enumerate() {
        let n = i + 1;
        let d = scaled_digit(&e.value, n as u64);
        let alpha = if d == 7 { 3 } else { 7 };
        digits.push(alpha);
        certificates.push(Certificate {
            n,
            value: e.value.clone(),
            provenance: e.provenance.clone(),
            digit_of_value: d,
            alpha,
        });
    }
    Diagonal { digits, certificates }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use alloc::vec;

    fn q(p: i64, d: i64) -> AlgebraicNumber {
        AlgebraicNumber::from_rational(ratio(p, d))
    }

    #[test]
    fn digit_rule() {
        assert_eq!(diagonal_digit(&q(0, 1), 4), 7);
        assert_eq!(diagonal_digit(&q(3, 4), 1), 3);
        assert_eq!(diagonal_digit(&q(7, 10), 1), 3);
        assert_eq!(diagonal_digit(&q(-7, 10), 1), 3);
        assert_eq!(diagonal_digit(&q(8, 10), 1), 7);
    }

    #[test]
    fn zero_stream() {
        let d = diagonal_number(&NumberStream::Curated(vec![]), 5).unwrap();
        assert_eq!(d.digits, vec![7; 5]);
    }

    #[test]
    fn enumerated_prefix_has_no_unary_terms() {
        let d = diagonal_number(&NumberStream::Enumerated(vec![GeneratorKind::Add, GeneratorKind::Mul]), 13).unwrap();
        assert_eq!(d.digits, vec![7; 13]);
        assert!(d.certificates.iter().all(|c| matches!(c.provenance, Provenance::NonUnary(_))));
    }

    #[test]
    fn nat_is_rejected() {
        assert_eq!(singleton_stream(&[GeneratorKind::Nat], 3), Err(Error::NonSemialgebraic));
    }

    #[test]
    fn certificate_line() {
        let d = diagonal_number(&curated_stream(), 5).unwrap();
        assert_eq!(d.certificates[2].render(), "n=3 x_n=355/113 digit(x_n)=1 alpha=7");
    }
}
