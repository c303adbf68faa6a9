//! A sequence that eventually exceeds every sequence of a given family, and
//! the correspondence between increasing index lists and 0/1 digit streams.

use alloc::vec::Vec;

use crate::digits::DigitStream;
use crate::error::{Error, Result};

/// `x[i][j]` is element `i + 1` of sequence `j + 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SequenceTable {
    rows: Vec<Vec<u64>>,
}

impl SequenceTable {
    pub fn new(rows: Vec<Vec<u64>>) -> Result<SequenceTable> {
        if let Some(w) = rows.first().map(Vec::len) {
            if rows.iter().any(|r| r.len() != w) {
                return Err(Error::InvalidInstance(alloc::string::String::from("table rows differ in length")));
            }
        }
        Ok(SequenceTable { rows })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> u64) -> SequenceTable {
        SequenceTable { rows: (1..=n).map(|i| (1..=n).map(|j| f(i, j)).collect()).collect() }
    }

    /// `x_{i,j}` with 1-based indices.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.rows[i - 1][j - 1]
    }

    /// Largest `n` for which the leading `n x n` subtable exists.
    pub fn n_max(&self) -> usize {
        self.rows.len().min(self.rows.first().map_or(0, Vec::len))
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }
}

/// `y_n = n + max_{i,j <= n} x_{i,j}`.
pub fn overtake_value(t: &SequenceTable, n: usize) -> Result<u64> {
    if n == 0 || n > t.n_max() {
        return Err(Error::OutOfRange(alloc::format!("n = {n} outside 1..={}", t.n_max())));
    }
    let max = t.rows[..n].iter().flat_map(|r| r[..n].iter().copied()).max().unwrap_or(0);
    max.checked_add(n as u64).ok_or_else(|| Error::Overflow(alloc::format!("y_{n}")))
}

/// `y_1, ..., y_n`, computed incrementally.
pub fn overtake_sequence(t: &SequenceTable, n: usize) -> Result<Vec<u64>> {
    if n > t.n_max() {
        return Err(Error::OutOfRange(alloc::format!("n = {n} outside 1..={}", t.n_max())));
    }
    let mut out = Vec::with_capacity(n);
    let mut max = 0u64;
    for k in 1..=n {
        // The k x k subtable adds row k and column k.
        let new_row = t.rows[k - 1][..k].iter().copied();
        let new_col = t.rows[..k].iter().map(|r| r[k - 1]);
        max = new_row.chain(new_col).fold(max, u64::max);
        out.push(max.checked_add(k as u64).ok_or_else(|| Error::Overflow(alloc::format!("y_{k}")))?);
    }
    Ok(out)
}

fn check_increasing(ks: &[u64]) -> Result<()> {
    if ks.first() == Some(&0) || ks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInstance(alloc::string::String::from(
            "indices must be positive and strictly increasing",
        )));
    }
    Ok(())
}

/// Digits `1..=count` of `sum 10^(-k_n)`. The list must reach at least
/// position `count`, since later indices could still contribute.
pub fn number_from_indices(ks: &[u64], count: u64) -> Result<Vec<u8>> {
    check_increasing(ks)?;
    let covered = ks.last().copied().unwrap_or(0);
    if count > covered {
        return Err(Error::InsufficientIndices { requested: count, covered });
    }
    Ok(digits_of_indices(ks, count))
}

/// Same as [`number_from_indices`] for a list known to be complete: every
/// position past the last index is 0.
pub fn number_from_finite_indices(ks: &[u64], count: u64) -> Result<Vec<u8>> {
    check_increasing(ks)?;
    Ok(digits_of_indices(ks, count))
}

fn digits_of_indices(ks: &[u64], count: u64) -> Vec<u8> {
    let mut out = Vec::with_capacity(count as usize);
    let mut it = ks.iter().peekable();
    for i in 1..=count {
        if it.peek() == Some(&&i) {
            it.next();
            out.push(1);
        } else {
            out.push(0);
        }
    }
    out
}

/// Positions of the first `count` ones among digits `1..=bound`.
pub fn indices_from_number(d: &mut DigitStream, count: usize, bound: u64) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(count);
    let mut i = 1;
    while out.len() < count {
        if i > bound {
            return Err(Error::SearchBoundExceeded { wanted: count, found: out.len(), bound });
        }
        match d.digit(i) {
            0 => {}
            1 => out.push(i),
            digit => return Err(Error::InvalidDigit { position: i, digit }),
        }
        i += 1;
    }
    Ok(out)
}
