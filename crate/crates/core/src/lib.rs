//! Exact engine for first-order definable relations over the reals.
//!
//! Relations are built from generator relations (addition, multiplication,
//! order, naturality) with five operations: complement, union, adjacent
//! transposition, set multiplication by the line, and projection. The
//! semialgebraic fragment is decided by virtual-substitution quantifier
//! elimination, definable numbers come out as exact algebraic numbers, and
//! the digit-level constructions (interleaving, diagonalization, overtaking
//! sequences, bounded Diophantine search) run in exact integer arithmetic.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algnum;
pub mod chaitin;
pub mod codec;
pub mod diagonal;
pub mod digits;
pub mod enumerator;
pub mod error;
pub mod formula;
pub mod overtake;
pub mod parse;
pub mod poly;
pub mod qe;
pub mod rational;
pub mod term;
pub mod upoly;

pub use algnum::AlgebraicNumber;
pub use digits::DigitStream;
pub use enumerator::{BlockBoundaries, Instruction};
pub use error::{Error, Result};
pub use formula::{Atom, Matrix, PolyFormula, Quantifier, Relation};
pub use poly::{Poly, Var};
pub use term::{GeneratorKind, RelationTerm, TermKind};
