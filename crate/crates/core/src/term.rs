//! Relation terms: generator relations combined with complement, union,
//! adjacent transposition, set multiplication by the line (lift) and
//! projection of the last coordinate.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::formula::{Formula, PolyFormula, Relation};
use crate::poly::{Poly, Var};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum GeneratorKind {
    /// `{(x, y, z) | x + y = z}`
    Add,
    /// `{(x, y, z) | x * y = z}`
    Mul,
    /// `{(x, y) | x <= y}`
    Leq,
    /// The natural numbers as a unary relation.
    Nat,
}

impl GeneratorKind {
    pub fn arity(self) -> u32 {
        match self {
            GeneratorKind::Add | GeneratorKind::Mul => 3,
            GeneratorKind::Leq => 2,
            GeneratorKind::Nat => 1,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            GeneratorKind::Add => "add",
            GeneratorKind::Mul => "mul",
            GeneratorKind::Leq => "leq",
            GeneratorKind::Nat => "nat",
        }
    }

    pub fn from_keyword(word: &str) -> Option<GeneratorKind> {
        match word {
            "add" => Some(GeneratorKind::Add),
            "mul" => Some(GeneratorKind::Mul),
            "leq" => Some(GeneratorKind::Leq),
            "nat" => Some(GeneratorKind::Nat),
            _ => None,
        }
    }
}

/// Node shape passed to [`build_term`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NodeTag {
    Base(GeneratorKind),
    Complement,
    Union,
    Swap,
    Lift,
    Project,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum TermKind {
    Base(GeneratorKind),
    Complement(RelationTerm),
    Union(RelationTerm, RelationTerm),
    /// Exchanges coordinates `position` and `position + 1` (1-based).
    Swap(RelationTerm, u32),
    /// Cartesian product with the line; the new coordinate is last.
    Lift(RelationTerm),
    /// Existential projection of the last coordinate.
    Project(RelationTerm),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Node {
    kind: TermKind,
    arity: u32,
}

/// Immutable, cheaply clonable relation term with cached arity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RelationTerm(Arc<Node>);

impl RelationTerm {
    pub fn base(g: GeneratorKind) -> RelationTerm {
        RelationTerm(Arc::new(Node { kind: TermKind::Base(g), arity: g.arity() }))
    }

    pub fn complement(t: &RelationTerm) -> RelationTerm {
        let arity = t.arity();
        RelationTerm(Arc::new(Node { kind: TermKind::Complement(t.clone()), arity }))
    }

    pub fn union(a: &RelationTerm, b: &RelationTerm) -> Result<RelationTerm> {
        if a.arity() != b.arity() {
            return Err(Error::ArityMismatch(format!("union of arities {} and {}", a.arity(), b.arity())));
        }
        let arity = a.arity();
        Ok(RelationTerm(Arc::new(Node { kind: TermKind::Union(a.clone(), b.clone()), arity })))
    }

    pub fn swap(t: &RelationTerm, position: u32) -> Result<RelationTerm> {
        let arity = t.arity();
        if position < 1 || position >= arity {
            return Err(Error::ArityMismatch(format!(
                "swap position {position} outside 1..={} for arity {arity}",
                arity.saturating_sub(1)
            )));
        }
        Ok(RelationTerm(Arc::new(Node { kind: TermKind::Swap(t.clone(), position), arity })))
    }

    pub fn lift(t: &RelationTerm) -> RelationTerm {
        let arity = t.arity() + 1;
        RelationTerm(Arc::new(Node { kind: TermKind::Lift(t.clone()), arity }))
    }

    pub fn project(t: &RelationTerm) -> Result<RelationTerm> {
        if t.arity() < 2 {
            return Err(Error::ArityMismatch(String::from("projection of a unary relation")));
        }
        let arity = t.arity() - 1;
        Ok(RelationTerm(Arc::new(Node { kind: TermKind::Project(t.clone()), arity })))
    }

    /// Intersection expanded as the complement of the union of complements.
    pub fn intersection(a: &RelationTerm, b: &RelationTerm) -> Result<RelationTerm> {
        let u = RelationTerm::union(&RelationTerm::complement(a), &RelationTerm::complement(b))?;
        Ok(RelationTerm::complement(&u))
    }

    pub fn kind(&self) -> &TermKind {
        &self.0.kind
    }

    pub fn arity(&self) -> u32 {
        self.0.arity
    }

    /// Arity recomputed bottom-up, ignoring the cache.
    pub fn recomputed_arity(&self) -> u32 {
        match self.kind() {
            TermKind::Base(g) => g.arity(),
            TermKind::Complement(t) | TermKind::Swap(t, _) => t.recomputed_arity(),
            TermKind::Union(a, _) => a.recomputed_arity(),
            TermKind::Lift(t) => t.recomputed_arity() + 1,
            TermKind::Project(t) => t.recomputed_arity() - 1,
        }
    }

    /// Number of non-base nodes.
    pub fn operation_count(&self) -> usize {
        match self.kind() {
            TermKind::Base(_) => 0,
            TermKind::Complement(t) | TermKind::Swap(t, _) | TermKind::Lift(t) | TermKind::Project(t) => {
                1 + t.operation_count()
            }
            TermKind::Union(a, b) => 1 + a.operation_count() + b.operation_count(),
        }
    }

    pub fn project_count(&self) -> usize {
        match self.kind() {
            TermKind::Base(_) => 0,
            TermKind::Complement(t) | TermKind::Swap(t, _) | TermKind::Lift(t) => t.project_count(),
            TermKind::Project(t) => 1 + t.project_count(),
            TermKind::Union(a, b) => a.project_count() + b.project_count(),
        }
    }

    pub fn mentions(&self, g: GeneratorKind) -> bool {
        match self.kind() {
            TermKind::Base(h) => *h == g,
            TermKind::Complement(t) | TermKind::Swap(t, _) | TermKind::Lift(t) | TermKind::Project(t) => t.mentions(g),
            TermKind::Union(a, b) => a.mentions(g) || b.mentions(g),
        }
    }

    /// Canonical s-expression text.
    pub fn render(&self) -> String {
        let mut s = String::new();
        self.render_into(&mut s);
        s
    }

    fn render_into(&self, s: &mut String) {
        match self.kind() {
            TermKind::Base(g) => {
                s.push_str("(base ");
                s.push_str(g.keyword());
                s.push(')');
            }
            TermKind::Complement(t) => {
                s.push_str("(compl ");
                t.render_into(s);
                s.push(')');
            }
            TermKind::Union(a, b) => {
                s.push_str("(union ");
                a.render_into(s);
                s.push(' ');
                b.render_into(s);
                s.push(')');
            }
            TermKind::Swap(t, p) => {
                s.push_str(&format!("(swap {p} "));
                t.render_into(s);
                s.push(')');
            }
            TermKind::Lift(t) => {
                s.push_str("(lift ");
                t.render_into(s);
                s.push(')');
            }
            TermKind::Project(t) => {
                s.push_str("(proj ");
                t.render_into(s);
                s.push(')');
            }
        }
    }

    /// First-order formula over `x1..x{arity}` denoting the same relation.
    ///
    /// Complement becomes negation, union disjunction, a swap renames the
    /// two coordinates, a lift leaves its new coordinate unconstrained and
    /// each projection introduces one existential quantifier.
    pub fn to_poly_formula(&self) -> Result<PolyFormula> {
        if self.mentions(GeneratorKind::Nat) {
            return Err(Error::NonSemialgebraic);
        }
        let vars: Vec<Var> = (1..=self.arity()).collect();
        let mut next = self.arity() + 1;
        let f = self.translate(&vars, &mut next);
        Ok(f.to_prenex(self.arity()))
    }

    fn translate(&self, vars: &[Var], next: &mut Var) -> Formula {
        match self.kind() {
            TermKind::Base(g) => {
                let x = |i: usize| Poly::var(vars[i]);
                match g {
                    GeneratorKind::Add => Formula::atom(x(0).add(&x(1)).sub(&x(2)), Relation::Eq),
                    GeneratorKind::Mul => Formula::atom(x(0).mul(&x(1)).sub(&x(2)), Relation::Eq),
                    GeneratorKind::Leq => Formula::atom(x(1).sub(&x(0)), Relation::Ge),
                    GeneratorKind::Nat => unreachable!("checked by to_poly_formula"),
                }
            }
            TermKind::Complement(t) => Formula::not(t.translate(vars, next)),
            TermKind::Union(a, b) => Formula::Or(vec![a.translate(vars, next), b.translate(vars, next)]),
            TermKind::Swap(t, p) => {
                let mut swapped = vars.to_vec();
                swapped.swap(*p as usize - 1, *p as usize);
                t.translate(&swapped, next)
            }
            TermKind::Lift(t) => t.translate(&vars[..vars.len() - 1], next),
            TermKind::Project(t) => {
                let fresh = *next;
                *next += 1;
                let mut extended = vars.to_vec();
                extended.push(fresh);
                Formula::exists(fresh, t.translate(&extended, next))
            }
        }
    }
}

impl fmt::Debug for RelationTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for RelationTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Builds one node, checking child count, parameter and arity side
/// conditions.
pub fn build_term(tag: NodeTag, children: &[RelationTerm], param: Option<u32>) -> Result<RelationTerm> {
    let want = match tag {
        NodeTag::Base(_) => 0,
        NodeTag::Union => 2,
        _ => 1,
    };
    if children.len() != want {
        return Err(Error::ArityMismatch(format!("{tag:?} takes {want} operand(s), got {}", children.len())));
    }
    if matches!(tag, NodeTag::Swap) != param.is_some() {
        return Err(Error::ArityMismatch(format!("{tag:?}: parameter mismatch")));
    }
    match tag {
        NodeTag::Base(g) => Ok(RelationTerm::base(g)),
        NodeTag::Complement => Ok(RelationTerm::complement(&children[0])),
        NodeTag::Union => RelationTerm::union(&children[0], &children[1]),
        NodeTag::Swap => RelationTerm::swap(&children[0], param.unwrap_or(0)),
        NodeTag::Lift => Ok(RelationTerm::lift(&children[0])),
        NodeTag::Project => RelationTerm::project(&children[0]),
    }
}
