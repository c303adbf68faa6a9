//! First-order formulas over integer polynomial sign conditions.
//!
//! [`Formula`] allows quantifiers anywhere and is what the parser and the
//! term translation produce; [`PolyFormula`] is its prenex form, a
//! quantifier prefix over a quantifier-free [`Matrix`].

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::poly::{Poly, Var};
use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Relation {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl Relation {
    pub fn negate(self) -> Relation {
        match self {
            Relation::Eq => Relation::Ne,
            Relation::Ne => Relation::Eq,
            Relation::Lt => Relation::Ge,
            Relation::Ge => Relation::Lt,
            Relation::Gt => Relation::Le,
            Relation::Le => Relation::Gt,
        }
    }

    /// Relation satisfied by `-p` exactly when `self` is satisfied by `p`.
    pub fn mirror(self) -> Relation {
        match self {
            Relation::Lt => Relation::Gt,
            Relation::Gt => Relation::Lt,
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
            r => r,
        }
    }

    pub fn holds(self, sign: Ordering) -> bool {
        match self {
            Relation::Eq => sign == Ordering::Equal,
            Relation::Ne => sign != Ordering::Equal,
            Relation::Lt => sign == Ordering::Less,
            Relation::Le => sign != Ordering::Greater,
            Relation::Gt => sign == Ordering::Greater,
            Relation::Ge => sign != Ordering::Less,
        }
    }

    /// `=`, `<=`, `>=` are weak: they hold at a root of their polynomial.
    pub fn is_weak(self) -> bool {
        matches!(self, Relation::Eq | Relation::Le | Relation::Ge)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Ne => "!=",
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
        }
    }
}

/// Sign condition `poly rel 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Atom {
    pub poly: Poly,
    pub rel: Relation,
}

impl Atom {
    pub fn new(poly: Poly, rel: Relation) -> Atom {
        Atom { poly, rel }
    }

    /// Content-free polynomial with positive leading coefficient; the
    /// relation is mirrored when the polynomial is negated.
    pub fn normalized(&self) -> Atom {
        let (poly, negated) = self.poly.normalize();
        let rel = if negated { self.rel.mirror() } else { self.rel };
        Atom { poly, rel }
    }

    pub fn negate(&self) -> Atom {
        Atom { poly: self.poly.clone(), rel: self.rel.negate() }
    }

    /// Truth value if the polynomial is constant.
    pub fn constant_truth(&self) -> Option<bool> {
        self.poly.as_constant().map(|c| self.rel.holds(c.cmp(&num_bigint::BigInt::from(0))))
    }

    pub fn eval(&self, at: &dyn Fn(Var) -> Rational) -> bool {
        let v = self.poly.eval(at);
        self.rel.holds(v.cmp(&Rational::from_integer(0.into())))
    }

    pub fn render(&self, name: &dyn Fn(Var) -> String) -> String {
        format!("{} {} 0", self.poly.render(name), self.rel.symbol())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Quantifier {
    Exists,
    Forall,
}

impl Quantifier {
    pub fn dual(self) -> Quantifier {
        match self {
            Quantifier::Exists => Quantifier::Forall,
            Quantifier::Forall => Quantifier::Exists,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::Exists => "exists",
            Quantifier::Forall => "forall",
        }
    }
}

/// Quantifier-free boolean combination of atoms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Matrix {
    True,
    False,
    Atom(Atom),
    Not(Box<Matrix>),
    And(Vec<Matrix>),
    Or(Vec<Matrix>),
}

impl Matrix {
    pub fn atom(poly: Poly, rel: Relation) -> Matrix {
        Matrix::Atom(Atom::new(poly, rel))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(m: Matrix) -> Matrix {
        Matrix::Not(Box::new(m))
    }

    pub fn eval(&self, at: &dyn Fn(Var) -> Rational) -> bool {
        match self {
            Matrix::True => true,
            Matrix::False => false,
            Matrix::Atom(a) => a.eval(at),
            Matrix::Not(m) => !m.eval(at),
            Matrix::And(ms) => ms.iter().all(|m| m.eval(at)),
            Matrix::Or(ms) => ms.iter().any(|m| m.eval(at)),
        }
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            Matrix::Atom(a) => out.push(a),
            Matrix::Not(m) => m.collect_atoms(out),
            Matrix::And(ms) | Matrix::Or(ms) => ms.iter().for_each(|m| m.collect_atoms(out)),
            Matrix::True | Matrix::False => {}
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.atoms().iter().flat_map(|a| a.poly.vars()).collect()
    }

    pub fn is_closed(&self) -> bool {
        self.atoms().iter().all(|a| a.poly.is_constant())
    }

    /// Negation normal form: `Not` is pushed into the atoms.
    pub fn nnf(&self) -> Matrix {
        self.nnf_signed(false)
    }

    fn nnf_signed(&self, negated: bool) -> Matrix {
        match (self, negated) {
            (Matrix::True, false) | (Matrix::False, true) => Matrix::True,
            (Matrix::True, true) | (Matrix::False, false) => Matrix::False,
            (Matrix::Atom(a), false) => Matrix::Atom(a.clone()),
            (Matrix::Atom(a), true) => Matrix::Atom(a.negate()),
            (Matrix::Not(m), n) => m.nnf_signed(!n),
            (Matrix::And(ms), false) | (Matrix::Or(ms), true) => {
                Matrix::And(ms.iter().map(|m| m.nnf_signed(negated)).collect())
            }
            (Matrix::Or(ms), false) | (Matrix::And(ms), true) => {
                Matrix::Or(ms.iter().map(|m| m.nnf_signed(negated)).collect())
            }
        }
    }

    /// Normalizes atoms, folds constants, flattens nested connectives,
    /// removes duplicates and detects complementary atom pairs.
    pub fn simplify(&self) -> Matrix {
        match self {
            Matrix::True | Matrix::False => self.clone(),
            Matrix::Atom(a) => {
                let a = a.normalized();
                match a.constant_truth() {
                    Some(true) => Matrix::True,
                    Some(false) => Matrix::False,
                    None => Matrix::Atom(a),
                }
            }
            Matrix::Not(m) => match m.simplify() {
                Matrix::True => Matrix::False,
                Matrix::False => Matrix::True,
                Matrix::Atom(a) => Matrix::Atom(a.negate()),
                Matrix::Not(inner) => *inner,
                other => Matrix::not(other),
            },
            Matrix::And(ms) => simplify_junction(ms, true),
            Matrix::Or(ms) => simplify_junction(ms, false),
        }
    }

    /// Applies `f` to every atom.
    pub fn map_atoms(&self, f: &mut dyn FnMut(&Atom) -> Matrix) -> Matrix {
        match self {
            Matrix::True | Matrix::False => self.clone(),
            Matrix::Atom(a) => f(a),
            Matrix::Not(m) => Matrix::not(m.map_atoms(f)),
            Matrix::And(ms) => Matrix::And(ms.iter().map(|m| m.map_atoms(f)).collect()),
            Matrix::Or(ms) => Matrix::Or(ms.iter().map(|m| m.map_atoms(f)).collect()),
        }
    }

    pub fn rename(&self, f: &dyn Fn(Var) -> Var) -> Matrix {
        self.map_atoms(&mut |a| Matrix::Atom(Atom::new(a.poly.rename(f), a.rel)))
    }

    pub fn render(&self, name: &dyn Fn(Var) -> String) -> String {
        match self {
            Matrix::True => String::from("true"),
            Matrix::False => String::from("false"),
            Matrix::Atom(a) => a.render(name),
            Matrix::Not(m) => format!("not {}", m.render_child(name)),
            Matrix::And(ms) => join(ms, " and ", name),
            Matrix::Or(ms) => join(ms, " or ", name),
        }
    }

    fn render_child(&self, name: &dyn Fn(Var) -> String) -> String {
        match self {
            Matrix::And(ms) | Matrix::Or(ms) if ms.len() > 1 => format!("({})", self.render(name)),
            Matrix::And(_) | Matrix::Or(_) => self.render(name),
            Matrix::Atom(_) => format!("({})", self.render(name)),
            _ => self.render(name),
        }
    }
}

fn join(ms: &[Matrix], sep: &str, name: &dyn Fn(Var) -> String) -> String {
    if ms.is_empty() {
        return String::from(if sep.contains("and") { "true" } else { "false" });
    }
    let parts: Vec<String> = ms
        .iter()
        .map(|m| match m {
            Matrix::Atom(a) => a.render(name),
            _ => m.render_child(name),
        })
        .collect();
    parts.join(sep)
}

fn simplify_junction(ms: &[Matrix], conj: bool) -> Matrix {
    let (absorbing, neutral) = if conj { (Matrix::False, Matrix::True) } else { (Matrix::True, Matrix::False) };
    let mut out: Vec<Matrix> = Vec::new();
    let mut stack: Vec<Matrix> = ms.iter().rev().map(Matrix::simplify).collect();
    while let Some(m) = stack.pop() {
        match m {
            ref x if *x == absorbing => return absorbing,
            ref x if *x == neutral => {}
            Matrix::And(inner) if conj => stack.extend(inner.into_iter().rev()),
            Matrix::Or(inner) if !conj => stack.extend(inner.into_iter().rev()),
            other => {
                if let Matrix::Atom(a) = &other {
                    let neg = Matrix::Atom(a.negate());
                    if out.contains(&neg) {
                        return absorbing;
                    }
                }
                if !out.contains(&other) {
                    out.push(other);
                }
            }
        }
    }
    match out.len() {
        0 => neutral,
        1 => out.pop().unwrap(),
        _ if conj => Matrix::And(out),
        _ => Matrix::Or(out),
    }
}

/// Formula with quantifiers allowed at any depth.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Quant(Quantifier, Var, Box<Formula>),
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn exists(v: Var, f: Formula) -> Formula {
        Formula::Quant(Quantifier::Exists, v, Box::new(f))
    }

    pub fn forall(v: Var, f: Formula) -> Formula {
        Formula::Quant(Quantifier::Forall, v, Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Or(alloc::vec![Formula::not(a), b])
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::And(alloc::vec![Formula::implies(a.clone(), b.clone()), Formula::implies(b, a)])
    }

    pub fn atom(poly: Poly, rel: Relation) -> Formula {
        Formula::Atom(Atom::new(poly, rel))
    }

    /// Free variables.
    pub fn free_vars(&self) -> BTreeSet<Var> {
        match self {
            Formula::True | Formula::False => BTreeSet::new(),
            Formula::Atom(a) => a.poly.vars(),
            Formula::Not(f) => f.free_vars(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().flat_map(Formula::free_vars).collect(),
            Formula::Quant(_, v, f) => {
                let mut s = f.free_vars();
                s.remove(v);
                s
            }
        }
    }

    /// Prenex form over `arity` free variables; bound variables are renamed
    /// apart to indices above every variable in use.
    pub fn to_prenex(&self, arity: u32) -> PolyFormula {
        let top = self.free_vars().into_iter().max().unwrap_or(0);
        let mut next = top.max(arity) + 1;
        let renamed = self.rename_bound(&BTreeMap::new(), &mut next);
        let (prefix, matrix) = renamed.pull_quantifiers();
        PolyFormula { arity, prefix, matrix }
    }

    fn rename_bound(&self, env: &BTreeMap<Var, Var>, next: &mut Var) -> Formula {
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Atom(a) => Formula::Atom(Atom::new(a.poly.rename(|v| *env.get(&v).unwrap_or(&v)), a.rel)),
            Formula::Not(f) => Formula::not(f.rename_bound(env, next)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.rename_bound(env, next)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.rename_bound(env, next)).collect()),
            Formula::Quant(q, v, f) => {
                let fresh = *next;
                *next += 1;
                let mut inner = env.clone();
                inner.insert(*v, fresh);
                Formula::Quant(*q, fresh, Box::new(f.rename_bound(&inner, next)))
            }
        }
    }

    fn pull_quantifiers(&self) -> (Vec<(Quantifier, Var)>, Matrix) {
        match self {
            Formula::True => (Vec::new(), Matrix::True),
            Formula::False => (Vec::new(), Matrix::False),
            Formula::Atom(a) => (Vec::new(), Matrix::Atom(a.clone())),
            Formula::Not(f) => {
                let (prefix, m) = f.pull_quantifiers();
                (prefix.into_iter().map(|(q, v)| (q.dual(), v)).collect(), Matrix::not(m))
            }
            Formula::And(fs) | Formula::Or(fs) => {
                let mut prefix = Vec::new();
                let mut parts = Vec::new();
                for f in fs {
                    let (p, m) = f.pull_quantifiers();
                    prefix.extend(p);
                    parts.push(m);
                }
                let m = if matches!(self, Formula::And(_)) { Matrix::And(parts) } else { Matrix::Or(parts) };
                (prefix, m)
            }
            Formula::Quant(q, v, f) => {
                let (mut prefix, m) = f.pull_quantifiers();
                prefix.insert(0, (*q, *v));
                (prefix, m)
            }
        }
    }
}

/// Prenex formula denoting an `arity`-ary relation on its free variables
/// `1..=arity`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyFormula {
    pub arity: u32,
    pub prefix: Vec<(Quantifier, Var)>,
    pub matrix: Matrix,
}

impl PolyFormula {
    pub fn quantifier_free(arity: u32, matrix: Matrix) -> PolyFormula {
        PolyFormula { arity, prefix: Vec::new(), matrix }
    }

    pub fn is_quantifier_free(&self) -> bool {
        self.prefix.is_empty()
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let bound: BTreeSet<Var> = self.prefix.iter().map(|&(_, v)| v).collect();
        self.matrix.vars().into_iter().filter(|v| !bound.contains(v)).collect()
    }

    /// Nested formula equivalent to this prenex formula.
    pub fn to_formula(&self) -> Formula {
        let mut f = matrix_to_formula(&self.matrix);
        for &(q, v) in self.prefix.iter().rev() {
            f = Formula::Quant(q, v, Box::new(f));
        }
        f
    }

    /// Closes the formula over its free variables with a fixed assignment.
    pub fn instantiate(&self, values: &[Rational]) -> PolyFormula {
        let n = values.len() as u32;
        let mut matrix = self.matrix.clone();
        for (i, q) in values.iter().enumerate() {
            let v = i as Var + 1;
            matrix = matrix.map_atoms(&mut |a| Matrix::Atom(Atom::new(a.poly.substitute_rational(v, q), a.rel)));
        }
        PolyFormula { arity: self.arity.saturating_sub(n), prefix: self.prefix.clone(), matrix }
    }

    pub fn render(&self, name: &dyn Fn(Var) -> String) -> String {
        let mut s = String::new();
        for &(q, v) in &self.prefix {
            s.push_str(q.keyword());
            s.push(' ');
            s.push_str(&name(v));
            s.push_str(" . ");
        }
        s.push_str(&self.matrix.render(name));
        s
    }

    pub fn render_default(&self) -> String {
        self.render(&default_name)
    }
}

pub fn default_name(v: Var) -> String {
    format!("x{v}")
}

fn matrix_to_formula(m: &Matrix) -> Formula {
    match m {
        Matrix::True => Formula::True,
        Matrix::False => Formula::False,
        Matrix::Atom(a) => Formula::Atom(a.clone()),
        Matrix::Not(inner) => Formula::not(matrix_to_formula(inner)),
        Matrix::And(ms) => Formula::And(ms.iter().map(matrix_to_formula).collect()),
        Matrix::Or(ms) => Formula::Or(ms.iter().map(matrix_to_formula).collect()),
    }
}
