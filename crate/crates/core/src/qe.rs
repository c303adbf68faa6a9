//! Quantifier elimination for the semialgebraic fragment.
//!
//! Quantified variables of degree at most 2 are eliminated by virtual
//! substitution: `exists v . phi` (with `phi` in negation normal form) is
//! replaced by a finite disjunction over the test points `-inf`, the roots
//! of weak atoms and the roots of strict atoms shifted by an infinitesimal.
//! Root expressions `(alpha + beta*sqrt(delta)) / gamma` are substituted
//! symbolically and the square root is removed by sign case analysis.
//!
//! A variable of higher degree is handled only when it is the last variable
//! left, by exact root isolation and sampling of the resulting cells.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algnum::AlgebraicNumber;
use crate::error::{Error, Result};
use crate::formula::{Atom, Formula, Matrix, PolyFormula, Quantifier, Relation};
use crate::poly::{Poly, Var};
use crate::rational::{self, Rational};
use crate::upoly::UPoly;

/// Quantifier-free equivalent over the same free variables. Quantifiers are
/// eliminated innermost first.
pub fn eliminate(f: &PolyFormula) -> Result<PolyFormula> {
    let mut m = f.matrix.nnf().simplify();
    for &(q, v) in f.prefix.iter().rev() {
        m = match q {
            Quantifier::Exists => exists(&m, v)?,
            Quantifier::Forall => forall(&m, v)?,
        };
    }
    Ok(PolyFormula::quantifier_free(f.arity, m))
}

/// Truth value of a sentence.
pub fn decide(f: &PolyFormula) -> Result<bool> {
    if !f.free_vars().is_empty() {
        return Err(Error::NotClosed);
    }
    let m = eliminate(f)?.matrix.simplify();
    Ok(m.eval(&|_| Rational::zero()))
}

/// `exists v . m` for `m` in negation normal form.
fn exists(m: &Matrix, v: Var) -> Result<Matrix> {
    match m {
        Matrix::True | Matrix::False => return Ok(m.clone()),
        Matrix::Or(parts) => {
            let parts = parts.iter().map(|p| exists(p, v)).collect::<Result<Vec<_>>>()?;
            return Ok(Matrix::Or(parts).simplify());
        }
        Matrix::And(parts) => {
            let (with, without): (Vec<Matrix>, Vec<Matrix>) =
                parts.iter().cloned().partition(|p| p.vars().contains(&v));
            if !without.is_empty() && !with.is_empty() {
                let mut out = without;
                out.push(exists(&Matrix::And(with).simplify(), v)?);
                return Ok(Matrix::And(out).simplify());
            }
        }
        _ => {}
    }
    let vars = m.vars();
    if !vars.contains(&v) {
        return Ok(m.clone());
    }
    let degree = m.atoms().iter().map(|a| a.poly.degree_in(v)).max().unwrap_or(0);
    if degree <= 2 {
        return Ok(virtual_substitution(m, v));
    }
    if vars.len() == 1 {
        let nonempty = !describe_matrix(m, v).is_empty();
        return Ok(if nonempty { Matrix::True } else { Matrix::False });
    }
    Err(Error::UnsupportedDegree { variable: v, degree })
}

fn forall(m: &Matrix, v: Var) -> Result<Matrix> {
    let negated = Matrix::not(m.clone()).nnf().simplify();
    Ok(Matrix::not(exists(&negated, v)?).nnf().simplify())
}

/// Root expression `(alpha + beta*sqrt(delta)) / gamma`.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Root {
    alpha: Poly,
    beta: Poly,
    gamma: Poly,
    delta: Poly,
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum TestPoint {
    NegInf,
    /// A root, shifted by a positive infinitesimal when `eps` is set, valid
    /// under `guard`.
    At {
        guard: Matrix,
        root: Root,
        eps: bool,
    },
}

fn virtual_substitution(m: &Matrix, v: Var) -> Matrix {
    let mut atoms: Vec<&Atom> = Vec::new();
    for a in m.atoms() {
        if a.poly.degree_in(v) > 0 && !atoms.contains(&a) {
            atoms.push(a);
        }
    }
    let mut points = vec![TestPoint::NegInf];
    let mut push = |p: TestPoint| {
        if !points.contains(&p) {
            points.push(p);
        }
    };
    for a in atoms {
        let eps = !a.rel.is_weak();
        let cs = a.poly.coefficients_in(v);
        let lin_guard = |extra: Vec<Matrix>| {
            let mut g = extra;
            g.push(Matrix::atom(cs[1].clone(), Relation::Ne));
            Matrix::And(g).simplify()
        };
        if cs.len() == 2 {
            push(TestPoint::At { guard: lin_guard(vec![]), root: linear_root(&cs[0], &cs[1]), eps });
        } else {
            let (c, b, a2) = (&cs[0], &cs[1], &cs[2]);
            let a_zero = Matrix::atom(a2.clone(), Relation::Eq);
            push(TestPoint::At { guard: lin_guard(vec![a_zero]), root: linear_root(c, b), eps });
            let delta = b.mul(b).sub(&a2.mul(c).scale(&BigInt::from(4)));
            let guard =
                Matrix::And(vec![Matrix::atom(a2.clone(), Relation::Ne), Matrix::atom(delta.clone(), Relation::Ge)])
                    .simplify();
            for sign in [1i64, -1] {
                let root = Root {
                    alpha: b.neg(),
                    beta: Poly::int(sign),
                    gamma: a2.scale(&BigInt::from(2)),
                    delta: delta.clone(),
                };
                push(TestPoint::At { guard: guard.clone(), root, eps });
            }
        }
    }
    let mut disjuncts = Vec::with_capacity(points.len());
    for p in &points {
        let guard = match p {
            TestPoint::NegInf => Matrix::True,
            TestPoint::At { guard, .. } => guard.clone(),
        };
        if guard == Matrix::False {
            continue;
        }
        let body = m.map_atoms(&mut |a| substitute_atom(a, v, p));
        let d = Matrix::And(vec![guard, body]).simplify();
        if d == Matrix::True {
            return Matrix::True;
        }
        disjuncts.push(d);
    }
    Matrix::Or(disjuncts).simplify()
}

/// `-c / b`, with a constant denominator made positive and reduced.
fn linear_root(c: &Poly, b: &Poly) -> Root {
    let (mut alpha, mut gamma) = (c.neg(), b.clone());
    if let Some(k) = gamma.as_constant() {
        let g = num_integer::Integer::gcd(&alpha.content(), &k);
        let g = if k.is_negative() { -g } else { g };
        if !g.is_zero() && !g.is_one() {
            alpha = alpha.div_exact_by(&g);
            gamma = Poly::constant(&k / &g);
        }
    }
    Root { alpha, beta: Poly::zero(), gamma, delta: Poly::zero() }
}

fn substitute_atom(a: &Atom, v: Var, p: &TestPoint) -> Matrix {
    if a.poly.degree_in(v) == 0 {
        return Matrix::Atom(a.clone());
    }
    match p {
        TestPoint::NegInf => at_neg_inf(&a.poly, v, a.rel),
        TestPoint::At { root, eps: false, .. } => at_root(&a.poly, v, root, a.rel),
        TestPoint::At { root, eps: true, .. } => at_root_eps(&a.poly, v, root, a.rel),
    }
}

fn all_zero(cs: &[Poly]) -> Matrix {
    Matrix::And(cs.iter().map(|c| Matrix::atom(c.clone(), Relation::Eq)).collect())
}

fn any_nonzero(cs: &[Poly]) -> Matrix {
    Matrix::Or(cs.iter().map(|c| Matrix::atom(c.clone(), Relation::Ne)).collect())
}

fn at_neg_inf(p: &Poly, v: Var, rel: Relation) -> Matrix {
    let cs = p.coefficients_in(v);
    match rel {
        Relation::Eq => all_zero(&cs),
        Relation::Ne => any_nonzero(&cs),
        Relation::Gt => pos_at_neg_inf(&cs),
        Relation::Lt => pos_at_neg_inf(&cs.iter().map(Poly::neg).collect::<Vec<_>>()),
        Relation::Ge => Matrix::Or(vec![at_neg_inf(p, v, Relation::Gt), all_zero(&cs)]),
        Relation::Le => Matrix::Or(vec![at_neg_inf(p, v, Relation::Lt), all_zero(&cs)]),
    }
}

/// `p > 0` for all sufficiently negative values: the highest nonzero
/// coefficient `c_k` has `(-1)^k c_k > 0`.
fn pos_at_neg_inf(cs: &[Poly]) -> Matrix {
    let mut out = Vec::new();
    for k in 0..cs.len() {
        let mut conj: Vec<Matrix> = cs[k + 1..].iter().map(|c| Matrix::atom(c.clone(), Relation::Eq)).collect();
        let lead = if k % 2 == 1 { cs[k].neg() } else { cs[k].clone() };
        conj.push(Matrix::atom(lead, Relation::Gt));
        out.push(Matrix::And(conj));
    }
    Matrix::Or(out)
}

/// `p(e + eps) rel 0` for a root expression `e` and an infinitesimal
/// `eps > 0`.
fn at_root_eps(p: &Poly, v: Var, root: &Root, rel: Relation) -> Matrix {
    let cs = p.coefficients_in(v);
    match rel {
        Relation::Eq => all_zero(&cs),
        Relation::Ne => any_nonzero(&cs),
        Relation::Gt => pos_after_root(p, v, root),
        Relation::Lt => pos_after_root(&p.neg(), v, root),
        Relation::Ge => Matrix::Or(vec![pos_after_root(p, v, root), all_zero(&cs)]),
        Relation::Le => Matrix::Or(vec![pos_after_root(&p.neg(), v, root), all_zero(&cs)]),
    }
}

/// `p(e + eps) > 0`: either `p(e) > 0`, or `p(e) = 0` and the derivative is
/// positive just after `e`.
fn pos_after_root(p: &Poly, v: Var, root: &Root) -> Matrix {
    if p.degree_in(v) == 0 {
        return Matrix::atom(p.clone(), Relation::Gt);
    }
    Matrix::Or(vec![
        at_root(p, v, root, Relation::Gt),
        Matrix::And(vec![at_root(p, v, root, Relation::Eq), pos_after_root(&p.derivative(v), v, root)]),
    ])
}

/// `p(e) rel 0` for a root expression `e`.
fn at_root(p: &Poly, v: Var, root: &Root, rel: Relation) -> Matrix {
    let cs = p.coefficients_in(v);
    let k = cs.len() - 1;
    if k == 0 {
        return Matrix::atom(p.clone(), rel);
    }
    // Multiply by gamma^d with d >= k; d is even unless gamma is a known
    // constant, in which case its sign is folded into the relation.
    let (d, rel) = match root.gamma.as_constant() {
        Some(g) => {
            let flip = g.is_negative() && k % 2 == 1;
            (k, if flip { rel.mirror() } else { rel })
        }
        None => (k + k % 2, rel),
    };
    // (alpha + beta*sqrt(delta))^i as (A_i, B_i).
    let mut pw = (Poly::one(), Poly::zero());
    let mut big_a = Poly::zero();
    let mut big_b = Poly::zero();
    for (i, c) in cs.iter().enumerate() {
        if i > 0 {
            let (a0, b0) = pw;
            pw = (
                a0.mul(&root.alpha).add(&b0.mul(&root.beta).mul(&root.delta)),
                a0.mul(&root.beta).add(&b0.mul(&root.alpha)),
            );
        }
        if c.is_zero() {
            continue;
        }
        let g = root.gamma.pow((d - i) as u32);
        big_a = big_a.add(&c.mul(&pw.0).mul(&g));
        big_b = big_b.add(&c.mul(&pw.1).mul(&g));
    }
    sqrt_sign(&big_a, &big_b, &root.delta, rel)
}

/// `A + B*sqrt(delta) rel 0`, assuming `delta >= 0`.
fn sqrt_sign(a: &Poly, b: &Poly, delta: &Poly, rel: Relation) -> Matrix {
    if b.is_zero() {
        return Matrix::atom(a.clone(), rel);
    }
    let at = |p: &Poly, r| Matrix::atom(p.clone(), r);
    let disc = a.mul(a).sub(&b.mul(b).mul(delta));
    let lt = |a: &Poly, b: &Poly, disc: &Poly| {
        Matrix::Or(vec![
            Matrix::And(vec![at(a, Relation::Lt), Matrix::Or(vec![at(b, Relation::Le), at(disc, Relation::Gt)])]),
            Matrix::And(vec![at(b, Relation::Lt), at(disc, Relation::Lt)]),
        ])
    };
    let le = |a: &Poly, b: &Poly, disc: &Poly| {
        Matrix::Or(vec![
            Matrix::And(vec![at(a, Relation::Le), Matrix::Or(vec![at(b, Relation::Le), at(disc, Relation::Ge)])]),
            Matrix::And(vec![at(b, Relation::Le), at(disc, Relation::Le)]),
        ])
    };
    match rel {
        Relation::Eq => Matrix::And(vec![at(&a.mul(b), Relation::Le), at(&disc, Relation::Eq)]),
        Relation::Ne => Matrix::Or(vec![at(&a.mul(b), Relation::Gt), at(&disc, Relation::Ne)]),
        Relation::Lt => lt(a, b, &disc),
        Relation::Le => le(a, b, &disc),
        Relation::Gt => lt(&a.neg(), &b.neg(), &disc),
        Relation::Ge => le(&a.neg(), &b.neg(), &disc),
    }
}

/// One piece of a subset of the line.
#[derive(Clone, Debug)]
pub enum Component {
    Point(AlgebraicNumber),
    /// Open interval; `None` is an infinite end.
    Interval(Option<AlgebraicNumber>, Option<AlgebraicNumber>),
}

impl Component {
    pub fn contains(&self, q: &Rational) -> bool {
        match self {
            Component::Point(x) => x.cmp_rational(q) == Ordering::Equal,
            Component::Interval(lo, hi) => {
                lo.as_ref().is_none_or(|l| l.cmp_rational(q) == Ordering::Less)
                    && hi.as_ref().is_none_or(|h| h.cmp_rational(q) == Ordering::Greater)
            }
        }
    }

    pub fn render(&self) -> String {
        match self {
            Component::Point(x) => match x.as_rational() {
                Some(q) => format!("point {}", rational::render(q)),
                None => {
                    let (lo, hi) = x.interval();
                    format!(
                        "point poly=\"{}\" in ({},{})",
                        x.poly().render("x"),
                        rational::render(lo),
                        rational::render(hi)
                    )
                }
            },
            Component::Interval(lo, hi) => format!(
                "interval ({},{})",
                lo.as_ref().map_or(String::from("-inf"), render_endpoint),
                hi.as_ref().map_or(String::from("inf"), render_endpoint)
            ),
        }
    }
}

fn render_endpoint(x: &AlgebraicNumber) -> String {
    match x.as_rational() {
        Some(q) => rational::render(q),
        None => {
            let (lo, hi) = x.interval();
            format!("[{} in ({},{})]", x.poly().render("x"), rational::render(lo), rational::render(hi))
        }
    }
}

/// A subset of the line as sorted, disjoint components. Two components that
/// could be joined into one are always joined; an open interval and its own
/// endpoint stay separate.
#[derive(Clone, Debug, Default)]
pub struct UnarySetDescription {
    pub components: Vec<Component>,
}

impl UnarySetDescription {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.components.iter().any(|c| c.contains(q))
    }

    /// Every boundary point, ascending.
    pub fn boundary_points(&self) -> Vec<AlgebraicNumber> {
        let mut out: Vec<AlgebraicNumber> = Vec::new();
        for c in &self.components {
            let pts: Vec<&AlgebraicNumber> = match c {
                Component::Point(x) => vec![x],
                Component::Interval(lo, hi) => lo.iter().chain(hi.iter()).collect(),
            };
            for p in pts {
                if out.last().is_none_or(|l| l.compare(p) != Ordering::Equal) {
                    out.push(p.clone());
                }
            }
        }
        out
    }

    /// One component per line; `empty` for the empty set.
    pub fn render(&self) -> String {
        if self.components.is_empty() {
            return String::from("empty");
        }
        let lines: Vec<String> = self.components.iter().map(Component::render).collect();
        lines.join("\n")
    }
}

/// The set defined by a formula with one free variable `x1`.
pub fn describe_unary(f: &PolyFormula) -> Result<UnarySetDescription> {
    let free = f.free_vars();
    if f.arity != 1 || free.iter().any(|&v| v != 1) {
        return Err(Error::ArityMismatch(format!(
            "a unary formula is required, got arity {} with {} free variables",
            f.arity,
            free.len()
        )));
    }
    let m = eliminate(f)?.matrix;
    Ok(describe_matrix(&m, 1))
}

pub fn extract_singleton(d: &UnarySetDescription) -> Option<AlgebraicNumber> {
    match d.components.as_slice() {
        [Component::Point(x)] => Some(x.clone()),
        _ => None,
    }
}

/// Cell decomposition of a quantifier-free formula in the single variable
/// `v`.
fn describe_matrix(m: &Matrix, v: Var) -> UnarySetDescription {
    let mut roots: Vec<AlgebraicNumber> = Vec::new();
    let mut polys: Vec<UPoly> = Vec::new();
    for a in m.atoms() {
        let p = a.poly.to_upoly(v).expect("univariate atom");
        if p.deg() > 0 && !polys.contains(&p) {
            roots.extend(AlgebraicNumber::roots_of(&p));
            polys.push(p);
        }
    }
    roots.sort_by(|a, b| a.compare(b));
    roots.dedup_by(|a, b| a.compare(b) == Ordering::Equal);

    let holds_at_rational = |q: &Rational| m.eval(&|_| q.clone());
    let holds_at = |x: &AlgebraicNumber| match x.as_rational() {
        Some(q) => holds_at_rational(q),
        None => eval_at_algebraic(m, v, x),
    };
    // Cells alternate: interval 0, point 0, interval 1, ..., interval n.
    let n = roots.len();
    let mut truth = Vec::with_capacity(2 * n + 1);
    for j in 0..=n {
        let sample = match (j.checked_sub(1).map(|i| &roots[i]), roots.get(j)) {
            (None, None) => Rational::zero(),
            (None, Some(r)) => Rational::from_integer(r.interval().0.floor().to_integer() - 1),
            (Some(l), None) => Rational::from_integer(l.interval().1.ceil().to_integer() + 1),
            (Some(l), Some(r)) => l.rational_between(r),
        };
        truth.push(holds_at_rational(&sample));
        if j < n {
            truth.push(holds_at(&roots[j]));
        }
    }
    let point = |cell: usize| roots[(cell - 1) / 2].clone();
    let mut components = Vec::new();
    let mut cell = 0;
    while cell < truth.len() {
        if !truth[cell] {
            cell += 1;
            continue;
        }
        let start = cell;
        while cell + 1 < truth.len() && truth[cell + 1] {
            cell += 1;
        }
        let end = cell;
        cell += 1;
        if start % 2 == 1 {
            components.push(Component::Point(point(start)));
        }
        if start != end || start % 2 == 0 {
            let lo = if start % 2 == 0 { start.checked_sub(1).map(point) } else { Some(point(start)) };
            let hi = if end % 2 == 0 { (end / 2 < n).then(|| point(end + 1)) } else { Some(point(end)) };
            components.push(Component::Interval(lo, hi));
        }
        if end % 2 == 1 && end != start {
            components.push(Component::Point(point(end)));
        }
    }
    UnarySetDescription { components }
}

fn eval_at_algebraic(m: &Matrix, v: Var, x: &AlgebraicNumber) -> bool {
    match m {
        Matrix::True => true,
        Matrix::False => false,
        Matrix::Atom(a) => {
            let p = a.poly.to_upoly(v).expect("univariate atom");
            a.rel.holds(x.sign_of(&p))
        }
        Matrix::Not(inner) => !eval_at_algebraic(inner, v, x),
        Matrix::And(ms) => ms.iter().all(|m| eval_at_algebraic(m, v, x)),
        Matrix::Or(ms) => ms.iter().any(|m| eval_at_algebraic(m, v, x)),
    }
}

/// The sentence "exactly one `x1` satisfies `f`":
/// `(exists x . f(x)) and forall x y . (f(x) and f(y) -> x = y)`.
pub fn exists_unique(f: &PolyFormula) -> Result<PolyFormula> {
    let g = eliminate(f)?;
    let body = g.to_formula();
    let top = body.free_vars().into_iter().max().unwrap_or(0).max(1);
    let (x, y) = (top + 1, top + 2);
    let at = |w: Var| rename_free(&body, 1, w);
    let existence = Formula::exists(x, at(x));
    let diff = Poly::var(x).sub(&Poly::var(y));
    let uniqueness = Formula::forall(
        x,
        Formula::forall(y, Formula::implies(Formula::And(vec![at(x), at(y)]), Formula::atom(diff, Relation::Eq))),
    );
    Ok(Formula::And(vec![existence, uniqueness]).to_prenex(0))
}

fn rename_free(f: &Formula, from: Var, to: Var) -> Formula {
    let r = |v: Var| if v == from { to } else { v };
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(a) => Formula::Atom(Atom::new(a.poly.rename(r), a.rel)),
        Formula::Not(g) => Formula::not(rename_free(g, from, to)),
        Formula::And(gs) => Formula::And(gs.iter().map(|g| rename_free(g, from, to)).collect()),
        Formula::Or(gs) => Formula::Or(gs.iter().map(|g| rename_free(g, from, to)).collect()),
        Formula::Quant(q, v, g) if *v == from => Formula::Quant(*q, *v, g.clone()),
        Formula::Quant(q, v, g) => Formula::Quant(*q, *v, Box::new(rename_free(g, from, to))),
    }
}

/// Maximum degree of each quantified variable in the matrix.
pub fn quantified_degrees(f: &PolyFormula) -> BTreeSet<(Var, u32)> {
    f.prefix
        .iter()
        .map(|&(_, v)| (v, f.matrix.atoms().iter().map(|a| a.poly.degree_in(v)).max().unwrap_or(0)))
        .collect()
}
