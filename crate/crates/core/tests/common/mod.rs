//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use definability_core::formula::{Matrix, PolyFormula, Quantifier, Relation};
use definability_core::poly::{Poly, Var};
use definability_core::rational::Rational;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}

pub fn random_rational(r: &mut impl Rng, num: i64, den: i64) -> Rational {
    q(r.gen_range(-num..=num), r.gen_range(1..=den))
}

/// Rational strictly inside (0, 1).
pub fn random_unit_rational(r: &mut impl Rng, den: i64) -> Rational {
    let d = r.gen_range(2..=den);
    q(r.gen_range(1..d), d)
}

// ---------------------------------------------------------------------------
// Linear arithmetic: random instances and Fourier-Motzkin elimination.

/// `sum coeffs[i] * x_{i+1} + constant  rel  0`.
#[derive(Clone, Debug)]
pub struct LinAtom {
    pub coeffs: Vec<i64>,
    pub constant: i64,
    pub rel: Relation,
}

#[derive(Clone, Debug)]
pub enum LinTree {
    Atom(LinAtom),
    Not(Box<LinTree>),
    And(Vec<LinTree>),
    Or(Vec<LinTree>),
}

#[derive(Clone, Debug)]
pub struct LinInstance {
    pub nvars: usize,
    pub prefix: Vec<(Quantifier, Var)>,
    pub matrix: LinTree,
}

const RELS: [Relation; 6] = [Relation::Eq, Relation::Ne, Relation::Lt, Relation::Le, Relation::Gt, Relation::Ge];

fn random_atom(r: &mut impl Rng, nvars: usize) -> LinAtom {
    loop {
        let coeffs: Vec<i64> = (0..nvars).map(|_| if r.gen_bool(0.3) { 0 } else { r.gen_range(-3..=3) }).collect();
        if coeffs.iter().any(|&c| c != 0) {
            return LinAtom { coeffs, constant: r.gen_range(-5..=5), rel: RELS[r.gen_range(0..6)] };
        }
    }
}

fn random_tree(r: &mut impl Rng, nvars: usize, atoms: usize) -> LinTree {
    if atoms == 1 {
        let a = LinTree::Atom(random_atom(r, nvars));
        return if r.gen_bool(0.2) { LinTree::Not(Box::new(a)) } else { a };
    }
    let left = r.gen_range(1..atoms);
    let parts = vec![random_tree(r, nvars, left), random_tree(r, nvars, atoms - left)];
    match r.gen_range(0..5) {
        0 => LinTree::Not(Box::new(LinTree::And(parts))),
        1 | 2 => LinTree::And(parts),
        _ => LinTree::Or(parts),
    }
}

pub fn random_linear_sentence(r: &mut impl Rng) -> LinInstance {
    let nvars = r.gen_range(1..=3);
    let atoms = r.gen_range(1..=4);
    let prefix = (1..=nvars as Var)
        .map(|v| (if r.gen_bool(0.5) { Quantifier::Exists } else { Quantifier::Forall }, v))
        .collect();
    LinInstance { nvars, prefix, matrix: random_tree(r, nvars, atoms) }
}

impl LinAtom {
    pub fn to_poly(&self) -> Poly {
        let mut p = Poly::int(self.constant);
        for (i, &c) in self.coeffs.iter().enumerate() {
            p = p.add(&Poly::var(i as Var + 1).scale(&BigInt::from(c)));
        }
        p
    }
}

impl LinTree {
    pub fn to_matrix(&self) -> Matrix {
        match self {
            LinTree::Atom(a) => Matrix::atom(a.to_poly(), a.rel),
            LinTree::Not(t) => Matrix::not(t.to_matrix()),
            LinTree::And(ts) => Matrix::And(ts.iter().map(LinTree::to_matrix).collect()),
            LinTree::Or(ts) => Matrix::Or(ts.iter().map(LinTree::to_matrix).collect()),
        }
    }
}

impl LinInstance {
    pub fn to_poly_formula(&self) -> PolyFormula {
        PolyFormula { arity: 0, prefix: self.prefix.clone(), matrix: self.matrix.to_matrix() }
    }
}

/// `coeffs . x + constant  (< | <= | =)  0` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Cons {
    coeffs: Vec<Rational>,
    constant: Rational,
    strict: bool,
    equality: bool,
}

impl Cons {
    fn negated_expr(&self) -> (Vec<Rational>, Rational) {
        (self.coeffs.iter().map(|c| -c).collect(), -&self.constant)
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn constant_truth(&self) -> bool {
        let c = &self.constant;
        if self.equality {
            c.is_zero()
        } else if self.strict {
            c.is_negative()
        } else {
            !c.is_positive()
        }
    }
}

type Dnf = Vec<Vec<Cons>>;

fn lt(coeffs: Vec<Rational>, constant: Rational, strict: bool) -> Cons {
    Cons { coeffs, constant, strict, equality: false }
}

/// Disjunction of conjunctions equivalent to `expr rel 0`.
fn atom_dnf(coeffs: Vec<Rational>, constant: Rational, rel: Relation) -> Dnf {
    let neg_c: Vec<Rational> = coeffs.iter().map(|c| -c).collect();
    let neg_k = -&constant;
    match rel {
        Relation::Eq => vec![vec![Cons { coeffs, constant, strict: false, equality: true }]],
        Relation::Lt => vec![vec![lt(coeffs, constant, true)]],
        Relation::Le => vec![vec![lt(coeffs, constant, false)]],
        Relation::Gt => vec![vec![lt(neg_c, neg_k, true)]],
        Relation::Ge => vec![vec![lt(neg_c, neg_k, false)]],
        Relation::Ne => vec![vec![lt(coeffs, constant, true)], vec![lt(neg_c, neg_k, true)]],
    }
}

fn and_dnf(a: &Dnf, b: &Dnf) -> Dnf {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            let mut c = x.clone();
            for k in y {
                if !c.contains(k) {
                    c.push(k.clone());
                }
            }
            out.push(c);
        }
    }
    prune(out)
}

fn prune(d: Dnf) -> Dnf {
    let mut out: Dnf = Vec::new();
    for conj in d {
        let Some(conj) = tidy(conj) else { continue };
        if conj.is_empty() {
            return vec![vec![]];
        }
        if !satisfiable(&conj) {
            continue;
        }
        // absorption: a conjunction containing another one is redundant
        if out.iter().any(|o| o.iter().all(|c| conj.contains(c))) {
            continue;
        }
        out.retain(|o| !conj.iter().all(|c| o.contains(c)));
        out.push(conj);
    }
    out
}

/// Scales so the first nonzero coefficient has absolute value 1 (and is
/// positive for equalities).
fn normalize(c: Cons) -> Cons {
    let Some(lead) = c.coeffs.iter().find(|x| !x.is_zero()).cloned() else { return c };
    let k = if c.equality { lead } else { lead.abs() };
    Cons { coeffs: c.coeffs.iter().map(|x| x / &k).collect(), constant: &c.constant / &k, ..c }
}

/// Drops true constants and constraints implied by a parallel one; `None`
/// when a constant is false.
fn tidy(conj: Vec<Cons>) -> Option<Vec<Cons>> {
    let mut out: Vec<Cons> = Vec::new();
    for c in conj {
        if c.is_constant() {
            if !c.constant_truth() {
                return None;
            }
            continue;
        }
        let c = normalize(c);
        if c.equality {
            if !out.contains(&c) {
                out.push(c);
            }
            continue;
        }
        // e + k < 0 with larger k is tighter
        if let Some(o) = out.iter_mut().find(|o| !o.equality && o.coeffs == c.coeffs) {
            if c.constant > o.constant || (c.constant == o.constant && c.strict) {
                *o = c;
            }
            continue;
        }
        out.push(c);
    }
    Some(out)
}

fn satisfiable(conj: &[Cons]) -> bool {
    let n = conj[0].coeffs.len();
    let mut cur = conj.to_vec();
    for i in 0..n {
        match tidy(fm_conj(&cur, i)) {
            Some(c) => cur = c,
            None => return false,
        }
    }
    true
}

fn negate_cons(c: &Cons) -> Dnf {
    let (nc, nk) = c.negated_expr();
    if c.equality {
        return vec![vec![lt(c.coeffs.clone(), c.constant.clone(), true)], vec![lt(nc, nk, true)]];
    }
    // not (e < 0) is -e <= 0; not (e <= 0) is -e < 0
    vec![vec![lt(nc, nk, !c.strict)]]
}

fn negate_dnf(d: &Dnf) -> Dnf {
    let mut acc: Dnf = vec![vec![]];
    for conj in d {
        let mut clause: Dnf = Vec::new();
        for c in conj {
            clause.extend(negate_cons(c));
        }
        acc = and_dnf(&acc, &clause);
        if acc.is_empty() {
            break;
        }
    }
    acc
}

fn tree_dnf(t: &LinTree, nvars: usize) -> Dnf {
    match t {
        LinTree::Atom(a) => {
            let coeffs = (0..nvars).map(|i| Rational::from_integer(a.coeffs[i].into())).collect();
            prune(atom_dnf(coeffs, Rational::from_integer(a.constant.into()), a.rel))
        }
        LinTree::Not(inner) => negate_dnf(&tree_dnf(inner, nvars)),
        LinTree::And(ts) => ts.iter().fold(vec![vec![]], |acc, t| and_dnf(&acc, &tree_dnf(t, nvars))),
        LinTree::Or(ts) => prune(ts.iter().flat_map(|t| tree_dnf(t, nvars)).collect()),
    }
}

/// Fourier-Motzkin: eliminates variable `i` from a conjunction.
fn fm_conj(conj: &[Cons], i: usize) -> Vec<Cons> {
    if let Some(eq) = conj.iter().find(|c| c.equality && !c.coeffs[i].is_zero()) {
        // x_i = -(rest) / a
        let a = eq.coeffs[i].clone();
        return conj
            .iter()
            .filter(|c| *c != eq)
            .map(|c| {
                let f = &c.coeffs[i] / &a;
                let coeffs = c.coeffs.iter().zip(&eq.coeffs).map(|(x, y)| x - &f * y).collect();
                Cons { coeffs, constant: &c.constant - &f * &eq.constant, strict: c.strict, equality: c.equality }
            })
            .collect();
    }
    let mut rest = Vec::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for c in conj {
        if c.coeffs[i].is_zero() {
            rest.push(c.clone());
        } else if c.coeffs[i].is_positive() {
            upper.push(c);
        } else {
            lower.push(c);
        }
    }
    for u in &upper {
        for l in &lower {
            let (au, al) = (u.coeffs[i].clone(), -&l.coeffs[i]);
            let coeffs = u.coeffs.iter().zip(&l.coeffs).map(|(x, y)| &al * x + &au * y).collect();
            let constant = &al * &u.constant + &au * &l.constant;
            rest.push(lt(coeffs, constant, u.strict || l.strict));
        }
    }
    rest
}

/// Truth of a closed linear sentence by Fourier-Motzkin elimination over
/// disjunctive normal forms.
pub fn fm_decide(inst: &LinInstance) -> bool {
    let mut d = tree_dnf(&inst.matrix, inst.nvars);
    for &(qf, v) in inst.prefix.iter().rev() {
        let i = v as usize - 1;
        d = match qf {
            Quantifier::Exists => prune(d.iter().map(|c| fm_conj(c, i)).collect()),
            Quantifier::Forall => {
                let neg = negate_dnf(&d);
                let ex = prune(neg.iter().map(|c| fm_conj(c, i)).collect());
                negate_dnf(&ex)
            }
        };
    }
    // Closed: remaining constraints are constants, already pruned.
    !d.is_empty()
}

// ---------------------------------------------------------------------------
// Digits and roots.

/// Digit `n >= 1` of a rational in `[0, 1)` by schoolbook long division.
pub fn long_division_digits(p: u64, q: u64, count: usize) -> Vec<u8> {
    let mut r = p % q;
    (0..count)
        .map(|_| {
            r *= 10;
            let d = r / q;
            r %= q;
            d as u8
        })
        .collect()
}

/// `floor(sqrt(k) * 10^n)` by integer bisection.
pub fn sqrt_scaled_floor(k: u64, n: u32) -> BigInt {
    let target = BigInt::from(k) * BigInt::from(10u8).pow(2 * n);
    let (mut lo, mut hi) = (BigInt::zero(), target.clone() + 1u8);
    while &hi - &lo > BigInt::from(1u8) {
        let mid: BigInt = (&lo + &hi) / 2u8;
        if &mid * &mid <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Size of the block generated from relations of the given arities,
/// counted by listing every operation application.
pub fn recount_block(arities: &[u32]) -> usize {
    let mut n = 0;
    for _ in arities {
        n += 1; // complement
    }
    for i in 0..arities.len() {
        for j in 0..arities.len() {
            if i < j && arities[i] == arities[j] {
                n += 1;
            }
        }
    }
    for &a in arities {
        for p in 1..=a {
            if p < a {
                n += 1;
            }
        }
    }
    n += arities.len(); // set multiplications
    n += arities.iter().filter(|&&a| a > 1).count();
    n
}
