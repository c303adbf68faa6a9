//! Parsers for the term DSL (s-expressions), the formula DSL (prenex or
//! nested infix) and bare polynomials.
//!
//! ```text
//! term    := (base add|mul|leq|nat) | (compl T) | (union T U)
//!          | (swap K T) | (lift T) | (proj T)
//! formula := (exists|forall) var+ . formula
//!          | formula iff formula | formula implies formula
//!          | formula or formula | formula and formula | not formula
//!          | expr rel expr | true | false | ( formula )
//! rel     := = | != | < | > | <= | >=
//! expr    := integer | var | expr (+|-|*) expr | -expr | expr ^ n | ( expr )
//! ```
//!
//! Free variables written `x1, x2, ...` keep their index. Any other free
//! names are sorted and numbered from 1.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::formula::{Formula, PolyFormula, Quantifier, Relation};
use crate::poly::{Poly, Var};
use crate::term::{GeneratorKind, RelationTerm};

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::SyntaxError { position, message: message.into() }
}

// ---------------------------------------------------------------- terms

pub fn parse_term(text: &str) -> Result<RelationTerm> {
    let tokens = sexp_tokens(text)?;
    let mut pos = 0;
    let t = term_at(&tokens, &mut pos, text.len())?;
    if let Some((at, tok)) = tokens.get(pos) {
        return Err(syntax(*at, format!("unexpected trailing token {tok:?}")));
    }
    Ok(t)
}

fn sexp_tokens(text: &str) -> Result<Vec<(usize, String)>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b'(' || c == b')' {
            out.push((i, (c as char).to_string()));
            i += 1;
        } else if c.is_ascii_alphanumeric() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, text[start..i].to_string()));
        } else {
            return Err(syntax(i, format!("unexpected character {:?}", c as char)));
        }
    }
    Ok(out)
}

fn term_at(tokens: &[(usize, String)], pos: &mut usize, end: usize) -> Result<RelationTerm> {
    let expect = |pos: &mut usize, want: &str| -> Result<usize> {
        match tokens.get(*pos) {
            Some((at, t)) if t == want => {
                *pos += 1;
                Ok(*at)
            }
            Some((at, t)) => Err(syntax(*at, format!("expected {want:?}, found {t:?}"))),
            None => Err(syntax(end, format!("expected {want:?}, found end of input"))),
        }
    };
    expect(pos, "(")?;
    let Some((head_at, head)) = tokens.get(*pos).cloned() else {
        return Err(syntax(end, "expected operator, found end of input"));
    };
    *pos += 1;
    let t = match head.as_str() {
        "base" => {
            let Some((at, g)) = tokens.get(*pos).cloned() else {
                return Err(syntax(end, "expected generator name"));
            };
            *pos += 1;
            let g = GeneratorKind::from_keyword(&g).ok_or_else(|| syntax(at, format!("unknown generator {g:?}")))?;
            RelationTerm::base(g)
        }
        "compl" => RelationTerm::complement(&term_at(tokens, pos, end)?),
        "union" => {
            let a = term_at(tokens, pos, end)?;
            let b = term_at(tokens, pos, end)?;
            RelationTerm::union(&a, &b)?
        }
        "swap" => {
            let Some((at, k)) = tokens.get(*pos).cloned() else {
                return Err(syntax(end, "expected transposition position"));
            };
            *pos += 1;
            let k: u32 = k.parse().map_err(|_| syntax(at, format!("expected a position, found {k:?}")))?;
            let t = term_at(tokens, pos, end)?;
            RelationTerm::swap(&t, k)?
        }
        "lift" => RelationTerm::lift(&term_at(tokens, pos, end)?),
        "proj" => RelationTerm::project(&term_at(tokens, pos, end)?)?,
        other => return Err(syntax(head_at, format!("unknown operator {other:?}"))),
    };
    expect(pos, ")")?;
    Ok(t)
}

// ------------------------------------------------------------- formulas

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(&'static str),
}

fn formula_tokens(text: &str) -> Result<Vec<(usize, Tok)>> {
    const SYMS: [&str; 16] = ["<->", "->", "<=", ">=", "!=", "+", "-", "*", "^", "(", ")", ".", ",", "=", "<", ">"];
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Int(BigInt::from_str(&text[start..i]).expect("digits"))));
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
            continue;
        }
        for s in SYMS {
            if text[i..].starts_with(s) {
                out.push((i, Tok::Sym(s)));
                i += s.len();
                continue 'outer;
            }
        }
        return Err(syntax(i, format!("unexpected character {:?}", text[i..].chars().next().unwrap_or('?'))));
    }
    Ok(out)
}

const KEYWORDS: [&str; 8] = ["exists", "forall", "and", "or", "not", "implies", "iff", "true"];

fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s) || s == "false"
}

#[derive(Clone, Debug)]
enum Expr {
    Int(BigInt),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug)]
enum Ast {
    True,
    False,
    Cmp(Expr, Relation, Expr),
    Not(Box<Ast>),
    And(Vec<Ast>),
    Or(Vec<Ast>),
    Implies(Box<Ast>, Box<Ast>),
    Iff(Box<Ast>, Box<Ast>),
    Quant(Quantifier, Vec<String>, Box<Ast>),
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(at, _)| *at)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        syntax(self.here(), msg)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(t)) if *t == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_kw(&mut self, k: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(t)) if t == k) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<Ast> {
        let lhs = self.implication()?;
        if self.eat_kw("iff") || self.eat_sym("<->") {
            let rhs = self.formula()?;
            return Ok(Ast::Iff(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Ast> {
        let lhs = self.disjunction()?;
        if self.eat_kw("implies") || self.eat_sym("->") {
            let rhs = self.implication()?;
            return Ok(Ast::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Ast> {
        let mut parts = vec![self.conjunction()?];
        while self.eat_kw("or") {
            parts.push(self.conjunction()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Ast::Or(parts) })
    }

    fn conjunction(&mut self) -> Result<Ast> {
        let mut parts = vec![self.unary()?];
        while self.eat_kw("and") {
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Ast::And(parts) })
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.eat_kw("not") {
            return Ok(Ast::Not(Box::new(self.unary()?)));
        }
        if self.eat_kw("true") {
            return Ok(Ast::True);
        }
        if self.eat_kw("false") {
            return Ok(Ast::False);
        }
        for (kw, q) in [("exists", Quantifier::Exists), ("forall", Quantifier::Forall)] {
            if self.eat_kw(kw) {
                let mut names = Vec::new();
                loop {
                    match self.peek().cloned() {
                        Some(Tok::Ident(n)) if !is_keyword(&n) => {
                            self.pos += 1;
                            names.push(n);
                            self.eat_sym(",");
                        }
                        _ => break,
                    }
                }
                if names.is_empty() {
                    return Err(self.err("expected a bound variable"));
                }
                if !self.eat_sym(".") {
                    return Err(self.err("expected '.' after quantified variables"));
                }
                let body = self.formula()?;
                return Ok(Ast::Quant(q, names, Box::new(body)));
            }
        }
        // A parenthesis may open either an expression or a formula.
        let save = self.pos;
        match self.comparison() {
            Ok(c) => Ok(c),
            Err(first) => {
                self.pos = save;
                if self.eat_sym("(") {
                    let inner = self.formula()?;
                    if !self.eat_sym(")") {
                        return Err(self.err("expected ')'"));
                    }
                    Ok(inner)
                } else {
                    Err(first)
                }
            }
        }
    }

    fn comparison(&mut self) -> Result<Ast> {
        let lhs = self.expr()?;
        let rel = match self.peek() {
            Some(Tok::Sym("=")) => Relation::Eq,
            Some(Tok::Sym("!=")) => Relation::Ne,
            Some(Tok::Sym("<")) => Relation::Lt,
            Some(Tok::Sym("<=")) => Relation::Le,
            Some(Tok::Sym(">")) => Relation::Gt,
            Some(Tok::Sym(">=")) => Relation::Ge,
            _ => return Err(self.err("expected a relation (= != < <= > >=)")),
        };
        self.pos += 1;
        let rhs = self.expr()?;
        Ok(Ast::Cmp(lhs, rel, rhs))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.product()?;
        loop {
            if self.eat_sym("+") {
                acc = Expr::Add(Box::new(acc), Box::new(self.product()?));
            } else if self.eat_sym("-") {
                acc = Expr::Sub(Box::new(acc), Box::new(self.product()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        while self.eat_sym("*") {
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat_sym("-") {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.eat_sym("^") {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    let e = u32::try_from(n).map_err(|_| self.err("exponent too large"))?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err(self.err("expected a natural exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(name)) if !is_keyword(&name) => {
                self.pos += 1;
                Ok(Expr::Var(name))
            }
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat_sym(")") {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            _ => Err(self.err("expected an integer, a variable or '('")),
        }
    }
}

fn expr_names(e: &Expr, out: &mut BTreeSet<String>) {
    match e {
        Expr::Int(_) => {}
        Expr::Var(n) => {
            out.insert(n.clone());
        }
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            expr_names(a, out);
            expr_names(b, out);
        }
        Expr::Neg(a) | Expr::Pow(a, _) => expr_names(a, out),
    }
}

fn free_names(a: &Ast, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    match a {
        Ast::True | Ast::False => {}
        Ast::Cmp(l, _, r) => {
            let mut s = BTreeSet::new();
            expr_names(l, &mut s);
            expr_names(r, &mut s);
            out.extend(s.into_iter().filter(|n| !bound.contains(n)));
        }
        Ast::Not(f) => free_names(f, bound, out),
        Ast::And(fs) | Ast::Or(fs) => fs.iter().for_each(|f| free_names(f, bound, out)),
        Ast::Implies(a, b) | Ast::Iff(a, b) => {
            free_names(a, bound, out);
            free_names(b, bound, out);
        }
        Ast::Quant(_, names, body) => {
            let n = bound.len();
            bound.extend(names.iter().cloned());
            free_names(body, bound, out);
            bound.truncate(n);
        }
    }
}

fn indexed_name(name: &str) -> Option<u32> {
    let rest = name.strip_prefix('x')?;
    if rest.is_empty() || rest.starts_with('0') {
        return None;
    }
    rest.parse().ok().filter(|&k: &u32| k >= 1)
}

/// Assigns indices to free names: `xK` keeps `K` when every free name has
/// that shape, otherwise names are sorted and numbered from 1.
pub fn assign_free(names: &BTreeSet<String>) -> BTreeMap<String, Var> {
    if !names.is_empty() && names.iter().all(|n| indexed_name(n).is_some()) {
        return names.iter().map(|n| (n.clone(), indexed_name(n).unwrap())).collect();
    }
    names.iter().enumerate().map(|(i, n)| (n.clone(), i as Var + 1)).collect()
}

fn expr_to_poly(e: &Expr, env: &BTreeMap<String, Var>) -> Poly {
    match e {
        Expr::Int(n) => Poly::constant(n.clone()),
        Expr::Var(n) => Poly::var(env[n]),
        Expr::Add(a, b) => expr_to_poly(a, env).add(&expr_to_poly(b, env)),
        Expr::Sub(a, b) => expr_to_poly(a, env).sub(&expr_to_poly(b, env)),
        Expr::Mul(a, b) => expr_to_poly(a, env).mul(&expr_to_poly(b, env)),
        Expr::Neg(a) => expr_to_poly(a, env).neg(),
        Expr::Pow(a, k) => expr_to_poly(a, env).pow(*k),
    }
}

fn lower(a: &Ast, env: &BTreeMap<String, Var>, next: &mut Var) -> Formula {
    match a {
        Ast::True => Formula::True,
        Ast::False => Formula::False,
        Ast::Cmp(l, rel, r) => Formula::atom(expr_to_poly(l, env).sub(&expr_to_poly(r, env)), *rel),
        Ast::Not(f) => Formula::not(lower(f, env, next)),
        Ast::And(fs) => Formula::And(fs.iter().map(|f| lower(f, env, next)).collect()),
        Ast::Or(fs) => Formula::Or(fs.iter().map(|f| lower(f, env, next)).collect()),
        Ast::Implies(a, b) => Formula::implies(lower(a, env, next), lower(b, env, next)),
        Ast::Iff(a, b) => Formula::iff(lower(a, env, next), lower(b, env, next)),
        Ast::Quant(q, names, body) => {
            let mut inner = env.clone();
            let mut vars = Vec::new();
            for n in names {
                inner.insert(n.clone(), *next);
                vars.push(*next);
                *next += 1;
            }
            let mut f = lower(body, &inner, next);
            for v in vars.into_iter().rev() {
                f = Formula::Quant(*q, v, Box::new(f));
            }
            f
        }
    }
}

/// A parsed formula together with the names of its free variables.
#[derive(Clone, Debug)]
pub struct ParsedFormula {
    pub formula: PolyFormula,
    /// Source name of each free variable index.
    pub names: BTreeMap<Var, String>,
}

impl ParsedFormula {
    /// Renders with the source names for free variables and `xK` otherwise.
    pub fn name(&self, v: Var) -> String {
        self.names.get(&v).cloned().unwrap_or_else(|| format!("x{v}"))
    }
}

pub fn parse_formula(text: &str) -> Result<ParsedFormula> {
    let toks = formula_tokens(text)?;
    let mut p = Parser { toks: &toks, pos: 0, end: text.len() };
    let ast = p.formula()?;
    if p.pos != toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    let mut free = BTreeSet::new();
    free_names(&ast, &mut Vec::new(), &mut free);
    let env = assign_free(&free);
    let arity = env.values().copied().max().unwrap_or(0);
    let mut next = arity + 1;
    let f = lower(&ast, &env, &mut next);
    let names = env.into_iter().map(|(n, v)| (v, n)).collect();
    Ok(ParsedFormula { formula: f.to_prenex(arity), names })
}

/// Parses a polynomial expression. Variables are numbered from 1 in sorted
/// name order; the returned list gives the name of index `i + 1`.
pub fn parse_poly(text: &str) -> Result<(Poly, Vec<String>)> {
    let toks = formula_tokens(text)?;
    let mut p = Parser { toks: &toks, pos: 0, end: text.len() };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    let mut names = BTreeSet::new();
    expr_names(&e, &mut names);
    let env: BTreeMap<String, Var> = names.iter().enumerate().map(|(i, n)| (n.clone(), i as Var + 1)).collect();
    Ok((expr_to_poly(&e, &env), names.into_iter().collect()))
}
