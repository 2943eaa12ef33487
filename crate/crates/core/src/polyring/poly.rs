//! Sparse graded polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::PolyError;
use crate::rational::format_rational;
use crate::Q;

/// Ordered variable table. Variables earlier in the table are larger in the
/// lexicographic tie-break of the term order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Variables {
    names: Vec<String>,
    weights: Vec<u32>,
}

impl Variables {
    /// `degrees` are real cohomological degrees; each must be even and
    /// positive.
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, u32)>) -> Result<Arc<Self>, PolyError> {
        let mut names = Vec::new();
        let mut weights = Vec::new();
        for (name, degree) in vars {
            let name = name.into();
            if degree == 0 || degree % 2 == 1 {
                return Err(PolyError::BadDegree { name, degree });
            }
            if names.contains(&name) {
                return Err(PolyError::Parse(format!("duplicate variable {name}")));
            }
            names.push(name);
            weights.push(degree / 2);
        }
        Ok(Arc::new(Self { names, weights }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Real degree of variable `i`.
    pub fn degree(&self, i: usize) -> u32 {
        2 * self.weights[i]
    }

    pub(crate) fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Table with variable `i` removed.
    pub fn without(&self, i: usize) -> Arc<Self> {
        let mut v = self.clone();
        v.names.remove(i);
        v.weights.remove(i);
        Arc::new(v)
    }
}

/// Monomial with its weight (half the real degree) cached in front, so the
/// derived order is weight first and lexicographic on exponents second.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    weight: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Self {
            weight: 0,
            exps: vec![0; n],
        }
    }

    pub(crate) fn from_exps(vars: &Variables, exps: Vec<u32>) -> Self {
        let weight = exps.iter().enumerate().map(|(i, e)| e * vars.weight(i)).sum();
        Self { weight, exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Half the real degree.
    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            weight: self.weight + other.weight,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.weight <= other.weight && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Self) -> Self {
        Self {
            weight: other.weight - self.weight,
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn lcm(&self, other: &Self, vars: &Variables) -> Self {
        Self::from_exps(vars, self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub(crate) fn times_var(&self, vars: &Variables, i: usize) -> Self {
        let mut m = self.clone();
        m.exps[i] += 1;
        m.weight += vars.weight(i);
        m
    }

    fn render(&self, vars: &Variables) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    vars.name(i).to_string()
                } else {
                    format!("{}^{}", vars.name(i), e)
                }
            })
            .collect();
        parts.join("*")
    }
}

/// A polynomial over `Q` in a fixed graded variable table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPoly {
    vars: Arc<Variables>,
    terms: BTreeMap<Monomial, Q>,
}

impl GradedPoly {
    pub fn zero(vars: &Arc<Variables>) -> Self {
        Self {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<Variables>, c: Q) -> Self {
        Self::term(vars, Monomial::one(vars.len()), c)
    }

    pub fn one(vars: &Arc<Variables>) -> Self {
        Self::constant(vars, Q::one())
    }

    pub fn term(vars: &Arc<Variables>, m: Monomial, c: Q) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(vars: &Arc<Variables>, i: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[i] = 1;
        Self::term(vars, Monomial::from_exps(vars, exps), Q::one())
    }

    pub fn var_named(vars: &Arc<Variables>, name: &str) -> Result<Self, PolyError> {
        let i = vars
            .index(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::var(vars, i))
    }

    pub fn vars(&self) -> &Arc<Variables> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut weights = self.terms.keys().map(Monomial::weight);
        match weights.next() {
            None => true,
            Some(w) => weights.all(|x| x == w),
        }
    }

    /// Real degree of a nonzero homogeneous polynomial.
    pub fn degree(&self) -> Option<u32> {
        if self.is_homogeneous() {
            self.leading().map(|(m, _)| 2 * m.weight())
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&(Q::one() / c)),
            None => self.clone(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Q) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    /// `self += c · m · other`, the inner step of reduction.
    pub(crate) fn add_scaled(&mut self, other: &Self, m: &Monomial, c: &Q) {
        for (k, x) in &other.terms {
            let key = k.mul(m);
            let v = x * c;
            match self.terms.entry(key) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += v;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    if !v.is_zero() {
                        e.insert(v);
                    }
                }
            }
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Q)> {
        self.terms.pop_last()
    }

    pub(crate) fn push_term(&mut self, m: Monomial, c: Q) {
        if !c.is_zero() {
            self.terms.insert(m, c);
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(&self.vars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Substitutes `value` for variable `i` and re-expresses the result in
    /// `target`, which must be this table with variable `i` removed.
    pub fn eliminate(&self, i: usize, value: &Q, target: &Arc<Variables>) -> Self {
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut exps = m.exps.clone();
            let e = exps.remove(i);
            let factor = num_traits::pow::Pow::pow(value, e);
            let mono = Monomial::from_exps(target, exps);
            out.add_scaled(&Self::one(target), &mono, &(c * factor));
        }
        out
    }

    /// Rewrites into another table containing every variable that occurs.
    pub fn map_vars(&self, target: &Arc<Variables>) -> Result<Self, PolyError> {
        let mut index = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            index.push(target.index(name));
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let j = index[i].ok_or_else(|| PolyError::UnknownVariable(self.vars.name(i).to_string()))?;
                if target.weight(j) != self.vars.weight(i) {
                    return Err(PolyError::VariableMismatch);
                }
                exps[j] = e;
            }
            out.terms.insert(Monomial::from_exps(target, exps), c.clone());
        }
        Ok(out)
    }

    /// Substitutes polynomials (in a common target table) for every variable.
    pub fn compose(&self, images: &[GradedPoly], target: &Arc<Variables>) -> Self {
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    t = &t * &images[i].pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Leading coefficient made positive, for display of relations.
    pub fn sign_normalized(&self) -> Self {
        match self.leading() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    fn check_vars(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials over different variable tables"
        );
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, other: &GradedPoly) -> GradedPoly {
        self.check_vars(other);
        let mut out = self.clone();
        out.add_scaled(other, &Monomial::one(self.vars.len()), &Q::one());
        out
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, other: &GradedPoly) -> GradedPoly {
        self.check_vars(other);
        let mut out = self.clone();
        out.add_scaled(other, &Monomial::one(self.vars.len()), &-Q::one());
        out
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, other: &GradedPoly) -> GradedPoly {
        self.check_vars(other);
        let mut out = GradedPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_scaled(other, m, c);
        }
        out
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.scale(&-Q::one())
    }
}

/// Terms in decreasing order, e.g. `f^2 - f*x1 - q`, `3/2*x1^2 + x2`.
impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = m.render(&self.vars);
            if mono.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), mono)?;
            }
        }
        Ok(())
    }
}

/// Parses `+ - * ^`, parentheses, integer or `p/q` literals and variable
/// names from the table.
pub fn parse_poly(vars: &Arc<Variables>, text: &str) -> Result<GradedPoly, PolyError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { vars, tokens, pos: 0 };
    let p = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(PolyError::Parse(format!("unexpected trailing input in {text:?}")));
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(num_bigint::BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>, PolyError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token::Num(s.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*^/()".contains(c) {
            out.push(Token::Sym(c));
            i += 1;
        } else {
            return Err(PolyError::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    vars: &'a Arc<Variables>,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<GradedPoly, PolyError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<GradedPoly, PolyError> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<GradedPoly, PolyError> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.tokens.get(self.pos).cloned() {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| PolyError::Parse("exponent too large".into()))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(PolyError::Parse("expected an exponent after ^".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<GradedPoly, PolyError> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                let mut value = Q::from_integer(n);
                if self.eat('/') {
                    match self.tokens.get(self.pos).cloned() {
                        Some(Token::Num(d)) if !d.is_zero() => {
                            self.pos += 1;
                            value /= Q::from_integer(d);
                        }
                        _ => return Err(PolyError::Parse("expected a nonzero denominator".into())),
                    }
                }
                Ok(GradedPoly::constant(self.vars, value))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                GradedPoly::var_named(self.vars, &name)
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let p = self.expr()?;
                if !self.eat(')') {
                    return Err(PolyError::Parse("missing )".into()));
                }
                Ok(p)
            }
            other => Err(PolyError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_int;

    fn fx() -> Arc<Variables> {
        Variables::new([("f", 2), ("x1", 2), ("q", 4)]).unwrap()
    }

    #[test]
    fn term_order_is_degree_then_lex() {
        let v = fx();
        let p = parse_poly(&v, "x1^2 + f*x1 + q + f^2").unwrap();
        let order: Vec<String> = p
            .terms()
            .rev()
            .map(|(m, _)| GradedPoly::term(&v, m.clone(), Q::one()).to_string())
            .collect();
        assert_eq!(order, ["f^2", "f*x1", "x1^2", "q"]);
    }

    #[test]
    fn display_and_parse_round_trip() {
        let v = fx();
        let p = parse_poly(&v, "f*(f - x1) - q").unwrap();
        assert_eq!(p.to_string(), "f^2 - f*x1 - q");
        let r = parse_poly(&v, "3/2*x1 - 1/2*f").unwrap();
        assert_eq!(r.to_string(), "-1/2*f + 3/2*x1");
        assert_eq!(parse_poly(&v, &r.to_string()).unwrap(), r);
        assert!(parse_poly(&v, "y + 1").is_err());
        assert!(parse_poly(&v, "x1 +").is_err());
    }

    #[test]
    fn homogeneity_and_degree() {
        let v = fx();
        assert_eq!(parse_poly(&v, "f^2 - q").unwrap().degree(), Some(4));
        assert!(!parse_poly(&v, "f^2 - 1").unwrap().is_homogeneous());
        assert!(Variables::new([("x", 3)]).is_err());
    }

    #[test]
    fn eliminate_drops_variable() {
        let v = fx();
        let p = parse_poly(&v, "f^2 - f*x1 - q").unwrap();
        let target = v.without(2);
        let s = p.eliminate(2, &q_int(1), &target);
        assert_eq!(s.to_string(), "f^2 - f*x1 - 1");
    }
}
