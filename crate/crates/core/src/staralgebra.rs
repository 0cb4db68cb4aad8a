//! Free associative algebra with involution over ℚ.
//!
//! Letters are declared symmetric, skew or general. Normalization pushes `*`
//! down to letters using `(uv)* = v*u*`, `u** = u` and linearity, then drops the
//! star on typed letters (`s* = s`, `k* = −k`). Words are never commuted, so two
//! expressions are equal in every algebra with involution exactly when their
//! normal forms agree.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

use crate::algebra::{AlgebraError, Element, InvolutiveAlgebra};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StarError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("undeclared letter '{letter}' at column {column}")]
    Undeclared { letter: char, column: usize },
    #[error("bad declaration: {0}")]
    Declaration(String),
    #[error("line {line}: {message}")]
    Corpus { line: usize, message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StarType {
    General,
    Symmetric,
    Skew,
}

/// Letter typing, e.g. `sym a b; skew x y; gen r u;`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Declarations {
    letters: BTreeMap<char, StarType>,
}

impl Declarations {
    pub fn parse(text: &str) -> Result<Self, StarError> {
        let mut letters = BTreeMap::new();
        for clause in text.split(';').map(str::trim).filter(|c| !c.is_empty()) {
            let mut words = clause.split_whitespace();
            let kind = match words.next() {
                Some("sym") => StarType::Symmetric,
                Some("skew") => StarType::Skew,
                Some("gen") => StarType::General,
                Some(other) => {
                    return Err(StarError::Declaration(format!("unknown kind {other:?}; use sym, skew or gen")))
                }
                None => unreachable!("empty clauses are filtered"),
            };
            for w in words {
                let mut cs = w.chars();
                let (Some(c), None) = (cs.next(), cs.next()) else {
                    return Err(StarError::Declaration(format!("{w:?} is not a single letter")));
                };
                if !c.is_ascii_alphabetic() {
                    return Err(StarError::Declaration(format!("{w:?} is not a letter")));
                }
                if letters.insert(c, kind).is_some() {
                    return Err(StarError::Declaration(format!("letter '{c}' declared twice")));
                }
            }
        }
        Ok(Declarations { letters })
    }

    pub fn get(&self, letter: char) -> Option<StarType> {
        self.letters.get(&letter).copied()
    }

    pub fn letters(&self) -> impl Iterator<Item = (char, StarType)> + '_ {
        self.letters.iter().map(|(&c, &t)| (c, t))
    }
}

impl fmt::Display for Declarations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (kind, name) in [(StarType::Symmetric, "sym"), (StarType::Skew, "skew"), (StarType::General, "gen")] {
            let ls: Vec<String> = self.letters().filter(|&(_, t)| t == kind).map(|(c, _)| c.to_string()).collect();
            if !ls.is_empty() {
                if !first {
                    f.write_str("; ")?;
                }
                write!(f, "{name} {}", ls.join(" "))?;
                first = false;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StarExpr {
    Scalar(BigRational),
    Letter(char, StarType),
    Sum(Vec<StarExpr>),
    Neg(Box<StarExpr>),
    Product(Vec<StarExpr>),
    Star(Box<StarExpr>),
}

impl StarExpr {
    pub fn parse(text: &str, decls: &Declarations) -> Result<Self, StarError> {
        let chars: Vec<char> = text.chars().collect();
        let mut p = ExprParser { chars: &chars, pos: 0, decls };
        let e = p.sum()?;
        if let Some(c) = p.peek() {
            return Err(p.error(&format!("unexpected character '{c}'")));
        }
        Ok(e)
    }

    pub fn star(self) -> StarExpr {
        StarExpr::Star(Box::new(self))
    }

    /// Evaluates the tree directly in `alg`, without normalizing first.
    pub fn evaluate(&self, alg: &InvolutiveAlgebra, values: &HashMap<char, Element>) -> Result<Element, StarError> {
        Ok(match self {
            StarExpr::Scalar(q) => alg.scalar(&alg.field().from_rational(q).map_err(AlgebraError::from)?),
            StarExpr::Letter(c, _) => values
                .get(c)
                .cloned()
                .ok_or_else(|| StarError::Declaration(format!("no value for '{c}'")))?,
            StarExpr::Sum(ts) => {
                let mut acc = alg.zero();
                for t in ts {
                    acc = acc.checked_add(&t.evaluate(alg, values)?)?;
                }
                acc
            }
            StarExpr::Neg(e) => -e.evaluate(alg, values)?,
            StarExpr::Product(fs) => {
                let mut acc = alg.one();
                for f in fs {
                    acc = acc.checked_mul(&f.evaluate(alg, values)?)?;
                }
                acc
            }
            StarExpr::Star(e) => e.evaluate(alg, values)?.star(),
        })
    }
}

struct ExprParser<'a> {
    chars: &'a [char],
    pos: usize,
    decls: &'a Declarations,
}

impl ExprParser<'_> {
    fn error(&self, message: &str) -> StarError {
        StarError::Syntax { column: self.pos + 1, message: message.to_string() }
    }

    fn peek(&mut self) -> Option<char> {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
        self.chars.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<StarExpr, StarError> {
        let mut terms = Vec::new();
        let mut negate = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.product()?;
            terms.push(if negate { StarExpr::Neg(Box::new(t)) } else { t });
            match self.peek() {
                Some('+') => negate = false,
                Some('-') => negate = true,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { StarExpr::Sum(terms) })
    }

    fn product(&mut self) -> Result<StarExpr, StarError> {
        let mut factors = vec![self.postfix()?];
        while matches!(self.peek(), Some(c) if c == '(' || c.is_ascii_alphanumeric()) {
            factors.push(self.postfix()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { StarExpr::Product(factors) })
    }

    fn postfix(&mut self) -> Result<StarExpr, StarError> {
        let mut e = self.primary()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            e = e.star();
        }
        Ok(e)
    }

    fn number(&mut self) -> BigInt {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect::<String>().parse().expect("digits")
    }

    fn primary(&mut self) -> Result<StarExpr, StarError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.number();
                let den = if self.peek() == Some('/') {
                    self.pos += 1;
                    if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        return Err(self.error("expected a denominator"));
                    }
                    let at = self.pos;
                    let d = self.number();
                    if d.is_zero() {
                        return Err(StarError::Syntax { column: at + 1, message: "zero denominator".into() });
                    }
                    d
                } else {
                    BigInt::one()
                };
                Ok(StarExpr::Scalar(BigRational::new(num, den)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let column = self.pos + 1;
                self.pos += 1;
                let t = self.decls.get(c).ok_or(StarError::Undeclared { letter: c, column })?;
                Ok(StarExpr::Letter(c, t))
            }
            Some(c) => Err(self.error(&format!("unexpected character '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// A letter, starred only when it is general.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub letter: char,
    pub starred: bool,
    pub kind: StarType,
}

impl Atom {
    /// Returns the sign picked up by starring, and the starred atom.
    fn star(self) -> (bool, Atom) {
        match self.kind {
            StarType::General => (false, Atom { starred: !self.starred, ..self }),
            StarType::Symmetric => (false, self),
            StarType::Skew => (true, self),
        }
    }
}

/// Linear combination of words with nonzero rational coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct NormalForm {
    terms: BTreeMap<Vec<Atom>, BigRational>,
}

impl NormalForm {
    pub fn zero() -> Self {
        NormalForm::default()
    }

    fn scalar(q: BigRational) -> Self {
        let mut nf = NormalForm::zero();
        nf.add_term(Vec::new(), q);
        nf
    }

    fn add_term(&mut self, word: Vec<Atom>, q: BigRational) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(word).or_insert_with(BigRational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Atom], &BigRational)> {
        self.terms.iter().map(|(w, c)| (w.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &NormalForm) -> NormalForm {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> NormalForm {
        NormalForm { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &NormalForm) -> NormalForm {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &NormalForm) -> NormalForm {
        let mut out = NormalForm::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    pub fn star(&self) -> NormalForm {
        let mut out = NormalForm::zero();
        for (w, c) in &self.terms {
            let mut negate = false;
            let word: Vec<Atom> = w
                .iter()
                .rev()
                .map(|a| {
                    let (flip, b) = a.star();
                    negate ^= flip;
                    b
                })
                .collect();
            out.add_term(word, if negate { -c } else { c.clone() });
        }
        out
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let word: String = w.iter().map(|a| if a.starred { format!("{}*", a.letter) } else { a.letter.to_string() }).collect();
            match (mag.is_one(), word.is_empty()) {
                (true, false) => f.write_str(&word)?,
                (_, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag} {word}")?,
            }
        }
        Ok(())
    }
}

pub fn normalize(expr: &StarExpr) -> NormalForm {
    match expr {
        StarExpr::Scalar(q) => NormalForm::scalar(q.clone()),
        StarExpr::Letter(c, t) => {
            let mut nf = NormalForm::zero();
            nf.add_term(vec![Atom { letter: *c, starred: false, kind: *t }], BigRational::one());
            nf
        }
        StarExpr::Sum(ts) => ts.iter().fold(NormalForm::zero(), |acc, t| acc.add(&normalize(t))),
        StarExpr::Neg(e) => normalize(e).neg(),
        StarExpr::Product(fs) => {
            fs.iter().fold(NormalForm::scalar(BigRational::one()), |acc, t| acc.mul(&normalize(t)))
        }
        StarExpr::Star(e) => normalize(e).star(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityVerdict {
    Holds,
    /// `normalize(lhs − rhs)`, which is nonzero.
    Fails(NormalForm),
}

impl IdentityVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityVerdict::Holds)
    }
}

pub fn check_identity(lhs: &StarExpr, rhs: &StarExpr) -> IdentityVerdict {
    let diff = normalize(lhs).sub(&normalize(rhs));
    if diff.is_zero() {
        IdentityVerdict::Holds
    } else {
        IdentityVerdict::Fails(diff)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Skew,
    Neither,
}

/// Compares `normalize(e*)` with `± normalize(e)`. Zero counts as symmetric.
pub fn classify_symmetry(expr: &StarExpr) -> Symmetry {
    let nf = normalize(expr);
    let st = nf.star();
    if st == nf {
        Symmetry::Symmetric
    } else if st == nf.neg() {
        Symmetry::Skew
    } else {
        Symmetry::Neither
    }
}

/// Random values of the declared types: `½(r + r*)` for symmetric letters,
/// `½(r − r*)` for skew ones.
pub fn random_assignment<G: Rng + ?Sized>(
    decls: &Declarations,
    alg: &InvolutiveAlgebra,
    rng: &mut G,
    bound: i64,
) -> HashMap<char, Element> {
    decls
        .letters()
        .map(|(c, t)| {
            let r = alg.random_element(rng, bound);
            let v = match t {
                StarType::General => r,
                StarType::Symmetric => r.sk_split().0,
                StarType::Skew => r.sk_split().1,
            };
            (c, v)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    /// 1-based line of the identity itself.
    pub line: usize,
    pub comment: Vec<String>,
    pub decls: Declarations,
    pub lhs: StarExpr,
    pub rhs: StarExpr,
    pub lhs_text: String,
    pub rhs_text: String,
}

impl CorpusEntry {
    pub fn check(&self) -> IdentityVerdict {
        check_identity(&self.lhs, &self.rhs)
    }
}

/// Parses blocks separated by blank lines. Each block is optional `#` comment
/// lines (`# name: <id>` names the block), one declarations line and one
/// `lhs = rhs` line. Blocks holding only comments are skipped.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, StarError> {
    let mut out = Vec::new();
    let mut block: Vec<(usize, &str)> = Vec::new();
    let lines: Vec<&str> = text.lines().collect();
    for (i, raw) in lines.iter().enumerate().chain(std::iter::once((lines.len(), &""))) {
        let line = raw.trim();
        if line.is_empty() {
            if block.iter().any(|(_, l)| !l.starts_with('#')) {
                out.push(parse_block(&block, out.len() + 1)?);
            }
            block.clear();
        } else {
            block.push((i + 1, line));
        }
    }
    Ok(out)
}

fn parse_block(block: &[(usize, &str)], index: usize) -> Result<CorpusEntry, StarError> {
    let mut name = None;
    let mut comment = Vec::new();
    let mut body = Vec::new();
    for &(n, l) in block {
        if let Some(c) = l.strip_prefix('#') {
            let c = c.trim();
            match c.strip_prefix("name:") {
                Some(id) => name = Some(id.trim().to_string()),
                None => comment.push(c.to_string()),
            }
        } else {
            body.push((n, l));
        }
    }
    let first = block[0].0;
    let [(dline, dtext), (iline, itext)] = body[..] else {
        return Err(StarError::Corpus {
            line: first,
            message: format!("expected a declarations line and an identity line, found {} lines", body.len()),
        });
    };
    let at = |line: usize| move |e: StarError| StarError::Corpus { line, message: e.to_string() };
    let decls = Declarations::parse(dtext).map_err(at(dline))?;
    let mut sides = itext.split('=');
    let (Some(l), Some(r), None) = (sides.next(), sides.next(), sides.next()) else {
        return Err(StarError::Corpus { line: iline, message: "identity needs exactly one '='".into() });
    };
    let lhs = StarExpr::parse(l, &decls).map_err(at(iline))?;
    let rhs = StarExpr::parse(r, &decls).map_err(at(iline))?;
    Ok(CorpusEntry {
        name: name.unwrap_or_else(|| format!("identity_{index}")),
        line: iline,
        comment,
        decls,
        lhs,
        rhs,
        lhs_text: l.trim().to_string(),
        rhs_text: r.trim().to_string(),
    })
}

/// Bundled corpus of identities used in the proofs.
pub const CORPUS: &str = include_str!("../corpus/identities.star");
/// Each bundled identity with one deliberate error.
pub const MUTATED_CORPUS: &str = include_str!("../corpus/identities_mutated.star");
