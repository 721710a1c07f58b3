//! The class expression language.
//!
//! ```text
//! sum    := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | power
//! power  := atom ('^' uint)*
//! atom   := uint ('/' uint)? | ident | 'j' '(' sum ')' | '(' sum ')'
//! ```
//!
//! One grammar serves every space; which identifiers are legal is decided
//! when an expression is evaluated against a [`Space`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::blowup::{BlowupPresentation, FamilySpec, MixedClass};
use crate::error::{Error, Result};
use crate::linalg::Q;
use crate::ring::{FormalSum, Monomial};
use crate::secant::SecantBundleRing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    /// A literal `p/q`, kept as written.
    Rat(BigInt, BigInt),
    Gen(String),
    J(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Neg(Box<Expr>),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    in_j: bool,
}

impl<'a> Parser<'a> {
    fn err<T>(
        &self,
        offset: usize,
        message: impl Into<String>,
    ) -> std::result::Result<T, ParseError> {
        Err(ParseError {
            offset,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> std::result::Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.describe_here();
            self.err(self.pos, format!("expected `{c}`, found {found}"))
        }
    }

    fn describe_here(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("`{c}`"),
            None => "end of input".into(),
        }
    }

    fn uint(&mut self) -> std::result::Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if len == 0 {
            let found = self.describe_here();
            return self.err(start, format!("expected an integer, found {found}"));
        }
        self.pos += len;
        Ok(self.src[start..self.pos].parse().expect("ascii digits"))
    }

    fn sum(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> std::result::Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    fn power(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut base = self.atom()?;
        while self.eat('^') {
            let at = self.pos;
            let e = self.uint()?;
            let Some(e) = e.to_u32() else {
                return self.err(at, "exponent too large");
            };
            base = Expr::Pow(Box::new(base), e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> std::result::Result<Expr, ParseError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                if self.eat('/') {
                    let at = self.pos;
                    let d = self.uint()?;
                    if d.is_zero() {
                        return self.err(at, "zero denominator");
                    }
                    Ok(Expr::Rat(n, d))
                } else {
                    Ok(Expr::Int(n))
                }
            }
            Some('(') => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let len = self.src[start..]
                    .bytes()
                    .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
                    .count();
                let name = &self.src[start..start + len];
                self.pos += len;
                if name == "j" && self.peek() == Some('(') {
                    if self.in_j {
                        return self.err(start, "nested j");
                    }
                    self.pos += 1;
                    self.in_j = true;
                    let inner = self.sum();
                    self.in_j = false;
                    let inner = inner?;
                    self.expect(')')?;
                    Ok(Expr::J(Box::new(inner)))
                } else {
                    Ok(Expr::Gen(name.to_string()))
                }
            }
            _ => {
                let found = self.describe_here();
                self.err(
                    start,
                    format!("expected a number, generator or `(`, found {found}"),
                )
            }
        }
    }
}

pub fn parse_expr(text: &str) -> std::result::Result<Expr, ParseError> {
    let mut p = Parser {
        src: text,
        pos: 0,
        in_j: false,
    };
    let e = p.sum()?;
    if p.peek().is_some() {
        let found = p.describe_here();
        return p.err(p.pos, format!("unexpected {found}"));
    }
    Ok(e)
}

impl FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        parse_expr(s)
    }
}

/// Binding strength, used to place the minimal set of parentheses.
fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Pow(..) => 4,
        Expr::Rat(..) => 4,
        Expr::Int(_) | Expr::Gen(_) | Expr::J(_) => 5,
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if prec(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Rat(n, d) => write!(f, "{n}/{d}"),
            Expr::Gen(g) => f.write_str(g),
            Expr::J(inner) => write!(f, "j({inner})"),
            Expr::Add(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(" + ")?;
                wrap(f, b, 2)
            }
            Expr::Sub(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(" - ")?;
                wrap(f, b, 2)
            }
            Expr::Mul(a, b) => {
                wrap(f, a, 2)?;
                f.write_str("*")?;
                wrap(f, b, 3)
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                wrap(f, a, 3)
            }
            Expr::Pow(a, e) => {
                wrap(f, a, 5)?;
                write!(f, "^{e}")
            }
        }
    }
}

/// A space selected on the command line: `xr:<r>`, `w:<r>`, `y:<d>`,
/// `p3:<d>,<a>` or `sec:<n>,<k>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Xr(u32),
    W(u32),
    Y(u32),
    P3(u32, i64),
    Sec(u32, u32),
}

/// A space with its ring built.
#[derive(Debug, Clone)]
pub enum Ring {
    Blowup(BlowupPresentation),
    Secant(SecantBundleRing),
}

/// The value of an expression in a space.
#[derive(Debug, Clone, PartialEq)]
pub enum Class {
    Blowup(MixedClass),
    Secant(FormalSum),
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Class::Blowup(c) => write!(f, "{c}"),
            Class::Secant(c) => write!(f, "{c}"),
        }
    }
}

impl Class {
    /// Homogeneous components, lowest codimension first.
    pub fn graded(&self) -> Vec<(usize, Class)> {
        let mut parts: BTreeMap<usize, Class> = BTreeMap::new();
        match self {
            Class::Blowup(c) => {
                let split = |f: &FormalSum, shift: usize| {
                    let mut by: BTreeMap<usize, Vec<(Monomial, Q)>> = BTreeMap::new();
                    for (m, q) in f.terms() {
                        by.entry(m.degree(f.gens()) as usize + shift)
                            .or_default()
                            .push((m.clone(), q.clone()));
                    }
                    by.into_iter()
                        .map(|(k, ts)| (k, FormalSum::from_terms(f.gens(), ts)))
                        .collect::<BTreeMap<_, _>>()
                };
                let amb = split(&c.ambient, 0);
                let exc = split(&c.exceptional, 1);
                let zero_a = FormalSum::zero(c.ambient.gens());
                let zero_e = FormalSum::zero(c.exceptional.gens());
                for k in amb.keys().chain(exc.keys()) {
                    let part = MixedClass {
                        ambient: amb.get(k).cloned().unwrap_or_else(|| zero_a.clone()),
                        exceptional: exc.get(k).cloned().unwrap_or_else(|| zero_e.clone()),
                    };
                    parts.insert(*k, Class::Blowup(part));
                }
            }
            Class::Secant(f) => {
                let mut by: BTreeMap<usize, Vec<(Monomial, Q)>> = BTreeMap::new();
                for (m, q) in f.terms() {
                    by.entry(m.degree(f.gens()) as usize)
                        .or_default()
                        .push((m.clone(), q.clone()));
                }
                for (k, ts) in by {
                    parts.insert(k, Class::Secant(FormalSum::from_terms(f.gens(), ts)));
                }
            }
        }
        parts.into_iter().collect()
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Parse(ParseError {
                offset: 0,
                message: format!(
                    "unrecognized space `{s}`; expected xr:R, w:R, y:D, p3:D,A or sec:N,K"
                ),
            })
        };
        let (tag, args) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<&str> = args.split(',').map(str::trim).collect();
        let u = |t: &str| t.parse::<u32>().map_err(|_| bad());
        match (tag.trim(), nums.as_slice()) {
            ("xr", [r]) => Ok(Space::Xr(u(r)?)),
            ("w", [r]) => Ok(Space::W(u(r)?)),
            ("y", [d]) => Ok(Space::Y(u(d)?)),
            ("p3", [d, a]) => Ok(Space::P3(u(d)?, a.parse().map_err(|_| bad())?)),
            ("sec", [n, k]) => Ok(Space::Sec(u(n)?, u(k)?)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Xr(r) => write!(f, "xr:{r}"),
            Space::W(r) => write!(f, "w:{r}"),
            Space::Y(d) => write!(f, "y:{d}"),
            Space::P3(d, a) => write!(f, "p3:{d},{a}"),
            Space::Sec(n, k) => write!(f, "sec:{n},{k}"),
        }
    }
}

impl Space {
    pub fn build(&self) -> Result<Ring> {
        let spec = match *self {
            Space::Xr(r) => FamilySpec::Rnc { r },
            Space::W(r) => FamilySpec::Line { r },
            Space::Y(d) => FamilySpec::QuadricCurve { d },
            Space::P3(d, twist) => FamilySpec::P3Curve { d, twist },
            Space::Sec(n, k) => return Ok(Ring::Secant(SecantBundleRing::new(n, k)?)),
        };
        Ok(Ring::Blowup(BlowupPresentation::make_space(spec)?))
    }
}

impl Ring {
    pub fn eval(&self, e: &Expr) -> Result<Class> {
        match self {
            Ring::Blowup(s) => eval_blowup(s, e).map(Class::Blowup),
            Ring::Secant(s) => eval_secant(s, e).map(Class::Secant),
        }
    }

    pub fn eval_str(&self, text: &str) -> Result<Class> {
        self.eval(&parse_expr(text)?)
    }
}

fn literal(e: &Expr) -> Option<Q> {
    match e {
        Expr::Int(n) => Some(Q::from_integer(n.clone())),
        Expr::Rat(n, d) => Some(Q::new(n.clone(), d.clone())),
        _ => None,
    }
}

/// Evaluates in a blow-up ring. `h1`, `h2` are legal only inside `j(...)`.
pub fn eval_blowup(s: &BlowupPresentation, e: &Expr) -> Result<MixedClass> {
    if let Some(c) = literal(e) {
        return Ok(s.scalar(c));
    }
    Ok(match e {
        Expr::Gen(g) => match g.as_str() {
            "H" => s.h(),
            "E" => s.e(),
            "h1" | "h2" => {
                return Err(Error::UnknownGenerator(format!(
                    "{g} (only valid inside j(...))"
                )))
            }
            _ => return Err(Error::UnknownGenerator(g.clone())),
        },
        Expr::J(inner) => s.j(&eval_exceptional(s, inner)?)?,
        Expr::Add(a, b) => &eval_blowup(s, a)? + &eval_blowup(s, b)?,
        Expr::Sub(a, b) => &eval_blowup(s, a)? - &eval_blowup(s, b)?,
        Expr::Mul(a, b) => s.product(&eval_blowup(s, a)?, &eval_blowup(s, b)?),
        Expr::Neg(a) => -&eval_blowup(s, a)?,
        Expr::Pow(a, k) => s.pow(&eval_blowup(s, a)?, *k),
        Expr::Int(_) | Expr::Rat(..) => unreachable!("handled above"),
    })
}

fn eval_exceptional(s: &BlowupPresentation, e: &Expr) -> Result<FormalSum> {
    let gens = s.exceptional_gens();
    let rw = s.exceptional_rules();
    if let Some(c) = literal(e) {
        return Ok(FormalSum::constant(gens, c));
    }
    match e {
        Expr::Gen(g) if g == "h1" || g == "h2" => FormalSum::generator(gens, g),
        Expr::Gen(g) => Err(Error::UnknownGenerator(format!(
            "{g} (inside j(...) only h1, h2 are allowed)"
        ))),
        Expr::J(_) => Err(Error::UnknownGenerator("nested j".into())),
        Expr::Add(a, b) => eval_exceptional(s, a)?.add(&eval_exceptional(s, b)?),
        Expr::Sub(a, b) => eval_exceptional(s, a)?.sub(&eval_exceptional(s, b)?),
        Expr::Mul(a, b) => eval_exceptional(s, a)?.mul(&eval_exceptional(s, b)?, rw),
        Expr::Neg(a) => Ok(eval_exceptional(s, a)?.neg()),
        Expr::Pow(a, k) => eval_exceptional(s, a)?.pow(*k, rw),
        Expr::Int(_) | Expr::Rat(..) => unreachable!("handled above"),
    }
}

pub fn eval_secant(s: &SecantBundleRing, e: &Expr) -> Result<FormalSum> {
    if let Some(c) = literal(e) {
        return Ok(FormalSum::constant(s.gens(), c));
    }
    match e {
        Expr::Gen(g) if g == "h" || g == "zeta" => FormalSum::generator(s.gens(), g),
        Expr::Gen(g) => Err(Error::UnknownGenerator(g.clone())),
        Expr::J(_) => Err(Error::UnknownGenerator(
            "j(...) is not defined on a secant bundle".into(),
        )),
        Expr::Add(a, b) => eval_secant(s, a)?.add(&eval_secant(s, b)?),
        Expr::Sub(a, b) => eval_secant(s, a)?.sub(&eval_secant(s, b)?),
        Expr::Mul(a, b) => s.mul(&eval_secant(s, a)?, &eval_secant(s, b)?),
        Expr::Neg(a) => Ok(eval_secant(s, a)?.neg()),
        Expr::Pow(a, k) => s.pow(&eval_secant(s, a)?, *k),
        Expr::Int(_) | Expr::Rat(..) => unreachable!("handled above"),
    }
}
