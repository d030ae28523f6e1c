use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, ParseError, Result};
use crate::numerics::Rational;

/// A term over `+ - * \/ /\` with rational constants.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LatticeTerm {
    Const(Rational),
    Var(String),
    Neg(Box<LatticeTerm>),
    Add(Box<LatticeTerm>, Box<LatticeTerm>),
    Mul(Box<LatticeTerm>, Box<LatticeTerm>),
    Pow(Box<LatticeTerm>, u32),
    Sup(Box<LatticeTerm>, Box<LatticeTerm>),
    Inf(Box<LatticeTerm>, Box<LatticeTerm>),
    /// `t \/ 0`
    Pos(Box<LatticeTerm>),
    /// `(-t) \/ 0`
    NegPart(Box<LatticeTerm>),
    Abs(Box<LatticeTerm>),
}

use LatticeTerm as T;

pub fn constant(q: Rational) -> LatticeTerm {
    T::Const(q)
}

pub fn var(name: &str) -> LatticeTerm {
    T::Var(name.to_string())
}

impl LatticeTerm {
    pub fn sup(self, other: LatticeTerm) -> LatticeTerm {
        T::Sup(Box::new(self), Box::new(other))
    }

    pub fn inf(self, other: LatticeTerm) -> LatticeTerm {
        T::Inf(Box::new(self), Box::new(other))
    }

    pub fn plus(self, other: LatticeTerm) -> LatticeTerm {
        T::Add(Box::new(self), Box::new(other))
    }

    pub fn minus(self, other: LatticeTerm) -> LatticeTerm {
        T::Add(Box::new(self), Box::new(T::Neg(Box::new(other))))
    }

    pub fn times(self, other: LatticeTerm) -> LatticeTerm {
        T::Mul(Box::new(self), Box::new(other))
    }

    pub fn negate(self) -> LatticeTerm {
        T::Neg(Box::new(self))
    }

    pub fn pos(self) -> LatticeTerm {
        T::Pos(Box::new(self))
    }

    pub fn neg_part(self) -> LatticeTerm {
        T::NegPart(Box::new(self))
    }

    pub fn abs(self) -> LatticeTerm {
        T::Abs(Box::new(self))
    }

    pub fn pow(self, n: u32) -> LatticeTerm {
        T::Pow(Box::new(self), n)
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            T::Const(_) => {}
            T::Var(v) => {
                out.insert(v.clone());
            }
            T::Neg(a) | T::Pow(a, _) | T::Pos(a) | T::NegPart(a) | T::Abs(a) => a.collect_vars(out),
            T::Add(a, b) | T::Mul(a, b) | T::Sup(a, b) | T::Inf(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            T::Const(_) | T::Var(_) => 1,
            T::Neg(a) | T::Pow(a, _) | T::Pos(a) | T::NegPart(a) | T::Abs(a) => 1 + a.size(),
            T::Add(a, b) | T::Mul(a, b) | T::Sup(a, b) | T::Inf(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// No lattice operation anywhere.
    pub fn is_polynomial(&self) -> bool {
        match self {
            T::Const(_) | T::Var(_) => true,
            T::Neg(a) | T::Pow(a, _) => a.is_polynomial(),
            T::Add(a, b) | T::Mul(a, b) => a.is_polynomial() && b.is_polynomial(),
            T::Sup(..) | T::Inf(..) | T::Pos(_) | T::NegPart(_) | T::Abs(_) => false,
        }
    }

    /// Constant value when the term has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.variables().is_empty() {
            eval_term(self, &BTreeMap::new()).ok()
        } else {
            None
        }
    }
}

/// Exact value with `\/` as max and `/\` as min.
pub fn eval_term(t: &LatticeTerm, point: &BTreeMap<String, Rational>) -> Result<Rational> {
    Ok(match t {
        T::Const(q) => q.clone(),
        T::Var(v) => point.get(v).cloned().ok_or_else(|| Error::UnboundVariable(v.clone()))?,
        T::Neg(a) => -eval_term(a, point)?,
        T::Add(a, b) => eval_term(a, point)? + eval_term(b, point)?,
        T::Mul(a, b) => eval_term(a, point)? * eval_term(b, point)?,
        T::Pow(a, n) => {
            let x = eval_term(a, point)?;
            (0..*n).fold(Rational::one(), |acc, _| acc * &x)
        }
        T::Sup(a, b) => eval_term(a, point)?.max(eval_term(b, point)?),
        T::Inf(a, b) => eval_term(a, point)?.min(eval_term(b, point)?),
        T::Pos(a) => eval_term(a, point)?.max(Rational::zero()),
        T::NegPart(a) => (-eval_term(a, point)?).max(Rational::zero()),
        T::Abs(a) => eval_term(a, point)?.abs(),
    })
}

// Printing. Precedence: 0 `\/`, 1 `/\`, 2 `+ -`, 3 `*`, 4 unary minus, 5 `^` and atoms.

fn prec(t: &LatticeTerm) -> u8 {
    match t {
        T::Sup(..) => 0,
        T::Inf(..) => 1,
        T::Add(..) => 2,
        T::Mul(..) => 3,
        T::Neg(_) => 4,
        T::Const(q) if q.is_negative() => 4,
        _ => 5,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, t: &LatticeTerm, min: u8) -> fmt::Result {
    if prec(t) < min {
        write!(f, "(")?;
        write_term(f, t)?;
        write!(f, ")")
    } else {
        write_term(f, t)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, t: &LatticeTerm) -> fmt::Result {
    match t {
        T::Const(q) => write!(f, "{q}"),
        T::Var(v) => write!(f, "{v}"),
        T::Neg(a) => {
            write!(f, "-")?;
            // `-2` would read back as a negative literal
            let min = if matches!(**a, T::Const(_)) { 6 } else { 4 };
            write_at(f, a, min)
        }
        T::Add(a, b) => {
            write_at(f, a, 2)?;
            match &**b {
                T::Neg(inner) => {
                    write!(f, " - ")?;
                    write_at(f, inner, 3)
                }
                _ => {
                    write!(f, " + ")?;
                    write_at(f, b, 3)
                }
            }
        }
        T::Mul(a, b) => {
            write_at(f, a, 3)?;
            write!(f, "*")?;
            write_at(f, b, 4)
        }
        T::Pow(a, n) => {
            write_at(f, a, 6)?;
            write!(f, "^{n}")
        }
        T::Sup(a, b) => {
            write_at(f, a, 0)?;
            write!(f, " \\/ ")?;
            write_at(f, b, 1)
        }
        T::Inf(a, b) => {
            write_at(f, a, 1)?;
            write!(f, " /\\ ")?;
            write_at(f, b, 2)
        }
        T::Pos(a) => write!(f, "pos({a})"),
        T::NegPart(a) => write!(f, "neg({a})"),
        T::Abs(a) => write!(f, "abs({a})"),
    }
}

impl fmt::Display for LatticeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self)
    }
}

// Lexing and parsing, shared with the rule grammar of the prover.

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Num(BigInt, Option<BigInt>),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Sup,
    Inf,
    LParen,
    RParen,
    Comma,
    Turnstile,
    Eq,
    Ge,
    Le,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n, None) => format!("number `{n}`"),
            Tok::Num(n, Some(d)) => format!("number `{n}/{d}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Sup => "`\\/`".into(),
            Tok::Inf => "`/\\`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Turnstile => "`|-`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Ge => "`>=`".into(),
            Tok::Le => "`<=`".into(),
        }
    }
}

pub(crate) fn lex(src: &str) -> std::result::Result<Vec<(usize, Tok)>, ParseError> {
    let b = src.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    let digits = |i: &mut usize| {
        let s = *i;
        while *i < b.len() && b[*i].is_ascii_digit() {
            *i += 1;
        }
        BigInt::from_str(&src[s..*i]).unwrap()
    };
    while i < b.len() {
        let c = b[i];
        let start = i;
        let two = |s: &str| src[i..].starts_with(s);
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let n = digits(&mut i);
                if i + 1 < b.len() && b[i] == b'/' && b[i + 1].is_ascii_digit() {
                    i += 1;
                    let d = digits(&mut i);
                    if d.is_zero() {
                        return Err(ParseError::new(start, "nonzero denominator", "0"));
                    }
                    Tok::Num(n, Some(d))
                } else {
                    Tok::Num(n, None)
                }
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                Tok::Ident(src[start..i].to_string())
            }
            _ if two("\\/") => {
                i += 2;
                Tok::Sup
            }
            _ if two("/\\") => {
                i += 2;
                Tok::Inf
            }
            _ if two("|-") => {
                i += 2;
                Tok::Turnstile
            }
            _ if two(">=") => {
                i += 2;
                Tok::Ge
            }
            _ if two("<=") => {
                i += 2;
                Tok::Le
            }
            b'+' => {
                i += 1;
                Tok::Plus
            }
            b'-' => {
                i += 1;
                Tok::Minus
            }
            b'*' => {
                i += 1;
                Tok::Star
            }
            b'^' => {
                i += 1;
                Tok::Caret
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b',' => {
                i += 1;
                Tok::Comma
            }
            b'=' => {
                i += 1;
                Tok::Eq
            }
            _ => {
                let ch = src[i..].chars().next().unwrap();
                return Err(ParseError::new(i, "a term token", format!("`{ch}`")));
            }
        };
        out.push((start, tok));
    }
    Ok(out)
}

#[derive(Clone)]
pub(crate) struct TermParser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl TermParser {
    pub(crate) fn new(src: &str) -> std::result::Result<Self, ParseError> {
        Ok(TermParser {
            toks: lex(src)?,
            pos: 0,
            end: src.len(),
        })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    pub(crate) fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    pub(crate) fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    pub(crate) fn error(&self, expected: &str) -> ParseError {
        let found = self.peek().map_or("end of input".to_string(), Tok::describe);
        ParseError::new(self.offset(), expected, found)
    }

    pub(crate) fn expect(&mut self, t: Tok, expected: &str) -> std::result::Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn term(&mut self) -> std::result::Result<LatticeTerm, ParseError> {
        let mut t = self.inf_level()?;
        while self.peek() == Some(&Tok::Sup) {
            self.bump();
            t = t.sup(self.inf_level()?);
        }
        Ok(t)
    }

    fn inf_level(&mut self) -> std::result::Result<LatticeTerm, ParseError> {
        let mut t = self.sum()?;
        while self.peek() == Some(&Tok::Inf) {
            self.bump();
            t = t.inf(self.sum()?);
        }
        Ok(t)
    }

    fn sum(&mut self) -> std::result::Result<LatticeTerm, ParseError> {
        let mut t = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    t = t.plus(self.product()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    t = t.minus(self.product()?);
                }
                _ => return Ok(t),
            }
        }
    }

    fn product(&mut self) -> std::result::Result<LatticeTerm, ParseError> {
        let mut t = self.unary()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            t = t.times(self.unary()?);
        }
        Ok(t)
    }

    fn unary(&mut self) -> std::result::Result<LatticeTerm, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            // a minus glued to a literal is a negative constant
            if let Some(Tok::Num(..)) = self.peek() {
                let save = self.pos;
                let lit = self.power()?;
                if let T::Const(q) = lit {
                    return Ok(T::Const(-q));
                }
                self.pos = save;
            }
            return Ok(self.unary()?.negate());
        }
        self.power()
    }

    fn power(&mut self) -> std::result::Result<LatticeTerm, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            match self.bump() {
                Some(Tok::Num(n, None)) => {
                    let e = u32::try_from(n).map_err(|_| {
                        ParseError::new(self.toks[self.pos - 1].0, "a small exponent", "a huge number")
                    })?;
                    return Ok(base.pow(e));
                }
                _ => {
                    self.pos -= 1;
                    return Err(self.error("a natural exponent"));
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> std::result::Result<LatticeTerm, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n, d)) => {
                self.bump();
                Ok(T::Const(Rational::new(n, d.unwrap_or_else(BigInt::one))))
            }
            Some(Tok::LParen) => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Some(Tok::Ident(name)) => {
                self.bump();
                let func = match name.as_str() {
                    "abs" => Some(T::Abs as fn(Box<LatticeTerm>) -> LatticeTerm),
                    "pos" => Some(T::Pos as fn(Box<LatticeTerm>) -> LatticeTerm),
                    "neg" => Some(T::NegPart as fn(Box<LatticeTerm>) -> LatticeTerm),
                    _ => None,
                };
                match func {
                    Some(ctor) => {
                        self.expect(Tok::LParen, "`(` after function name")?;
                        let t = self.term()?;
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(ctor(Box::new(t)))
                    }
                    None => Ok(T::Var(name)),
                }
            }
            _ => Err(self.error("a number, variable, function or `(`")),
        }
    }
}

impl FromStr for LatticeTerm {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let mut p = TermParser::new(s)?;
        let t = p.term()?;
        if !p.at_end() {
            return Err(p.error("an operator or end of input"));
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{int, rat};

    fn t(s: &str) -> LatticeTerm {
        s.parse().unwrap()
    }

    fn at(pairs: &[(&str, Rational)]) -> BTreeMap<String, Rational> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn evaluation() {
        assert_eq!(eval_term(&t("x \\/ (1 - x)"), &at(&[("x", rat(1, 2))])).unwrap(), rat(1, 2));
        assert_eq!(eval_term(&t("abs(x)"), &at(&[("x", int(-3))])).unwrap(), int(3));
        assert_eq!(eval_term(&t("pos(x)*neg(x)"), &at(&[("x", int(5))])).unwrap(), int(0));
        assert_eq!(
            eval_term(&t("x + y"), &at(&[("x", int(1))])).unwrap_err(),
            Error::UnboundVariable("y".into())
        );
    }

    #[test]
    fn precedence() {
        assert_eq!(t("a + b \\/ c"), t("(a + b) \\/ c"));
        assert_eq!(t("a \\/ b /\\ c"), t("a \\/ (b /\\ c)"));
        assert_eq!(t("-x^2"), t("-(x^2)"));
        assert_eq!(t("2*x - 3"), constant(int(2)).times(var("x")).minus(constant(int(3))));
        assert_eq!(t("-3/4"), constant(rat(-3, 4)));
        assert_eq!(t("-(3)"), constant(int(3)).negate());
    }

    #[test]
    fn round_trip() {
        for s in [
            "x \\/ (1 - x)",
            "abs(x + y) - (abs(x) + abs(y))",
            "a*(b \\/ 0)",
            "pos(x)*neg(x)",
            "-(2) + -2 - -x",
            "(a \\/ b) /\\ c",
            "(a - b)^3 * c",
            "1/2*x /\\ y /\\ z",
        ] {
            let term = t(s);
            assert_eq!(t(&term.to_string()), term, "{s} printed as {term}");
        }
    }

    #[test]
    fn parse_errors() {
        let e = "x + * y".parse::<LatticeTerm>().unwrap_err();
        assert_eq!(e.pos, 4);
        let e = "abs x".parse::<LatticeTerm>().unwrap_err();
        assert_eq!(e.pos, 4);
        assert!("(x".parse::<LatticeTerm>().is_err());
        assert!("x ? y".parse::<LatticeTerm>().is_err());
        assert!("x^y".parse::<LatticeTerm>().is_err());
    }
}
