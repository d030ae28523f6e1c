//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, int, sign, Rational};
use crate::error::{domain, Error, ParseError, Result};

/// Univariate polynomial; `coeffs[k]` is the coefficient of `X^k`.
///
/// The highest stored coefficient is never zero, so the zero polynomial is
/// the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `X`.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `X - c`.
    pub fn linear_root(c: &Rational) -> Self {
        Self::new(vec![-c.clone(), Rational::one()])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `X^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> i8 {
        sign(&self.eval(x))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// `f^[k]`: the k-th derivative divided by its leading coefficient.
    pub fn normalized_derivative(&self, k: usize) -> Result<Self> {
        if !self.is_monic() {
            return Err(domain("normalized_derivative expects a monic polynomial"));
        }
        let d = self.degree().unwrap_or(0);
        if k >= d {
            return Err(domain(format!(
                "normalized derivative order {k} must be below the degree {d}"
            )));
        }
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derivative();
        }
        Ok(p.monic())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `p(c X)`.
    pub fn compose_scale(&self, c: &Rational) -> Self {
        let mut pw = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw *= c;
        }
        Self::new(out)
    }

    /// `p(X + c)`.
    pub fn compose_shift(&self, c: &Rational) -> Self {
        let shift = Self::new(vec![c.clone(), Rational::one()]);
        self.compose(&shift)
    }

    /// `p(q(X))`.
    pub fn compose(&self, q: &UniPoly) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Self::constant(c.clone());
        }
        acc
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let lc_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    let t = &c * dc;
                    rem[i + j] -= t;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        self.div_rem(divisor).1
    }

    /// Exact quotient; panics in debug builds if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        while !b.is_zero() {
            let r = a.rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scales to an integer polynomial with content 1 and positive leading
    /// coefficient. Keeps intermediate sizes down in Euclid's algorithm.
    pub fn primitive_part(&self) -> UniPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let ints = self.integer_coeffs();
        let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let sgn = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let scale = content * sgn;
        Self::new(
            ints.into_iter()
                .map(|c| Rational::from_integer(c / &scale))
                .collect(),
        )
    }

    /// Coefficients multiplied through by the lcm of denominators.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        let l = super::rational::denominator_lcm(self.coeffs.iter());
        self.coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect()
    }

    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).monic()
    }

    /// Yun's algorithm: monic squarefree, pairwise coprime `(factor, multiplicity)`
    /// pairs whose product (with multiplicities) is `self.monic()`.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.exact_div(&a0);
        let mut c = fp.exact_div(&a0);
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a);
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.exact_div(&a);
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Cauchy bound `1 + max |a_k / a_d|`; every real root has smaller absolute value.
    pub fn cauchy_bound(&self) -> Rational {
        let lc = self.leading();
        let m = self.coeffs[..self.coeffs.len().saturating_sub(1)]
            .iter()
            .map(|c| (c / &lc).abs())
            .max()
            .unwrap_or_else(Rational::zero);
        Rational::one() + m
    }

    /// Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.clone()];
        if self.is_zero() {
            return seq;
        }
        let mut prev = self.clone();
        let mut cur = self.derivative();
        while !cur.is_zero() {
            let r = -prev.rem(&cur);
            seq.push(cur.clone());
            prev = cur;
            cur = r;
        }
        seq
    }

    /// Interval enclosure of `p` over `[lo, hi]` (exact rational endpoints).
    pub fn eval_interval(&self, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
        let mut acc_lo = Rational::zero();
        let mut acc_hi = Rational::zero();
        for c in self.coeffs.iter().rev() {
            let prods = [&acc_lo * lo, &acc_lo * hi, &acc_hi * lo, &acc_hi * hi];
            let mn = prods.iter().min().unwrap().clone();
            let mx = prods.iter().max().unwrap().clone();
            acc_lo = mn + c;
            acc_hi = mx + c;
        }
        (acc_lo, acc_hi)
    }
}

/// Number of sign changes in a sequence of signs, zeros skipped.
pub fn sign_changes(signs: impl IntoIterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// A Sturm sequence ready for repeated root counting.
#[derive(Clone, Debug)]
pub struct Sturm {
    seq: Vec<UniPoly>,
}

impl Sturm {
    pub fn new(p: &UniPoly) -> Self {
        Sturm {
            seq: p.sturm_sequence(),
        }
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        sign_changes(self.seq.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        sign_changes(self.seq.iter().map(|p| {
            let s = sign(&p.leading());
            if p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        sign_changes(self.seq.iter().map(|p| sign(&p.leading())))
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_neg_inf()
            .saturating_sub(self.variations_at_pos_inf())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl fmt::Display for UniPoly {
    /// `x^3 - 6*x^2 + 11*x - 6`; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{}", format_rational(&a))?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", format_rational(&a))?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for UniPoly {
    type Err = ParseError;

    /// Terms `c`, `x`, `x^k`, `c*x`, `c*x^k` joined by `+`/`-`, where `c` is
    /// `p` or `p/q`.
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        PolyParser::new(s).parse()
    }
}

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn new(s: &'a str) -> Self {
        PolyParser {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn found(&self) -> String {
        match self.src.get(self.pos) {
            Some(&b) => format!("`{}`", b as char),
            None => "end of input".to_string(),
        }
    }

    fn err(&self, expected: &str) -> ParseError {
        ParseError::new(self.pos, expected, self.found())
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| BigInt::from_str(s).ok())
    }

    fn parse(mut self) -> std::result::Result<UniPoly, ParseError> {
        let mut coeffs: Vec<Rational> = Vec::new();
        let mut first = true;
        loop {
            let mut neg = false;
            match self.peek() {
                Some(b'+') if !first => self.pos += 1,
                Some(b'-') => {
                    neg = true;
                    self.pos += 1;
                }
                None if first => return Err(self.err("a term")),
                None => break,
                _ if first => {}
                _ => return Err(self.err("`+` or `-`")),
            }
            first = false;
            let (c, k) = self.term()?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            if neg {
                coeffs[k] -= c;
            } else {
                coeffs[k] += c;
            }
        }
        Ok(UniPoly::new(coeffs))
    }

    fn term(&mut self) -> std::result::Result<(Rational, usize), ParseError> {
        let coeff = match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let n = self.digits().ok_or_else(|| self.err("digits"))?;
                let d = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.digits().ok_or_else(|| self.err("denominator"))?;
                    if d.is_zero() {
                        return Err(self.err("nonzero denominator"));
                    }
                    d
                } else {
                    BigInt::one()
                };
                Some(Rational::new(n, d))
            }
            Some(b'x') | Some(b'X') => None,
            _ => return Err(self.err("a coefficient or `x`")),
        };
        let has_var = match (coeff.is_some(), self.peek()) {
            (true, Some(b'*')) => {
                self.pos += 1;
                match self.peek() {
                    Some(b'x') | Some(b'X') => true,
                    _ => return Err(self.err("`x`")),
                }
            }
            (false, _) => true,
            (true, _) => false,
        };
        let mut k = 0;
        if has_var {
            self.pos += 1; // the `x`
            k = 1;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                let e = self.digits().ok_or_else(|| self.err("exponent"))?;
                k = usize::try_from(e).map_err(|_| self.err("small exponent"))?;
            }
        }
        Ok((coeff.unwrap_or_else(Rational::one), k))
    }
}

impl TryFrom<&str> for UniPoly {
    type Error = Error;
    fn try_from(s: &str) -> Result<Self> {
        Ok(s.parse::<UniPoly>()?)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -self.clone()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
