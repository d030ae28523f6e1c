use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::numerics::{Rational, UniPoly};

/// Sparse polynomial in a fixed number of variables over the rationals.
///
/// The derived order is the lexicographic order on (exponent vector,
/// coefficient) pairs, which is what normal forms sort by.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = MPoly::zero(nvars);
        p.terms.insert(e, Rational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    /// The value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// `(constant, [coefficient of x_i])` for a polynomial of total degree at most one.
    pub fn as_linear(&self) -> Option<(Rational, Vec<Rational>)> {
        if self.total_degree() > 1 {
            return None;
        }
        let mut c0 = Rational::zero();
        let mut lin = vec![Rational::zero(); self.nvars];
        for (e, c) in &self.terms {
            match e.iter().position(|&k| k == 1) {
                Some(i) => lin[i] = c.clone(),
                None => c0 = c.clone(),
            }
        }
        Some((c0, lin))
    }

    pub fn from_linear(c0: &Rational, lin: &[Rational]) -> Self {
        let n = lin.len();
        let mut p = MPoly::constant(n, c0.clone());
        for (i, c) in lin.iter().enumerate() {
            if !c.is_zero() {
                p = &p + &MPoly::var(n, i).scale(c);
            }
        }
        p
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(MPoly::one(self.nvars), |acc, _| &acc * self)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut sum = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    term *= x;
                }
            }
            sum += term;
        }
        sum
    }

    /// Univariate view; only meaningful for at most one variable.
    pub fn to_univariate(&self) -> UniPoly {
        assert!(self.nvars <= 1, "to_univariate on a multivariate polynomial");
        let deg = self.total_degree() as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (e, c) in &self.terms {
            let k = e.first().copied().unwrap_or(0) as usize;
            coeffs[k] = c.clone();
        }
        UniPoly::new(coeffs)
    }

    /// Text in the term grammar, using `names` for the variables.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        Named { p: self, names }
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }
}

struct Named<'a> {
    p: &'a MPoly,
    names: &'a [String],
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.p.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(self.names[v].clone()),
                    _ => factors.push(format!("{}^{k}", self.names[v])),
                }
            }
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{a}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        let shown = self.display_with(&names).to_string();
        write!(f, "{shown}")
    }
}

impl std::ops::Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rational::one())
    }
}

impl std::ops::Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}
