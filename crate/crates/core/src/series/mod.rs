//! The ordered ring Q[[e]] with `e` a positive infinitesimal, as lazily
//! computed coefficient sequences, and its localization Q((e)).
//!
//! No sign test exists on these series. Order information comes from the
//! sign potentials `kappa_k`, which only look at coefficients up to `k`, and
//! every predicate answers `Yes`, `No` or `Unknown` for a given depth.

mod laurent;
mod ops;

use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::rational::sign;
use crate::numerics::Rational;
use crate::semipoly::{polynomial_of, LatticeTerm};

pub use laurent::LaurentElement;
pub use ops::{
    hensel_newton_root, series_abs, series_frac, series_inf, series_inverse, series_otf_split,
    series_sign_potential, series_sup, FracResult, OtfSide, SeriesPoly,
};

/// Answer of a probe limited to a depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Probe {
    Yes,
    No,
    Unknown,
}

/// Computes coefficient `k` from the coefficients `0..k` already produced.
type Rule = dyn Fn(usize, &[Rational]) -> Rational + Send + Sync;

struct Inner {
    rule: Box<Rule>,
    cache: Mutex<Vec<Rational>>,
}

/// A formal power series in `e` whose coefficients are produced on demand
/// and memoized. Clones share the cache.
///
/// A coefficient rule only sees the prefix of its own series, so a series can
/// be defined recursively without reading ahead. The cache lock is held while
/// a coefficient is computed; rules read other series, which were built
/// earlier, so locks are always taken in creation order.
#[derive(Clone)]
pub struct LazySeries(Arc<Inner>);

impl LazySeries {
    pub fn from_rule(rule: impl Fn(usize, &[Rational]) -> Rational + Send + Sync + 'static) -> Self {
        LazySeries(Arc::new(Inner {
            rule: Box::new(rule),
            cache: Mutex::new(Vec::new()),
        }))
    }

    /// Coefficients from a function of the index alone.
    pub fn from_fn(f: impl Fn(usize) -> Rational + Send + Sync + 'static) -> Self {
        LazySeries::from_rule(move |k, _| f(k))
    }

    /// A polynomial in `e`: `coeffs[k]` is the coefficient of `e^k`.
    pub fn polynomial(coeffs: Vec<Rational>) -> Self {
        LazySeries::from_fn(move |k| coeffs.get(k).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn constant(c: Rational) -> Self {
        LazySeries::polynomial(vec![c])
    }

    pub fn zero() -> Self {
        LazySeries::polynomial(Vec::new())
    }

    pub fn one() -> Self {
        LazySeries::constant(Rational::one())
    }

    /// The infinitesimal `e`.
    pub fn epsilon() -> Self {
        LazySeries::monomial(Rational::one(), 1)
    }

    /// `c * e^n`.
    pub fn monomial(c: Rational, n: usize) -> Self {
        let mut v = vec![Rational::zero(); n + 1];
        v[n] = c;
        LazySeries::polynomial(v)
    }

    /// `1 + r e + r^2 e^2 + ...`, the inverse of `1 - r e`.
    pub fn geometric(r: Rational) -> Self {
        LazySeries::from_rule(move |k, prev| if k == 0 { Rational::one() } else { &prev[k - 1] * &r })
    }

    /// A polynomial in `e` written in the term grammar, such as `1 - e + e^2/2`.
    pub fn parse_polynomial(text: &str) -> Result<Self> {
        let t: LatticeTerm = text.parse()?;
        let p = polynomial_of(&t, &["e".to_string()])?;
        let coeffs = p.to_univariate().coeffs().to_vec();
        Ok(LazySeries::polynomial(coeffs))
    }

    /// Coefficient of `e^k`.
    pub fn coeff(&self, k: usize) -> Rational {
        let mut cache = self.0.cache.lock().unwrap_or_else(|e| e.into_inner());
        while cache.len() <= k {
            let n = cache.len();
            let c = (self.0.rule)(n, &cache);
            cache.push(c);
        }
        cache[k].clone()
    }

    /// Coefficients `0..n`.
    pub fn coeffs(&self, n: usize) -> Vec<Rational> {
        if n == 0 {
            return Vec::new();
        }
        self.coeff(n - 1);
        let cache = self.0.cache.lock().unwrap_or_else(|e| e.into_inner());
        cache[..n].to_vec()
    }

    /// Number of coefficients computed so far.
    pub fn computed(&self) -> usize {
        self.0.cache.lock().unwrap_or_else(|e| e.into_inner()).len()
    }

    /// Sign potential at exponent `k`: the sign of the first nonzero
    /// coefficient of index at most `k`, or 0.
    pub fn kappa(&self, k: usize) -> i8 {
        self.first_nonzero(k).map_or(0, |j| sign(&self.coeff(j)))
    }

    /// The valuation when it is at most `k`.
    pub fn valuation_within(&self, k: usize) -> Option<usize> {
        self.first_nonzero(k)
    }

    fn first_nonzero(&self, k: usize) -> Option<usize> {
        self.coeff(k);
        let cache = self.0.cache.lock().unwrap_or_else(|e| e.into_inner());
        cache[..=k].iter().position(|c| !c.is_zero())
    }

    /// `self > 0` probed to depth `k`.
    pub fn is_positive(&self, k: usize) -> Probe {
        match self.kappa(k) {
            1 => Probe::Yes,
            -1 => Probe::No,
            _ => Probe::Unknown,
        }
    }

    /// `self >= 0` probed to depth `k`: refuted by a negative potential,
    /// confirmed by a positive one.
    pub fn is_nonnegative(&self, k: usize) -> Probe {
        self.is_positive(k)
    }

    /// `self = other` probed to depth `k`: `No` once the coefficients differ.
    pub fn equals(&self, other: &LazySeries, k: usize) -> Probe {
        if (0..=k).any(|j| self.coeff(j) != other.coeff(j)) {
            Probe::No
        } else {
            Probe::Unknown
        }
    }

    pub fn add(&self, o: &LazySeries) -> LazySeries {
        let (a, b) = (self.clone(), o.clone());
        LazySeries::from_fn(move |k| a.coeff(k) + b.coeff(k))
    }

    pub fn sub(&self, o: &LazySeries) -> LazySeries {
        let (a, b) = (self.clone(), o.clone());
        LazySeries::from_fn(move |k| a.coeff(k) - b.coeff(k))
    }

    pub fn neg(&self) -> LazySeries {
        let a = self.clone();
        LazySeries::from_fn(move |k| -a.coeff(k))
    }

    pub fn scale(&self, c: &Rational) -> LazySeries {
        let (a, c) = (self.clone(), c.clone());
        LazySeries::from_fn(move |k| a.coeff(k) * &c)
    }

    /// Cauchy product.
    pub fn mul(&self, o: &LazySeries) -> LazySeries {
        let (a, b) = (self.clone(), o.clone());
        LazySeries::from_fn(move |k| (0..=k).map(|i| a.coeff(i) * b.coeff(k - i)).sum())
    }

    pub fn pow(&self, n: u32) -> LazySeries {
        (0..n).fold(LazySeries::one(), |acc, _| acc.mul(self))
    }

    /// `e^n * self`.
    pub fn shift_up(&self, n: usize) -> LazySeries {
        let a = self.clone();
        LazySeries::from_fn(move |k| if k < n { Rational::zero() } else { a.coeff(k - n) })
    }

    /// `self / e^n`, for a series whose first `n` coefficients vanish;
    /// the caller has checked that they do.
    fn shift_down(&self, n: usize) -> LazySeries {
        let a = self.clone();
        LazySeries::from_fn(move |k| a.coeff(k + n))
    }

    /// `self / e^n` after checking that the first `n` coefficients vanish.
    pub fn divide_by_epsilon_power(&self, n: usize) -> Result<LazySeries> {
        match (0..n).find(|&j| !self.coeff(j).is_zero()) {
            Some(j) => Err(Error::Domain(format!("coefficient {j} is nonzero, so e^{n} does not divide"))),
            None => Ok(self.shift_down(n)),
        }
    }

    /// `c0 + c1*e + c2*e^2 + ...` over the first `n` coefficients.
    pub fn display(&self, n: usize) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs(n).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            match (out.is_empty(), c.is_negative()) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            let power = match k {
                0 => String::new(),
                1 => "e".to_string(),
                _ => format!("e^{k}"),
            };
            match (k, a.is_one()) {
                (0, _) => out.push_str(&a.to_string()),
                (_, true) => out.push_str(&power),
                _ => out.push_str(&format!("{a}*{power}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out.push_str(" + ...");
        out
    }
}

impl fmt::Debug for LazySeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LazySeries({})", self.display(8))
    }
}
