use std::cmp::Ordering;

use num_traits::{One, Signed};
use serde_json::{json, Value};

use crate::error::{domain, Result};
use crate::numerics::{algebraic_compare, algebraic_sign, real_roots, RealAlgebraic, Rational, UniPoly};

/// An endpoint that may be infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtendedBound {
    NegInf,
    PosInf,
    Finite(RealAlgebraic),
}

impl ExtendedBound {
    pub fn finite(q: Rational) -> Self {
        ExtendedBound::Finite(RealAlgebraic::from_rational(q))
    }

    pub fn as_finite(&self) -> Option<&RealAlgebraic> {
        match self {
            ExtendedBound::Finite(x) => Some(x),
            _ => None,
        }
    }

    /// Order against a finite value.
    pub fn cmp_value(&self, x: &RealAlgebraic) -> Ordering {
        match self {
            ExtendedBound::NegInf => Ordering::Less,
            ExtendedBound::PosInf => Ordering::Greater,
            ExtendedBound::Finite(y) => algebraic_compare(y, x),
        }
    }

    pub fn cmp_bound(&self, other: &ExtendedBound) -> Ordering {
        use ExtendedBound::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (PosInf, _) | (_, NegInf) => Ordering::Greater,
            (Finite(a), Finite(b)) => algebraic_compare(a, b),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ExtendedBound::NegInf => json!("-inf"),
            ExtendedBound::PosInf => json!("+inf"),
            ExtendedBound::Finite(x) => algebraic_to_json(x),
        }
    }
}

/// `sup_k (1 + |a_k|)` over all coefficients of a monic polynomial, leading one included.
pub fn virtual_root_bound(f: &UniPoly) -> Rational {
    f.coeffs()
        .iter()
        .map(|c| Rational::one() + c.abs())
        .max()
        .unwrap_or_else(Rational::one)
}

/// The minimizer of `|f|` on `[a, b]`, given that `sigma * f'` is positive inside.
///
/// Infinite endpoints are cut at the virtual root bound of `f`.
pub fn interval_min_abs(
    f: &UniPoly,
    a: &ExtendedBound,
    b: &ExtendedBound,
    sigma: i8,
) -> Result<RealAlgebraic> {
    if a.cmp_bound(b) == Ordering::Greater {
        return Err(domain("interval_min_abs: left endpoint exceeds right endpoint"));
    }
    if sigma != 1 && sigma != -1 {
        return Err(domain("sigma must be +1 or -1"));
    }
    let roots = real_roots(f)?;
    min_abs_with_roots(f, &roots, a, b, sigma)
}

fn min_abs_with_roots(
    f: &UniPoly,
    roots: &[RealAlgebraic],
    a: &ExtendedBound,
    b: &ExtendedBound,
    sigma: i8,
) -> Result<RealAlgebraic> {
    let bound = virtual_root_bound(f);
    let a = match a {
        ExtendedBound::NegInf => RealAlgebraic::from_rational(-bound.clone()),
        ExtendedBound::PosInf => RealAlgebraic::from_rational(bound.clone()),
        ExtendedBound::Finite(x) => x.clone(),
    };
    let b = match b {
        ExtendedBound::NegInf => RealAlgebraic::from_rational(-bound.clone()),
        ExtendedBound::PosInf => RealAlgebraic::from_rational(bound),
        ExtendedBound::Finite(x) => x.clone(),
    };
    if algebraic_compare(&a, &b) != Ordering::Less {
        return Ok(a);
    }
    let sa = sigma * algebraic_sign(f, &a);
    if sa >= 0 {
        return Ok(a);
    }
    let sb = sigma * algebraic_sign(f, &b);
    if sb <= 0 {
        return Ok(b);
    }
    // f strictly monotone with a strict sign change: exactly one root inside
    roots
        .iter()
        .find(|r| algebraic_compare(r, &a) == Ordering::Greater && algebraic_compare(r, &b) == Ordering::Less)
        .cloned()
        .ok_or_else(|| domain("monotonicity hypothesis fails: no root between the endpoints"))
}

/// The virtual roots of a monic polynomial and of all its normalized derivatives.
#[derive(Clone, Debug)]
pub struct VirtualRootTriangle {
    f: UniPoly,
    bound: Rational,
    /// `rho[delta - 1][j - 1]`, row `delta` belonging to `f^[d - delta]`
    rho: Vec<Vec<RealAlgebraic>>,
}

/// Builds the triangle level by level.
pub fn virtual_roots(f: &UniPoly) -> Result<VirtualRootTriangle> {
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(domain("virtual roots need a polynomial of degree at least one")),
    };
    if !f.is_monic() {
        return Err(domain("virtual roots need a monic polynomial"));
    }
    let mut rho: Vec<Vec<RealAlgebraic>> = Vec::with_capacity(d);
    for delta in 1..=d {
        let g = if delta == d { f.clone() } else { f.normalized_derivative(d - delta)? };
        let roots = real_roots(&g)?;
        let mut row = Vec::with_capacity(delta);
        for j in 1..=delta {
            let left = if j == 1 {
                ExtendedBound::NegInf
            } else {
                ExtendedBound::Finite(rho[delta - 2][j - 2].clone())
            };
            let right = if j == delta {
                ExtendedBound::PosInf
            } else {
                ExtendedBound::Finite(rho[delta - 2][j - 1].clone())
            };
            let sigma = if (delta - j) % 2 == 0 { 1 } else { -1 };
            row.push(min_abs_with_roots(&g, &roots, &left, &right, sigma)?);
        }
        rho.push(row);
    }
    Ok(VirtualRootTriangle {
        bound: virtual_root_bound(f),
        f: f.clone(),
        rho,
    })
}

impl VirtualRootTriangle {
    pub fn poly(&self) -> &UniPoly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.rho.len()
    }

    pub fn bound(&self) -> &Rational {
        &self.bound
    }

    /// `rho_{delta, j}` for `1 <= j <= delta <= d`.
    pub fn rho(&self, delta: usize, j: usize) -> &RealAlgebraic {
        &self.rho[delta - 1][j - 1]
    }

    /// `rho_{delta, j}` extended by `-inf` at `j = 0` and `+inf` at `j = delta + 1`.
    pub fn rho_ext(&self, delta: usize, j: usize) -> ExtendedBound {
        if j == 0 {
            ExtendedBound::NegInf
        } else if j > delta {
            ExtendedBound::PosInf
        } else {
            ExtendedBound::Finite(self.rho(delta, j).clone())
        }
    }

    pub fn row(&self, delta: usize) -> &[RealAlgebraic] {
        &self.rho[delta - 1]
    }

    /// The top row, the virtual roots of `f` itself.
    pub fn top(&self) -> &[RealAlgebraic] {
        self.rho.last().expect("degree is at least one")
    }

    /// `f^[k]`, with `f^[d] = 1`.
    pub fn derivative(&self, k: usize) -> UniPoly {
        if k >= self.degree() {
            UniPoly::one()
        } else {
            self.f.normalized_derivative(k).expect("k below degree")
        }
    }

    /// The polynomial that row `delta` belongs to.
    pub fn level_poly(&self, delta: usize) -> UniPoly {
        self.derivative(self.degree() - delta)
    }

    /// `f* = f^[0] f^[1] ... f^[d-1]`.
    pub fn f_star(&self) -> UniPoly {
        (0..self.degree()).fold(UniPoly::one(), |acc, k| &acc * &self.derivative(k))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree(),
            "bound": self.bound.to_string(),
            "rho": self
                .rho
                .iter()
                .map(|row| row.iter().map(algebraic_to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

pub fn algebraic_to_json(x: &RealAlgebraic) -> Value {
    match x {
        RealAlgebraic::Rational(q) => json!({ "rational": q.to_string() }),
        RealAlgebraic::Isolated(r) => json!({
            "defpoly": r.defpoly().to_string(),
            "lo": r.lo().to_string(),
            "hi": r.hi().to_string(),
        }),
    }
}

pub fn algebraic_from_json(v: &Value) -> Result<RealAlgebraic> {
    let field = |name: &str| -> Result<&str> {
        v.get(name)
            .and_then(Value::as_str)
            .ok_or_else(|| crate::Error::Json(format!("missing string field `{name}`")))
    };
    if v.get("rational").is_some() {
        return Ok(RealAlgebraic::from_rational(crate::numerics::parse_rational(field("rational")?)?));
    }
    let p: UniPoly = field("defpoly")?.parse()?;
    let lo = crate::numerics::parse_rational(field("lo")?)?;
    let hi = crate::numerics::parse_rational(field("hi")?)?;
    RealAlgebraic::isolated(&p, lo, hi)
}
