//! Consequences of the triangle: root brackets, intermediate values, extrema
//! and change of variable.

use std::cmp::Ordering;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::triangle::{algebraic_to_json, virtual_roots, ExtendedBound, VirtualRootTriangle};
use crate::error::{domain, Error, Result};
use crate::numerics::poly::sign_changes;
use crate::numerics::{algebraic_compare, algebraic_sign, polynomial_value, RealAlgebraic, Rational, UniPoly};

#[derive(Clone, Debug)]
pub struct BudanFourier {
    /// sign changes in `f^[d](a), ..., f^[0](a)`
    pub r: usize,
    pub lower: ExtendedBound,
    pub upper: ExtendedBound,
}

/// Sign-change count at `a` and the pair of top-row virtual roots around `a`.
pub fn budan_fourier_index(t: &VirtualRootTriangle, a: &Rational) -> Result<BudanFourier> {
    let d = t.degree();
    let mut signs = Vec::with_capacity(d + 1);
    for k in (0..=d).rev() {
        let s = t.derivative(k).sign_at(a);
        if s == 0 {
            return Err(Error::VanishingDerivative { order: k });
        }
        signs.push(s);
    }
    let r = sign_changes(signs);
    Ok(BudanFourier {
        r,
        lower: t.rho_ext(d, d - r),
        upper: t.rho_ext(d, d - r + 1),
    })
}

impl BudanFourier {
    pub fn to_json(&self) -> Value {
        json!({
            "r": self.r,
            "lower": self.lower.to_json(),
            "upper": self.upper.to_json(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct IvtWitness {
    /// `mu_j = a \/ (b /\ rho_{d,j})` for `j = 1..d`
    pub mu: Vec<RealAlgebraic>,
    /// smallest `j` (1-based) with `f(mu_j) = 0`
    pub zero_index: usize,
}

fn clamp(a: &RealAlgebraic, b: &RealAlgebraic, x: &RealAlgebraic) -> RealAlgebraic {
    RealAlgebraic::max(a, &RealAlgebraic::min(b, x))
}

fn check_interval(a: &RealAlgebraic, b: &RealAlgebraic) -> Result<()> {
    if algebraic_compare(a, b) != Ordering::Less {
        return Err(Error::EmptyInterval);
    }
    Ok(())
}

/// A zero of `f` among the clamped top-row virtual roots, given a strict sign change.
pub fn ivt_witness(t: &VirtualRootTriangle, a: &RealAlgebraic, b: &RealAlgebraic) -> Result<IvtWitness> {
    check_interval(a, b)?;
    let f = t.poly();
    if algebraic_sign(f, a) * algebraic_sign(f, b) >= 0 {
        return Err(Error::NoSignChange);
    }
    let mu: Vec<RealAlgebraic> = t.top().iter().map(|r| clamp(a, b, r)).collect();
    let zero_index = mu
        .iter()
        .position(|m| algebraic_sign(f, m) == 0)
        .map(|i| i + 1)
        .ok_or_else(|| domain("no clamped virtual root is a zero"))?;
    Ok(IvtWitness { mu, zero_index })
}

impl IvtWitness {
    pub fn to_json(&self) -> Value {
        json!({
            "mu": self.mu.iter().map(algebraic_to_json).collect::<Vec<_>>(),
            "zero_index": self.zero_index,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Extrema {
    pub inf: RealAlgebraic,
    pub sup: RealAlgebraic,
    pub inf_abs: RealAlgebraic,
    /// `e` when `e * f` is bounded below by a positive number on `[a, b]`, else 0
    pub constant_sign: i8,
}

/// Exact `inf f`, `sup f` and `inf |f|` on `[a, b]`.
pub fn interval_extrema(t: &VirtualRootTriangle, a: &RealAlgebraic, b: &RealAlgebraic) -> Result<Extrema> {
    if algebraic_compare(a, b) != Ordering::Less {
        return Err(domain("interval_extrema needs a < b"));
    }
    let d = t.degree();
    let f = t.poly();
    let fa = polynomial_value(f, a);
    let fb = polynomial_value(f, b);

    let mut inf = RealAlgebraic::min(&fa, &fb);
    let mut sup = RealAlgebraic::max(&fa, &fb);
    if d >= 2 {
        for r in t.row(d - 1) {
            let v = polynomial_value(f, &clamp(a, b, r));
            inf = RealAlgebraic::min(&inf, &v);
            sup = RealAlgebraic::max(&sup, &v);
        }
    }

    let abs = |x: &RealAlgebraic| {
        if x.cmp_rational(&Rational::zero()) == Ordering::Less {
            x.neg()
        } else {
            x.clone()
        }
    };
    let mut inf_abs = RealAlgebraic::min(&abs(&fa), &abs(&fb));
    for r in t.top() {
        let v = abs(&polynomial_value(f, &clamp(a, b, r)));
        inf_abs = RealAlgebraic::min(&inf_abs, &v);
    }

    let zero = Rational::zero();
    let constant_sign = if inf.cmp_rational(&zero) == Ordering::Greater {
        1
    } else if sup.cmp_rational(&zero) == Ordering::Less {
        -1
    } else {
        0
    };
    Ok(Extrema {
        inf,
        sup,
        inf_abs,
        constant_sign,
    })
}

impl Extrema {
    pub fn to_json(&self) -> Value {
        json!({
            "inf": algebraic_to_json(&self.inf),
            "sup": algebraic_to_json(&self.sup),
            "inf_abs": algebraic_to_json(&self.inf_abs),
            "constant_sign": self.constant_sign,
        })
    }
}

/// `c^d f(x / c)` for monic `f`: coefficient `a_k` becomes `c^(d-k) a_k`.
pub fn rescaled_poly(f: &UniPoly, c: &Rational) -> UniPoly {
    let d = f.degree().unwrap_or(0);
    let mut coeffs = f.coeffs().to_vec();
    let mut pw = Rational::one();
    for k in (0..d).rev() {
        pw *= c;
        coeffs[k] = &coeffs[k] * &pw;
    }
    UniPoly::new(coeffs)
}

#[derive(Clone, Debug)]
pub struct Rescaled {
    pub g: UniPoly,
    pub triangle: VirtualRootTriangle,
    /// top row of `g` predicted from the triangle of `f`
    pub predicted: Vec<RealAlgebraic>,
    /// whether the prediction matches the fresh computation exactly
    pub verified: bool,
}

/// Triangle of the rescaled polynomial, with the scaling law checked against
/// a direct computation.
pub fn rescale_roots(t: &VirtualRootTriangle, c: &Rational) -> Result<Rescaled> {
    let g = rescaled_poly(t.poly(), c);
    let fresh = virtual_roots(&g)?;
    let d = t.degree();
    let top = t.top();
    let predicted: Vec<RealAlgebraic> = (1..=d)
        .map(|j| {
            if c >= &Rational::zero() {
                top[j - 1].scale(c)
            } else {
                top[d - j].scale(c)
            }
        })
        .collect();
    let verified = predicted
        .iter()
        .zip(fresh.top())
        .all(|(p, q)| algebraic_compare(p, q) == Ordering::Equal);
    Ok(Rescaled {
        g,
        triangle: fresh,
        predicted,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::int;

    fn tri(s: &str) -> VirtualRootTriangle {
        virtual_roots(&s.parse().unwrap()).unwrap()
    }

    fn q(n: i64) -> RealAlgebraic {
        RealAlgebraic::from_rational(int(n))
    }

    #[test]
    fn budan_fourier_examples() {
        let t = tri("x^2 - 4");
        let bf = budan_fourier_index(&t, &int(1)).unwrap();
        assert_eq!(bf.r, 1);
        assert_eq!(bf.lower, ExtendedBound::Finite(q(-2)));
        assert_eq!(bf.upper, ExtendedBound::Finite(q(2)));
        let bf = budan_fourier_index(&t, &int(3)).unwrap();
        assert_eq!(bf.r, 0);
        assert_eq!(bf.lower, ExtendedBound::Finite(q(2)));
        assert_eq!(bf.upper, ExtendedBound::PosInf);
        assert_eq!(
            budan_fourier_index(&t, &int(0)).unwrap_err(),
            Error::VanishingDerivative { order: 1 }
        );
    }

    #[test]
    fn ivt_examples() {
        let t = tri("x^3 - x");
        let w = ivt_witness(&t, &q(-2), &q(2)).unwrap();
        assert_eq!(w.mu, vec![q(-1), q(0), q(1)]);
        assert_eq!(w.zero_index, 1);
        let w = ivt_witness(&tri("x"), &q(-1), &q(1)).unwrap();
        assert_eq!(w.mu, vec![q(0)]);
        let t = tri("x^2 - 4");
        assert_eq!(ivt_witness(&t, &q(0), &q(1)).unwrap_err(), Error::NoSignChange);
        assert_eq!(ivt_witness(&t, &q(1), &q(0)).unwrap_err(), Error::EmptyInterval);
    }

    #[test]
    fn extrema_examples() {
        let e = interval_extrema(&tri("x^2"), &q(-1), &q(2)).unwrap();
        assert_eq!((e.inf, e.sup, e.inf_abs, e.constant_sign), (q(0), q(4), q(0), 0));
        let e = interval_extrema(&tri("x^2"), &q(1), &q(2)).unwrap();
        assert_eq!((e.inf, e.sup, e.inf_abs, e.constant_sign), (q(1), q(4), q(1), 1));
        let e = interval_extrema(&tri("x - 5"), &q(-1), &q(1)).unwrap();
        assert_eq!((e.inf, e.sup, e.inf_abs, e.constant_sign), (q(-6), q(-4), q(4), -1));
        assert!(interval_extrema(&tri("x"), &q(1), &q(1)).is_err());
    }

    #[test]
    fn rescale_examples() {
        let t = tri("x^2 - 1");
        let r = rescale_roots(&t, &int(3)).unwrap();
        assert_eq!(r.g, "x^2 - 9".parse().unwrap());
        assert_eq!(r.triangle.top(), &[q(-3), q(3)]);
        assert!(r.verified);
        let r = rescale_roots(&t, &int(-3)).unwrap();
        assert_eq!(r.predicted, vec![q(-3), q(3)]);
        assert!(r.verified);
        let r = rescale_roots(&tri("x^3 - 2*x + 5"), &int(0)).unwrap();
        assert_eq!(r.g, "x^3".parse().unwrap());
        assert!(r.verified);
        assert_eq!(r.triangle.top(), &[q(0), q(0), q(0)]);
    }
}
