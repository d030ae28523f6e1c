//! Square roots of a complex number `a + ib` with rational parts.
//!
//! `u` and `v` are the nonnegative roots of `4X^4 - 4aX^2 - b^2` and
//! `4X^4 + 4aX^2 - b^2`; `z1 = u + i s v` with `s` the sign of `b` (plus one
//! when `b = 0`). All checks run exactly in `Q(w)`, `w` being `u`, or `v`
//! when `u` vanishes.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::triangle::algebraic_to_json;
use crate::error::Result;
use crate::numerics::rational::int;
use crate::numerics::{algebraic_compare, real_roots, ExtElem, Extension, RealAlgebraic, Rational, UniPoly};

#[derive(Clone, Debug)]
pub struct ComplexSqrtCover {
    pub u: RealAlgebraic,
    pub v: RealAlgebraic,
    /// sign attached to `v` in `z1 = u + i s v`
    pub s: i8,
    /// `(Z - z1)(Z - conj z1) = Z^2 - 2u Z + (u^2 + v^2)`, coefficients low to high
    pub f1: Vec<RealAlgebraic>,
    /// `(Z + z1)(Z + conj z1)`
    pub f2: Vec<RealAlgebraic>,
    /// `z1^2 = a + ib`
    pub square_ok: bool,
    /// `u v b >= 0` for the signed imaginary part
    pub sign_ok: bool,
    /// `g(Z^2) = f1 f2` with `g = (Z - c)(Z - conj c)`
    pub identity_ok: bool,
}

fn nonnegative_root(p: &UniPoly) -> RealAlgebraic {
    real_roots(p)
        .expect("nonzero quartic")
        .pop()
        .expect("a quartic of this shape has a nonnegative root")
}

pub fn complex_sqrt_cover(a: &Rational, b: &Rational) -> Result<ComplexSqrtCover> {
    let b2 = b * b;
    let pu = UniPoly::new(vec![-b2.clone(), Rational::zero(), -(a * int(4)), Rational::zero(), int(4)]);
    let pv = UniPoly::new(vec![-b2, Rational::zero(), a * int(4), Rational::zero(), int(4)]);
    let u = nonnegative_root(&pu);
    let v = nonnegative_root(&pv);
    let s: i8 = if b.is_negative() { -1 } else { 1 };
    let u_zero = u.cmp_rational(&Rational::zero()) == Ordering::Equal;

    // Both u and v as elements of one extension.
    let (k, ue, ve) = if u_zero {
        let k = Extension::new(v.clone());
        let ue = k.constant(Rational::zero());
        let ve = k.generator();
        (k, ue, ve)
    } else {
        let k = Extension::new(u.clone());
        let ue = k.generator();
        // v = |b| / (2u), to be confirmed against the independent definition
        let ve = k.div(&k.constant(b.abs()), &ue.scale(&int(2)))?;
        (k, ue, ve)
    };
    let v_matches = algebraic_compare(&k.value(&ve), &v) == Ordering::Equal;

    let eq = |x: &ExtElem, q: &Rational| k.is_zero(&x.sub(&k.constant(q.clone())));
    let u2 = ue.mul(&ue);
    let v2 = ve.mul(&ve);
    let sv = ve.scale(&Rational::from_integer(s.into()));
    let re = u2.sub(&v2);
    let im = ue.mul(&sv).scale(&int(2));
    let square_ok = v_matches && eq(&re, a) && eq(&im, b);

    let uvb = k.sign(&ue.mul(&sv)) * crate::numerics::rational::sign(b);
    let sign_ok = uvb >= 0;

    // f1 f2 = Z^4 + (2 n - 4 u^2) Z^2 + n^2 with n = u^2 + v^2,
    // g(Z^2) = Z^4 - 2a Z^2 + (a^2 + b^2)
    let n = u2.add(&v2);
    let mid = n.scale(&int(2)).sub(&u2.scale(&int(4)));
    let identity_ok = v_matches && eq(&mid, &(-a * int(2))) && eq(&n.mul(&n), &(a * a + b * b));

    let two_u = k.value(&ue.scale(&int(2)));
    let nv = k.value(&n);
    let f1 = vec![nv.clone(), two_u.neg(), RealAlgebraic::from_rational(int(1))];
    let f2 = vec![nv, two_u, RealAlgebraic::from_rational(int(1))];
    Ok(ComplexSqrtCover {
        u,
        v,
        s,
        f1,
        f2,
        square_ok,
        sign_ok,
        identity_ok,
    })
}

impl ComplexSqrtCover {
    pub fn to_json(&self) -> Value {
        let coeffs = |c: &[RealAlgebraic]| c.iter().map(algebraic_to_json).collect::<Vec<_>>();
        json!({
            "u": algebraic_to_json(&self.u),
            "v": algebraic_to_json(&self.v),
            "imaginary_sign": self.s,
            "f1": coeffs(&self.f1),
            "f2": coeffs(&self.f2),
            "square_ok": self.square_ok,
            "sign_ok": self.sign_ok,
            "identity_ok": self.identity_ok,
        })
    }
}
