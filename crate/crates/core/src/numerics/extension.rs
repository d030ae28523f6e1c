//! Arithmetic in `Q(alpha)` for a single real algebraic `alpha`.
//!
//! Elements are polynomials in `alpha` reduced modulo a polynomial that
//! vanishes at `alpha`. The modulus is squarefree but need not be
//! irreducible; when an inverse hits a common factor the modulus is narrowed
//! to the cofactor that still vanishes at `alpha`.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::algebraic::{algebraic_sign, RealAlgebraic};
use super::poly::UniPoly;
use super::rational::Rational;
use crate::error::{domain, Result};

#[derive(Clone, Debug)]
pub struct Extension {
    alpha: RealAlgebraic,
    modulus: UniPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtElem {
    rep: UniPoly,
    modulus: UniPoly,
}

impl Extension {
    pub fn new(alpha: RealAlgebraic) -> Self {
        let modulus = alpha.defining_polynomial().monic();
        Extension { alpha, modulus }
    }

    pub fn alpha(&self) -> &RealAlgebraic {
        &self.alpha
    }

    pub fn constant(&self, q: Rational) -> ExtElem {
        ExtElem {
            rep: UniPoly::constant(q),
            modulus: self.modulus.clone(),
        }
    }

    /// The generator itself.
    pub fn generator(&self) -> ExtElem {
        self.embed(&UniPoly::x())
    }

    /// `g(alpha)` as an element.
    pub fn embed(&self, g: &UniPoly) -> ExtElem {
        ExtElem {
            rep: g.rem(&self.modulus),
            modulus: self.modulus.clone(),
        }
    }

    pub fn sign(&self, e: &ExtElem) -> i8 {
        algebraic_sign(&e.rep, &self.alpha)
    }

    pub fn is_zero(&self, e: &ExtElem) -> bool {
        self.sign(e) == 0
    }

    pub fn cmp(&self, a: &ExtElem, b: &ExtElem) -> Ordering {
        self.sign(&a.sub(b)).cmp(&0)
    }

    pub fn abs(&self, e: &ExtElem) -> ExtElem {
        if self.sign(e) < 0 {
            e.neg()
        } else {
            e.clone()
        }
    }

    pub fn inverse(&self, e: &ExtElem) -> Result<ExtElem> {
        let h = e.rep.gcd(&e.modulus);
        let modulus = if h.is_constant() {
            e.modulus.clone()
        } else {
            if algebraic_sign(&h, &self.alpha) == 0 {
                return Err(domain("division by zero in an algebraic extension"));
            }
            e.modulus.exact_div(&h).monic()
        };
        let rep = e.rep.rem(&modulus);
        let (g, s, _) = extended_gcd(&rep, &modulus);
        debug_assert!(g.is_constant() && !g.is_zero());
        let inv = s.scale(&g.coeff(0).recip()).rem(&modulus);
        Ok(ExtElem { rep: inv, modulus })
    }

    pub fn div(&self, a: &ExtElem, b: &ExtElem) -> Result<ExtElem> {
        Ok(a.mul(&self.inverse(b)?))
    }

    /// The element as a real algebraic number.
    pub fn value(&self, e: &ExtElem) -> RealAlgebraic {
        super::algebraic::polynomial_value(&e.rep, &self.alpha)
    }
}

impl ExtElem {
    pub fn representative(&self) -> &UniPoly {
        &self.rep
    }

    fn common_modulus(&self, other: &ExtElem) -> UniPoly {
        if self.modulus == other.modulus {
            self.modulus.clone()
        } else {
            // both vanish at alpha, so their gcd does too
            self.modulus.gcd(&other.modulus)
        }
    }

    fn lift(&self, rep: UniPoly, modulus: UniPoly) -> ExtElem {
        let _ = self;
        ExtElem {
            rep: rep.rem(&modulus),
            modulus,
        }
    }

    pub fn add(&self, other: &ExtElem) -> ExtElem {
        let m = self.common_modulus(other);
        self.lift(&self.rep + &other.rep, m)
    }

    pub fn sub(&self, other: &ExtElem) -> ExtElem {
        let m = self.common_modulus(other);
        self.lift(&self.rep - &other.rep, m)
    }

    pub fn mul(&self, other: &ExtElem) -> ExtElem {
        let m = self.common_modulus(other);
        self.lift(&self.rep * &other.rep, m)
    }

    pub fn neg(&self) -> ExtElem {
        ExtElem {
            rep: -&self.rep,
            modulus: self.modulus.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> ExtElem {
        ExtElem {
            rep: self.rep.scale(c),
            modulus: self.modulus.clone(),
        }
    }

    pub fn pow(&self, e: usize) -> ExtElem {
        let mut acc = ExtElem {
            rep: UniPoly::one(),
            modulus: self.modulus.clone(),
        };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// `(g, s, t)` with `g = s*a + t*b` and `g` a gcd of `a` and `b`.
pub fn extended_gcd(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
    let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s2 = &s0 - &(&q * &s1);
        let t2 = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    (r0, s0, t0)
}

/// Characteristic polynomial of `h -> g*h` on `Q[X]/(p)`, monic of degree `deg p`.
pub fn charpoly_of_multiplication(g: &UniPoly, p: &UniPoly) -> UniPoly {
    let n = p.degree().expect("modulus is nonzero");
    if n == 0 {
        return UniPoly::one();
    }
    // column k holds the coordinates of g * X^k mod p
    let mut m = vec![vec![Rational::zero(); n]; n];
    let mut col = g.rem(p);
    for k in 0..n {
        for (i, row) in m.iter_mut().enumerate() {
            row[k] = col.coeff(i);
        }
        col = (&col * &UniPoly::x()).rem(p);
    }
    faddeev_leverrier(&m)
}

/// Characteristic polynomial `det(tI - A)` of a square rational matrix.
pub fn faddeev_leverrier(a: &[Vec<Rational>]) -> UniPoly {
    let n = a.len();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut mk = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = matmul(a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        mk = next;
        let am = matmul(a, &mk);
        let trace: Rational = (0..n).map(|i| am[i][i].clone()).sum();
        c[n - k] = -trace / Rational::from_integer(k.into());
    }
    UniPoly::new(c)
}

fn matmul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::int;

    fn p(s: &str) -> UniPoly {
        s.parse().unwrap()
    }

    #[test]
    fn charpoly_small() {
        // multiplication by X on Q[X]/(X^2 - 2) has charpoly X^2 - 2
        assert_eq!(charpoly_of_multiplication(&UniPoly::x(), &p("x^2 - 2")), p("x^2 - 2"));
        // by X + 1: roots 1 +- sqrt 2
        assert_eq!(
            charpoly_of_multiplication(&p("x + 1"), &p("x^2 - 2")),
            p("x^2 - 2*x - 1")
        );
        let a = vec![vec![int(2), int(1)], vec![int(0), int(3)]];
        assert_eq!(faddeev_leverrier(&a), p("x^2 - 5*x + 6"));
    }

    #[test]
    fn field_ops() {
        let s2 = RealAlgebraic::isolated(&p("x^2 - 2"), int(1), int(2)).unwrap();
        let k = Extension::new(s2);
        let a = k.generator();
        assert!(k.is_zero(&a.mul(&a).sub(&k.constant(int(2)))));
        let inv = k.inverse(&a).unwrap();
        assert!(k.is_zero(&inv.mul(&a).sub(&k.constant(int(1)))));
        assert_eq!(k.sign(&a.sub(&k.constant(int(2)))), -1);
        assert!(k.inverse(&k.constant(int(0))).is_err());
    }

    #[test]
    fn narrowing_on_reducible_modulus() {
        // alpha = sqrt 2 described through X^4 - 4 whose other factor is X^2 + 2
        let alpha = RealAlgebraic::isolated(&p("x^4 - 4"), int(1), int(2)).unwrap();
        let k = Extension::new(alpha);
        let e = k.embed(&p("x^2 + 2")); // = 4, a unit though it shares a factor with the modulus
        let inv = k.inverse(&e).unwrap();
        assert!(k.is_zero(&inv.sub(&k.constant(Rational::new(1.into(), 4.into())))));
        let z = k.embed(&p("x^2 - 2"));
        assert!(k.inverse(&z).is_err());
    }
}
