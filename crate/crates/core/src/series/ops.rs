use num_traits::{One, Zero};

use super::LazySeries;
use crate::error::{Error, Result};
use crate::numerics::rational::int;
use crate::numerics::Rational;
use crate::semipoly::{polynomial_of, LatticeTerm};

/// `kappa_k(xi)`.
pub fn series_sign_potential(xi: &LazySeries, k: usize) -> i8 {
    xi.kappa(k)
}

/// `c_k(|xi|) = kappa_k(xi) c_k(xi)`.
pub fn series_abs(xi: &LazySeries) -> LazySeries {
    let a = xi.clone();
    LazySeries::from_fn(move |k| a.coeff(k) * int(a.kappa(k) as i64))
}

/// `(xi + zeta + |xi - zeta|) / 2`.
pub fn series_sup(xi: &LazySeries, zeta: &LazySeries) -> LazySeries {
    xi.add(zeta).add(&series_abs(&xi.sub(zeta))).scale(&Rational::new(1.into(), 2.into()))
}

/// `(xi + zeta - |xi - zeta|) / 2`.
pub fn series_inf(xi: &LazySeries, zeta: &LazySeries) -> LazySeries {
    xi.add(zeta).sub(&series_abs(&xi.sub(zeta))).scale(&Rational::new(1.into(), 2.into()))
}

/// Inverse of a series with `kappa_0 = +-1`. Writing `xi = c0 (1 - a)` with
/// `v(a) > 0`, the inverse is `c0^-1 s` where `s = 1 + a + a^2 + ...`
/// satisfies `s = 1 + a s`, so `s_k` only needs `s_0 .. s_(k-1)`.
pub fn series_inverse(xi: &LazySeries) -> Result<LazySeries> {
    let c0 = xi.coeff(0);
    if c0.is_zero() {
        return Err(Error::NotAUnit("kappa_0 is 0: the constant coefficient vanishes".into()));
    }
    let x = xi.clone();
    let inv0 = Rational::one() / &c0;
    let s = LazySeries::from_rule(move |k, s| {
        if k == 0 {
            return Rational::one();
        }
        // a_i = -c_i / c0 for i >= 1
        (1..=k).map(|i| -x.coeff(i) * &inv0 * &s[k - i]).sum()
    });
    Ok(s.scale(&(Rational::one() / c0)))
}

#[derive(Clone, Debug)]
pub enum FracResult {
    /// `rho` with `rho zeta = xi^2` and `0 <= rho <= xi`
    Series(LazySeries),
    /// no positive potential of `zeta` within the fuel; the coefficients of
    /// `rho` known so far, all zero
    Unknown { prefix: Vec<Rational> },
}

/// The `rho` of `0 <= xi <= zeta |- rho zeta = xi^2, 0 <= rho <= xi`.
///
/// The order hypothesis is probed up to `fuel`. Once `v(zeta) = k` is seen,
/// `zeta = e^k g` with `g` a unit and `xi = e^k b`, and `rho = e^k b^2 g^-1`.
pub fn series_frac(xi: &LazySeries, zeta: &LazySeries, fuel: usize) -> Result<FracResult> {
    let gap = zeta.sub(xi);
    let mut val = None;
    for k in 0..=fuel {
        if xi.kappa(k) < 0 {
            return Err(Error::OrderViolation {
                depth: k,
                what: "xi < 0".into(),
            });
        }
        if gap.kappa(k) < 0 {
            return Err(Error::OrderViolation {
                depth: k,
                what: "xi > zeta".into(),
            });
        }
        if val.is_none() && zeta.kappa(k) == 1 {
            val = Some(k);
        }
    }
    let Some(k) = val else {
        return Ok(FracResult::Unknown {
            prefix: vec![Rational::zero(); fuel + 1],
        });
    };
    let b = xi.divide_by_epsilon_power(k)?;
    let g = zeta.divide_by_epsilon_power(k)?;
    let rho = b.mul(&b).mul(&series_inverse(&g)?).shift_up(k);
    Ok(FracResult::Series(rho))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OtfSide {
    Left,
    Right,
    Unknown,
}

/// From a witness `kappa_k(xi + zeta) = 1`, which of `xi > 0`, `zeta > 0`
/// holds. If `xi` has no positive potential up to `v(xi + zeta)`, its first
/// nonzero coefficient there is negative or absent and `zeta` carries the
/// positivity.
pub fn series_otf_split(xi: &LazySeries, zeta: &LazySeries, k: usize) -> OtfSide {
    let sum = xi.add(zeta);
    if sum.kappa(k) != 1 {
        return OtfSide::Unknown;
    }
    let v = sum.valuation_within(k).expect("positive potential has a nonzero coefficient");
    if xi.kappa(v) == 1 {
        OtfSide::Left
    } else {
        debug_assert_eq!(zeta.kappa(v), 1);
        OtfSide::Right
    }
}

/// A polynomial `a_0 + a_1 X + ... ` with series coefficients.
#[derive(Clone, Debug)]
pub struct SeriesPoly {
    pub coeffs: Vec<LazySeries>,
}

impl SeriesPoly {
    pub fn new(coeffs: Vec<LazySeries>) -> Self {
        SeriesPoly { coeffs }
    }

    /// A polynomial in `X` whose coefficients are polynomials in `e`,
    /// such as `X^2 + X - e`.
    pub fn parse(text: &str) -> Result<Self> {
        let t: LatticeTerm = text.parse()?;
        let p = polynomial_of(&t, &["X".to_string(), "e".to_string()])?;
        let deg = p.terms().map(|(e, _)| e[0] as usize).max().unwrap_or(0);
        let mut table = vec![Vec::<Rational>::new(); deg + 1];
        for (e, c) in p.terms() {
            let (i, j) = (e[0] as usize, e[1] as usize);
            let row = &mut table[i];
            if row.len() <= j {
                row.resize(j + 1, Rational::zero());
            }
            row[j] = c.clone();
        }
        Ok(SeriesPoly::new(table.into_iter().map(LazySeries::polynomial).collect()))
    }

    pub fn coefficient(&self, i: usize) -> LazySeries {
        self.coeffs.get(i).cloned().unwrap_or_else(LazySeries::zero)
    }

    pub fn derivative(&self) -> SeriesPoly {
        SeriesPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.scale(&int(i as i64)))
                .collect(),
        )
    }

    /// `P(xi)` by Horner's rule with series products.
    pub fn eval(&self, xi: &LazySeries) -> LazySeries {
        self.coeffs
            .iter()
            .rev()
            .fold(LazySeries::zero(), |acc, a| acc.mul(xi).add(a))
    }
}

/// The root `xi` with `v(xi) > 0` of `P` when `v(P(0)) > 0` and
/// `v(P'(0)) = 0`, both read at depth 0.
///
/// Newton's step is taken one coefficient at a time: with `t` the root
/// truncated below `e^k`, `P(t + x e^k) = P(t) + P'(0)_0 x e^k` modulo
/// `e^(k+1)`, so `x = -c_k(P(t)) / c_0(P'(0))`.
pub fn hensel_newton_root(p: &SeriesPoly) -> Result<LazySeries> {
    if !p.coefficient(0).coeff(0).is_zero() {
        return Err(Error::Precondition("v(P(0)) > 0 fails: kappa_0(P(0)) is nonzero".into()));
    }
    let d0 = p.coefficient(1).coeff(0);
    if d0.is_zero() {
        return Err(Error::Precondition("v(P'(0)) = 0 fails: kappa_0(P'(0)) is 0".into()));
    }
    let coeffs = p.coeffs.clone();
    Ok(LazySeries::from_rule(move |k, t| {
        if k == 0 {
            return Rational::zero();
        }
        // coefficient k of sum_i a_i t^i, with powers of t truncated at degree k
        let mut power = vec![Rational::zero(); k + 1];
        power[0] = Rational::one();
        let mut ck = Rational::zero();
        for (i, a) in coeffs.iter().enumerate() {
            if i > 0 {
                let mut next = vec![Rational::zero(); k + 1];
                for (m, pm) in power.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for (j, tj) in t.iter().enumerate().take(k + 1 - m).skip(1) {
                        next[m + j] += pm * tj;
                    }
                }
                power = next;
            }
            for (j, pj) in power.iter().enumerate() {
                if !pj.is_zero() {
                    ck += a.coeff(k - j) * pj;
                }
            }
        }
        -ck / &d0
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::rat;

    fn poly(cs: &[i64]) -> LazySeries {
        LazySeries::polynomial(cs.iter().map(|&c| int(c)).collect())
    }

    fn ints(s: &LazySeries, n: usize) -> Vec<Rational> {
        s.coeffs(n)
    }

    #[test]
    fn abs_and_sup() {
        let s = poly(&[0, 1, -2]);
        assert_eq!(ints(&series_abs(&s), 3), ints(&s, 3));
        assert_eq!(ints(&series_abs(&poly(&[0, -1])), 2), vec![int(0), int(1)]);
        let e = LazySeries::epsilon();
        let e2 = poly(&[0, 0, 1]);
        assert_eq!(ints(&series_sup(&e, &e2), 10), ints(&e, 10));
        assert_eq!(ints(&series_inf(&e, &e2), 10), ints(&e2, 10));
    }

    #[test]
    fn inverses() {
        let g = series_inverse(&poly(&[1, -1])).unwrap();
        assert!(g.coeffs(51).iter().all(|c| *c == int(1)));
        let half = series_inverse(&poly(&[2])).unwrap();
        assert_eq!(ints(&half, 3), vec![rat(1, 2), int(0), int(0)]);
        assert!(matches!(series_inverse(&LazySeries::epsilon()), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn frac_examples() {
        let e = LazySeries::epsilon();
        let e2 = poly(&[0, 0, 1]);
        match series_frac(&e2, &e, 10).unwrap() {
            FracResult::Series(r) => assert_eq!(ints(&r, 6), ints(&poly(&[0, 0, 0, 1, 0, 0]), 6)),
            other => panic!("{other:?}"),
        }
        let z = poly(&[0, 3, 1]);
        match series_frac(&z, &z, 5).unwrap() {
            FracResult::Series(r) => assert_eq!(ints(&r, 20), ints(&z, 20)),
            other => panic!("{other:?}"),
        }
        match series_frac(&LazySeries::zero(), &z, 5).unwrap() {
            FracResult::Series(r) => assert!(ints(&r, 20).iter().all(Zero::is_zero)),
            other => panic!("{other:?}"),
        }
        match series_frac(&LazySeries::zero(), &poly(&[0, 0, 0, 0, 0, 0, 0, 1]), 5).unwrap() {
            FracResult::Unknown { prefix } => assert_eq!(prefix.len(), 6),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            series_frac(&e, &e2, 5),
            Err(Error::OrderViolation { depth: 1, .. })
        ));
        assert!(matches!(
            series_frac(&e.neg(), &e, 5),
            Err(Error::OrderViolation { depth: 1, .. })
        ));
    }

    #[test]
    fn otf_examples() {
        let e = LazySeries::epsilon();
        let e2 = poly(&[0, 0, 1]);
        assert_eq!(series_otf_split(&e, &e2, 1), OtfSide::Left);
        assert_eq!(series_otf_split(&poly(&[0, -1, 1]), &e, 2), OtfSide::Right);
        assert_eq!(series_otf_split(&e2, &e.neg(), 1), OtfSide::Unknown);
    }

    #[test]
    fn newton_examples() {
        let r = hensel_newton_root(&SeriesPoly::parse("X - e").unwrap()).unwrap();
        assert_eq!(ints(&r, 4), vec![int(0), int(1), int(0), int(0)]);
        let p = SeriesPoly::parse("X^2 + X - e").unwrap();
        let r = hensel_newton_root(&p).unwrap();
        assert_eq!(ints(&r, 3), vec![int(0), int(1), int(-1)]);
        // Catalan numbers with alternating signs
        assert_eq!(r.coeff(5), int(14));
        assert!(p.eval(&r).coeffs(50).iter().all(Zero::is_zero));
        assert!(matches!(
            hensel_newton_root(&SeriesPoly::parse("X^2 - e").unwrap()),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            hensel_newton_root(&SeriesPoly::parse("X + 1").unwrap()),
            Err(Error::Precondition(_))
        ));
    }
}
