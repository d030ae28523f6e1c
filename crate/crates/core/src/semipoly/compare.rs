use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::nf::{to_sup_inf_nf_in, SupInfNF};
use super::term::LatticeTerm;
use crate::error::{domain, Result};
use crate::numerics::rational::{midpoint, simplest_between};
use crate::numerics::{algebraic_compare, polynomial_value, real_roots, RealAlgebraic, Rational, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemiEq {
    Equal,
    /// first sample, in increasing order, where the two functions differ
    DiffersAt {
        witness: Rational,
        left: Rational,
        right: Rational,
    },
}

fn univariate_families(n: &SupInfNF) -> Vec<Vec<UniPoly>> {
    n.families()
        .iter()
        .map(|inner| inner.iter().map(|p| p.to_univariate()).collect())
        .collect()
}

fn eval_at(fams: &[Vec<UniPoly>], x: &RealAlgebraic) -> RealAlgebraic {
    let min = |inner: &Vec<UniPoly>| {
        inner
            .iter()
            .map(|p| polynomial_value(p, x))
            .min_by(algebraic_compare)
            .expect("inner family is never empty")
    };
    fams.iter().map(min).max_by(algebraic_compare).expect("at least one family")
}

/// Decides whether two terms in at most one variable define the same function.
///
/// Both sides are piecewise equal to one of finitely many polynomials, and the
/// pieces can only switch where two of those polynomials meet. Sampling every
/// such meeting point, a point inside every cell between them and one point
/// beyond each end therefore decides equality.
pub fn univar_semipoly_compare(s1: &LatticeTerm, s2: &LatticeTerm) -> Result<SemiEq> {
    let mut vars = s1.variables();
    vars.extend(s2.variables());
    if vars.len() > 1 {
        return Err(domain(format!(
            "semipolynomial comparison is univariate; found variables {}",
            vars.into_iter().collect::<Vec<_>>().join(", ")
        )));
    }
    let vars: Vec<String> = vars.into_iter().collect();
    let n1 = to_sup_inf_nf_in(s1, &vars);
    let n2 = to_sup_inf_nf_in(s2, &vars);
    let f1 = univariate_families(&n1);
    let f2 = univariate_families(&n2);

    let mut polys: Vec<UniPoly> = f1.iter().chain(&f2).flatten().cloned().collect();
    polys.sort_by_key(|p| p.to_string());
    polys.dedup();
    let mut roots: Vec<RealAlgebraic> = Vec::new();
    for (i, p) in polys.iter().enumerate() {
        for q in &polys[i + 1..] {
            let d = p - q;
            if !d.is_zero() {
                roots.extend(real_roots(&d)?);
            }
        }
    }
    roots.sort_by(algebraic_compare);
    roots.dedup_by(|a, b| algebraic_compare(a, b) == Ordering::Equal);

    let rational_value = |n: &SupInfNF, x: &Rational| {
        let point: Vec<Rational> = if vars.is_empty() { vec![] } else { vec![x.clone()] };
        n.eval(&point)
    };
    let check = |x: &Rational| -> Option<SemiEq> {
        let (a, b) = (rational_value(&n1, x), rational_value(&n2, x));
        (a != b).then(|| SemiEq::DiffersAt {
            witness: x.clone(),
            left: a,
            right: b,
        })
    };

    if roots.is_empty() {
        return Ok(check(&Rational::zero()).unwrap_or(SemiEq::Equal));
    }
    let first = roots[0].bounds().0 - Rational::one();
    if let Some(d) = check(&first) {
        return Ok(d);
    }
    let mut prev_mid = first;
    for (i, r) in roots.iter().enumerate() {
        let at_root_differs =
            algebraic_compare(&eval_at(&f1, r), &eval_at(&f2, r)) != Ordering::Equal;
        // a rational point strictly between this root and the next one
        let next = match roots.get(i + 1) {
            Some(s) => between(r, s),
            None => r.bounds().1 + Rational::one(),
        };
        if at_root_differs {
            // by continuity the difference persists on both sides of r
            return Ok(check(&prev_mid).or_else(|| check(&next)).expect("continuity"));
        }
        if let Some(d) = check(&next) {
            return Ok(d);
        }
        prev_mid = next;
    }
    Ok(SemiEq::Equal)
}

/// A rational strictly between two real algebraic numbers `a < b`.
fn between(a: &RealAlgebraic, b: &RealAlgebraic) -> Rational {
    if let (RealAlgebraic::Rational(x), RealAlgebraic::Rational(y)) = (a, b) {
        return midpoint(x, y);
    }
    let mut w = Rational::one();
    loop {
        let (_, ahi) = a.refined(&w).bounds();
        let (blo, _) = b.refined(&w).bounds();
        if ahi < blo {
            return simplest_between(&ahi, Some(&blo));
        }
        w /= Rational::from_integer(2.into());
    }
}
