//! Real algebraic numbers as (defining polynomial, isolating interval) pairs,
//! with exact sign and order decisions.
//!
//! Every `Isolated` value is kept in a canonical shape: its defining
//! polynomial is squarefree, has no rational root anywhere inside the
//! isolating interval, and does not vanish at either endpoint. A root that
//! happens to be rational is always stored as `Rational`. This makes the
//! comparison against a rational a single sign evaluation and lets equality
//! be decided by gcd instead of by refinement.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::poly::{Sturm, UniPoly};
use super::rational::{format_rational, midpoint, sign, simplest_between, Rational};
use crate::error::{domain, Result};

#[derive(Clone, PartialEq, Eq)]
pub enum RealAlgebraic {
    Rational(Rational),
    Isolated(IsolatedRoot),
}

/// The unique root of `defpoly` strictly between `lo` and `hi`.
#[derive(Clone, PartialEq, Eq)]
pub struct IsolatedRoot {
    defpoly: UniPoly,
    lo: Rational,
    hi: Rational,
    /// sign of `defpoly(lo)`, never zero
    sign_lo: i8,
}

impl IsolatedRoot {
    pub fn defpoly(&self) -> &UniPoly {
        &self.defpoly
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Halves the interval. The midpoint is never a root (no rational roots inside).
    pub fn bisect(&mut self) {
        let m = midpoint(&self.lo, &self.hi);
        let s = self.defpoly.sign_at(&m);
        debug_assert!(s != 0);
        if s == self.sign_lo {
            self.lo = m;
        } else {
            self.hi = m;
        }
    }

    /// Moves the interval to one side of `q` and reports on which side the root is.
    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        if q <= &self.lo {
            return Ordering::Greater;
        }
        if q >= &self.hi {
            return Ordering::Less;
        }
        let s = self.defpoly.sign_at(q);
        debug_assert!(s != 0);
        if s == self.sign_lo {
            // no sign change on (lo, q]: root is above q
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn refine_until(&mut self, width: &Rational) {
        while &self.width() > width {
            self.bisect();
        }
    }
}

impl RealAlgebraic {
    pub fn from_rational(q: Rational) -> Self {
        RealAlgebraic::Rational(q)
    }

    pub fn zero() -> Self {
        RealAlgebraic::Rational(Rational::zero())
    }

    /// Builds the root of `p` isolated by the open interval `(lo, hi)`.
    ///
    /// `p` need not be squarefree or free of rational roots; the result is
    /// canonicalized. Fails unless `lo < hi`, `p` does not vanish at either
    /// endpoint and `p` has exactly one distinct real root inside.
    pub fn isolated(p: &UniPoly, lo: Rational, hi: Rational) -> Result<Self> {
        if p.is_zero() {
            return Err(domain("defining polynomial is zero"));
        }
        if lo >= hi {
            return Err(domain("isolating interval is empty"));
        }
        let sf = p.squarefree_part();
        if sf.sign_at(&lo) == 0 || sf.sign_at(&hi) == 0 {
            return Err(domain("defining polynomial vanishes at an interval endpoint"));
        }
        if Sturm::new(&sf).count(&lo, &hi) != 1 {
            return Err(domain("interval does not isolate exactly one root"));
        }
        Ok(canonical_root(&sf, lo, hi))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            RealAlgebraic::Rational(q) => Some(q),
            RealAlgebraic::Isolated(_) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, RealAlgebraic::Rational(_))
    }

    /// A squarefree polynomial vanishing at the value.
    pub fn defining_polynomial(&self) -> UniPoly {
        match self {
            RealAlgebraic::Rational(q) => UniPoly::linear_root(q),
            RealAlgebraic::Isolated(r) => r.defpoly.clone(),
        }
    }

    /// Enclosing rational interval (a point for rationals).
    pub fn bounds(&self) -> (Rational, Rational) {
        match self {
            RealAlgebraic::Rational(q) => (q.clone(), q.clone()),
            RealAlgebraic::Isolated(r) => (r.lo.clone(), r.hi.clone()),
        }
    }

    /// A copy whose enclosing interval is no wider than `width`.
    pub fn refined(&self, width: &Rational) -> Self {
        match self {
            RealAlgebraic::Rational(_) => self.clone(),
            RealAlgebraic::Isolated(r) => {
                let mut r = r.clone();
                r.refine_until(width);
                RealAlgebraic::Isolated(r)
            }
        }
    }

    /// Rational approximation within `tol` of the value.
    pub fn approximate(&self, tol: &Rational) -> Rational {
        match self {
            RealAlgebraic::Rational(q) => q.clone(),
            RealAlgebraic::Isolated(r) => {
                let mut r = r.clone();
                r.refine_until(tol);
                midpoint(&r.lo, &r.hi)
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let tol = Rational::new(1.into(), num_bigint::BigInt::from(1u64) << 60);
        self.approximate(&tol).to_f64().unwrap_or(f64::NAN)
    }

    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        match self {
            RealAlgebraic::Rational(p) => p.cmp(q),
            RealAlgebraic::Isolated(r) => r.cmp_rational(q),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// `c * self` for a rational `c`.
    pub fn scale(&self, c: &Rational) -> Self {
        match self {
            RealAlgebraic::Rational(q) => RealAlgebraic::Rational(q * c),
            RealAlgebraic::Isolated(_) if c.is_zero() => RealAlgebraic::zero(),
            RealAlgebraic::Isolated(r) => {
                // root of p(X / c)
                let p = r.defpoly.compose_scale(&c.recip()).monic();
                let (a, b) = (&r.lo * c, &r.hi * c);
                let (lo, hi) = if c.is_negative() { (b, a) } else { (a, b) };
                let sign_lo = p.sign_at(&lo);
                RealAlgebraic::Isolated(IsolatedRoot {
                    defpoly: p,
                    lo,
                    hi,
                    sign_lo,
                })
            }
        }
    }

    /// `self + c` for a rational `c`.
    pub fn shift(&self, c: &Rational) -> Self {
        match self {
            RealAlgebraic::Rational(q) => RealAlgebraic::Rational(q + c),
            RealAlgebraic::Isolated(r) => {
                let p = r.defpoly.compose_shift(&-c.clone());
                let (lo, hi) = (&r.lo + c, &r.hi + c);
                let sign_lo = p.sign_at(&lo);
                RealAlgebraic::Isolated(IsolatedRoot {
                    defpoly: p,
                    lo,
                    hi,
                    sign_lo,
                })
            }
        }
    }

    pub fn max(a: &Self, b: &Self) -> Self {
        if algebraic_compare(a, b) == Ordering::Less {
            b.clone()
        } else {
            a.clone()
        }
    }

    pub fn min(a: &Self, b: &Self) -> Self {
        if algebraic_compare(a, b) == Ordering::Greater {
            b.clone()
        } else {
            a.clone()
        }
    }
}

/// Canonical root of the squarefree `sf` inside `(lo, hi)`, which must
/// isolate exactly one root and have nonzero endpoint values.
fn canonical_root(sf: &UniPoly, lo: Rational, hi: Rational) -> RealAlgebraic {
    let (lo, hi) = match rational_in(sf, lo, hi) {
        Ok(q) => return RealAlgebraic::Rational(q),
        Err(bounds) => bounds,
    };
    // Drop the rational roots of the defining polynomial so that no rational
    // is ever a root of it.
    let stripped = strip_rational_roots(sf);
    let sign_lo = stripped.sign_at(&lo);
    RealAlgebraic::Isolated(IsolatedRoot {
        defpoly: stripped,
        lo,
        hi,
        sign_lo,
    })
}

/// The root of `sf` in `(lo, hi)` if it is rational, else a narrowed interval.
fn rational_in(
    sf: &UniPoly,
    mut lo: Rational,
    mut hi: Rational,
) -> std::result::Result<Rational, (Rational, Rational)> {
    // Two distinct rationals whose denominators divide N differ by at least
    // 1/N^2, where N is the leading coefficient of the primitive integer
    // form. Once the interval is narrower than that, the only candidate for a
    // rational root is the simplest rational inside.
    let sign_lo = sf.sign_at(&lo);
    let ints = sf.integer_coeffs();
    let lead = ints.last().unwrap().abs();
    let limit = Rational::new(One::one(), &lead * &lead);
    while &hi - &lo > limit {
        let m = midpoint(&lo, &hi);
        match sf.sign_at(&m) {
            0 => return Ok(m),
            s if s == sign_lo => lo = m,
            _ => hi = m,
        }
    }
    let cand = simplest_between(&lo, Some(&hi));
    if sf.sign_at(&cand) == 0 {
        Ok(cand)
    } else {
        Err((lo, hi))
    }
}

/// Divides a squarefree polynomial by `X - q` for each of its rational roots.
fn strip_rational_roots(sf: &UniPoly) -> UniPoly {
    let mut p = sf.monic();
    for q in rational_roots(&p) {
        p = p.exact_div(&UniPoly::linear_root(&q));
    }
    p
}

/// Rational roots of a nonzero polynomial, without multiplicity, increasing.
pub fn rational_roots(p: &UniPoly) -> Vec<Rational> {
    let sf = p.squarefree_part();
    if sf.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    isolate_squarefree(&sf)
        .into_iter()
        .filter_map(|(lo, hi, exact)| exact.or_else(|| rational_in(&sf, lo, hi).ok()))
        .collect()
}

/// Isolating intervals for the real roots of a squarefree polynomial, in
/// increasing order. Each entry is `(lo, hi, Some(root))` when bisection
/// landed on the root, otherwise an open interval with nonzero endpoint values
/// containing exactly one root.
fn isolate_squarefree(sf: &UniPoly) -> Vec<(Rational, Rational, Option<Rational>)> {
    let sturm = Sturm::new(sf);
    let b = sf.cauchy_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b.clone())];
    // Depth-first, right half pushed first, so roots come out increasing.
    while let Some((lo, hi)) = stack.pop() {
        let n = sturm.count(&lo, &hi);
        if n == 0 {
            continue;
        }
        if sf.sign_at(&hi) == 0 {
            if n == 1 {
                out.push((lo, hi.clone(), Some(hi)));
                continue;
            }
        } else if n == 1 && sf.sign_at(&lo) != 0 {
            out.push((lo, hi, None));
            continue;
        }
        let m = midpoint(&lo, &hi);
        stack.push((m.clone(), hi));
        stack.push((lo, m));
    }
    out
}

/// Distinct real roots of `f` in increasing order, with multiplicities.
pub fn isolate_real_roots(f: &UniPoly) -> Result<Vec<(RealAlgebraic, usize)>> {
    if f.is_zero() {
        return Err(domain("cannot isolate the roots of the zero polynomial"));
    }
    let mut roots: Vec<(RealAlgebraic, usize)> = Vec::new();
    for (factor, mult) in f.squarefree_decomposition() {
        for (lo, hi, exact) in isolate_squarefree(&factor) {
            let r = match exact {
                Some(q) => RealAlgebraic::Rational(q),
                None => canonical_root(&factor, lo, hi),
            };
            roots.push((r, mult));
        }
    }
    roots.sort_by(|a, b| algebraic_compare(&a.0, &b.0));
    Ok(roots)
}

/// Distinct real roots of `f` in increasing order.
pub fn real_roots(f: &UniPoly) -> Result<Vec<RealAlgebraic>> {
    Ok(isolate_real_roots(f)?.into_iter().map(|(r, _)| r).collect())
}

/// Exact sign of `g(alpha)`.
pub fn algebraic_sign(g: &UniPoly, alpha: &RealAlgebraic) -> i8 {
    match alpha {
        RealAlgebraic::Rational(q) => g.sign_at(q),
        RealAlgebraic::Isolated(r) => {
            if g.is_zero() {
                return 0;
            }
            if g.is_constant() {
                return sign(&g.leading());
            }
            // alpha is a root of g iff it is a root of h = gcd(g, defpoly);
            // h divides the squarefree defpoly, so it has at most one root in
            // the interval and is nonzero at both endpoints.
            let h = g.gcd(&r.defpoly);
            if h.degree().unwrap_or(0) > 0 && h.sign_at(&r.lo) != h.sign_at(&r.hi) {
                return 0;
            }
            // g(alpha) != 0: shrink until g has no root in [lo, hi].
            let gs = g.squarefree_part();
            let sturm = Sturm::new(&gs);
            let mut r = r.clone();
            loop {
                if gs.sign_at(&r.lo) != 0 && sturm.count(&r.lo, &r.hi) == 0 {
                    return g.sign_at(&r.lo);
                }
                r.bisect();
            }
        }
    }
}

/// Exact order of two real algebraic numbers.
pub fn algebraic_compare(a: &RealAlgebraic, b: &RealAlgebraic) -> Ordering {
    match (a, b) {
        (RealAlgebraic::Rational(p), RealAlgebraic::Rational(q)) => p.cmp(q),
        (RealAlgebraic::Isolated(r), RealAlgebraic::Rational(q)) => r.cmp_rational(q),
        (RealAlgebraic::Rational(p), RealAlgebraic::Isolated(r)) => r.cmp_rational(p).reverse(),
        (RealAlgebraic::Isolated(ra), RealAlgebraic::Isolated(rb)) => {
            if ra.hi <= rb.lo {
                return Ordering::Less;
            }
            if rb.hi <= ra.lo {
                return Ordering::Greater;
            }
            // Equal iff a is a root of g = gcd(pa, pb) and lies inside b's
            // interval (b being the only root of pb there).
            let g = ra.defpoly.gcd(&rb.defpoly);
            if g.degree().unwrap_or(0) > 0 && g.sign_at(&ra.lo) != g.sign_at(&ra.hi) {
                let lo_ok = ra_cmp(ra, &rb.lo) == Ordering::Greater;
                let hi_ok = ra_cmp(ra, &rb.hi) == Ordering::Less;
                if lo_ok && hi_ok {
                    return Ordering::Equal;
                }
            }
            // Distinct: refine both until the intervals separate.
            let (mut ra, mut rb) = (ra.clone(), rb.clone());
            loop {
                if ra.hi <= rb.lo {
                    return Ordering::Less;
                }
                if rb.hi <= ra.lo {
                    return Ordering::Greater;
                }
                if ra.width() >= rb.width() {
                    ra.bisect();
                } else {
                    rb.bisect();
                }
            }
        }
    }
}

fn ra_cmp(r: &IsolatedRoot, q: &Rational) -> Ordering {
    r.cmp_rational(q)
}

/// The value `g(alpha)` as a real algebraic number.
///
/// The value is a root of the characteristic polynomial of multiplication by
/// `g` in `Q[X]/(defpoly)`; the right root is picked by shrinking an interval
/// enclosure of `g` around `alpha`.
pub fn polynomial_value(g: &UniPoly, alpha: &RealAlgebraic) -> RealAlgebraic {
    let r = match alpha {
        RealAlgebraic::Rational(q) => return RealAlgebraic::Rational(g.eval(q)),
        RealAlgebraic::Isolated(r) => r,
    };
    let g = g.rem(&r.defpoly);
    if g.is_constant() {
        return RealAlgebraic::Rational(g.coeff(0));
    }
    let chi = super::extension::charpoly_of_multiplication(&g, &r.defpoly);
    let candidates = real_roots(&chi).expect("characteristic polynomial is nonzero");
    let mut r = r.clone();
    loop {
        let (lo, hi) = g.eval_interval(&r.lo, &r.hi);
        let inside: Vec<&RealAlgebraic> = candidates
            .iter()
            .filter(|c| c.cmp_rational(&lo) != Ordering::Less && c.cmp_rational(&hi) != Ordering::Greater)
            .collect();
        if inside.len() == 1 {
            return inside[0].clone();
        }
        r.bisect();
    }
}

impl PartialOrd for RealAlgebraic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RealAlgebraic {
    fn cmp(&self, other: &Self) -> Ordering {
        algebraic_compare(self, other)
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealAlgebraic::Rational(q) => write!(f, "{}", format_rational(q)),
            RealAlgebraic::Isolated(r) => write!(
                f,
                "root of {} in ({}, {})",
                r.defpoly,
                format_rational(&r.lo),
                format_rational(&r.hi)
            ),
        }
    }
}

impl fmt::Debug for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (~{:.6})", self.to_f64())
    }
}
