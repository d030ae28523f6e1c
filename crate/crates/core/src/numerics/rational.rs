//! Exact rationals and the few helpers the rest of the crate leans on.

use std::cmp::Ordering;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

/// Exact rational number; always stored reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Sign as -1, 0, +1.
pub fn sign(q: &Rational) -> i8 {
    match q.cmp(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Text form `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Parses `p/q`, `p`, optionally with a leading sign. Rejects zero denominators.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let num = BigInt::from_str(num)
        .map_err(|_| ParseError::new(0, "integer numerator", format!("`{num}`")))?;
    let den = match den {
        Some(d) => BigInt::from_str(d)
            .map_err(|_| ParseError::new(0, "integer denominator", format!("`{d}`")))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(ParseError::new(0, "nonzero denominator", "0"));
    }
    Ok(Rational::new(num, den))
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// The rational with the smallest denominator (then smallest magnitude) in
/// the open interval `(lo, hi)`; `hi = None` means `+inf`.
pub fn simplest_between(lo: &Rational, hi: Option<&Rational>) -> Rational {
    if let Some(h) = hi {
        debug_assert!(lo < h);
        if h.is_positive() && lo.is_negative() {
            return Rational::zero();
        }
        if !h.is_positive() {
            // (lo, hi) lies in the non-positive half-line: mirror it.
            return -simplest_between(&-h, Some(&-lo));
        }
    } else if lo.is_negative() {
        return Rational::zero();
    }
    // Now 0 <= lo.
    let fl = lo.floor();
    let next = &fl + Rational::one();
    match hi {
        None => next,
        Some(h) if &next < h => next,
        Some(h) => {
            // lo and hi share the integer part fl: recurse on reciprocals of the
            // fractional parts.
            let frac_hi = h - &fl;
            let frac_lo = lo - &fl;
            let new_lo = frac_hi.recip();
            let inner = if frac_lo.is_zero() {
                simplest_between(&new_lo, None)
            } else {
                let new_hi = frac_lo.recip();
                simplest_between(&new_lo, Some(&new_hi))
            };
            fl + inner.recip()
        }
    }
}

/// Least common multiple of all denominators.
pub fn denominator_lcm<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert_eq!(format_rational(&rat(-4, 2)), "-2");
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_between(&rat(1, 3), Some(&rat(2, 3))), rat(1, 2));
        assert_eq!(simplest_between(&rat(-5, 2), Some(&rat(-9, 4))), rat(-7, 3));
        assert_eq!(simplest_between(&rat(-1, 2), Some(&rat(1, 2))), int(0));
        assert_eq!(simplest_between(&rat(7, 2), None), int(4));
        assert_eq!(simplest_between(&int(3), Some(&rat(31, 10))), rat(34, 11));
    }

    #[test]
    fn simplest_rational_minimizes_denominator() {
        // brute force over small denominators
        let cases = [(rat(2, 7), rat(3, 10)), (rat(13, 17), rat(7, 9)), (rat(-8, 3), rat(-13, 5))];
        for (lo, hi) in cases {
            let s = simplest_between(&lo, Some(&hi));
            assert!(lo < s && s < hi);
            let best = (1..200i64)
                .find_map(|d| {
                    let dq = int(d);
                    let n = (&lo * &dq).floor() + Rational::one();
                    let cand = n / dq;
                    (cand < hi).then_some(cand)
                })
                .unwrap();
            assert_eq!(s.denom(), best.denom());
        }
    }
}
