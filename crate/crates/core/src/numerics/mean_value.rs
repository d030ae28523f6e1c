//! Quadrature form of the mean value theorem for polynomials.

use num_traits::Zero;

use super::poly::UniPoly;
use super::rational::{rat, Rational};
use crate::error::{domain, Result};

/// Node/weight table exact for every polynomial of degree at most four.
pub fn quartic_rule() -> (Vec<Rational>, Vec<Rational>) {
    (
        vec![rat(1, 6), rat(1, 3), rat(2, 3), rat(5, 6)],
        vec![rat(1, 3), rat(1, 6), rat(1, 6), rat(1, 3)],
    )
}

/// Whether `f(b) - f(a) = (b - a) * sum_i w_i f'(a + l_i (b - a))` holds exactly.
pub fn check_mean_value(
    f: &UniPoly,
    a: &Rational,
    b: &Rational,
    lambdas: &[Rational],
    weights: &[Rational],
) -> Result<bool> {
    if lambdas.len() != weights.len() {
        return Err(domain("node and weight lists differ in length"));
    }
    let n = lambdas.len();
    if f.degree().unwrap_or(0) > n {
        return Err(domain(format!(
            "degree {} exceeds the number of nodes {n}",
            f.degree().unwrap_or(0)
        )));
    }
    let df = f.derivative();
    let delta = b - a;
    let mut sum = Rational::zero();
    for (l, w) in lambdas.iter().zip(weights) {
        sum += w * df.eval(&(a + l * &delta));
    }
    Ok(f.eval(b) - f.eval(a) == delta * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::int;

    #[test]
    fn quartic_table() {
        let (l, w) = quartic_rule();
        let f: UniPoly = "3*x^4 - x^3 + 2*x - 7".parse().unwrap();
        assert!(check_mean_value(&f, &rat(-3, 2), &int(5), &l, &w).unwrap());
        let x4: UniPoly = "x^4".parse().unwrap();
        let one = vec![int(1), int(0), int(0), int(0)];
        assert!(!check_mean_value(&x4, &int(0), &int(1), &l, &one).unwrap());
        let x5: UniPoly = "x^5".parse().unwrap();
        assert!(check_mean_value(&x5, &int(0), &int(1), &l, &w).is_err());
    }

    #[test]
    fn linear_any_rule() {
        let f: UniPoly = "7*x - 2".parse().unwrap();
        let l = vec![rat(9, 10), rat(-3, 1)];
        let w = vec![rat(1, 4), rat(3, 4)];
        assert!(check_mean_value(&f, &int(1), &int(4), &l, &w).unwrap());
    }
}
