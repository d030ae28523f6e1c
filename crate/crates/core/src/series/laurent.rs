use num_traits::{One, Signed, Zero};

use super::{series_inverse, LazySeries, Probe};
use crate::numerics::Rational;

/// `e^shift * body`, an element of Q((e)).
#[derive(Clone, Debug)]
pub struct LaurentElement {
    pub shift: i64,
    pub body: LazySeries,
}

impl LaurentElement {
    pub fn new(shift: i64, body: LazySeries) -> Self {
        LaurentElement { shift, body }
    }

    pub fn from_series(body: LazySeries) -> Self {
        LaurentElement { shift: 0, body }
    }

    /// Coefficient of `e^j`.
    pub fn coeff(&self, j: i64) -> Rational {
        if j < self.shift {
            Rational::zero()
        } else {
            self.body.coeff((j - self.shift) as usize)
        }
    }

    /// Shifted comparison: with `shift <= other.shift`, the bodies must
    /// satisfy `e^(other.shift - shift) body = other.body`. Probed on body
    /// indices up to `k`; `No` once a difference shows.
    pub fn equals(&self, other: &LaurentElement, k: usize) -> Probe {
        let (lo, hi) = if self.shift <= other.shift { (self, other) } else { (other, self) };
        let d = (hi.shift - lo.shift) as usize;
        let lifted = hi.body.shift_up(d);
        lo.body.equals(&lifted, k)
    }

    pub fn add(&self, o: &LaurentElement) -> LaurentElement {
        let s = self.shift.min(o.shift);
        let a = self.body.shift_up((self.shift - s) as usize);
        let b = o.body.shift_up((o.shift - s) as usize);
        LaurentElement::new(s, a.add(&b))
    }

    pub fn neg(&self) -> LaurentElement {
        LaurentElement::new(self.shift, self.body.neg())
    }

    pub fn mul(&self, o: &LaurentElement) -> LaurentElement {
        LaurentElement::new(self.shift + o.shift, self.body.mul(&o.body))
    }

    /// The inverse once a nonzero coefficient of the body is found within
    /// depth `k`: with `body = e^v g`, `g` a unit, it is `e^(-shift-v) g^-1`.
    pub fn inverse(&self, k: usize) -> Option<LaurentElement> {
        let v = self.body.valuation_within(k)?;
        let g = self.body.divide_by_epsilon_power(v).ok()?;
        let inv = series_inverse(&g).ok()?;
        Some(LaurentElement::new(-self.shift - v as i64, inv))
    }

    /// `self > 0` probed on body indices up to `k`.
    pub fn is_positive(&self, k: usize) -> Probe {
        self.body.is_positive(k)
    }

    /// Terms of exponents `shift .. shift + n`, as `c*e^j` with negative `j` allowed.
    pub fn display(&self, n: usize) -> String {
        let mut out = String::new();
        for (i, c) in self.body.coeffs(n).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = self.shift + i as i64;
            let a = c.abs();
            match (out.is_empty(), c.is_negative()) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            let power = match j {
                0 => String::new(),
                1 => "e".to_string(),
                _ => format!("e^{j}"),
            };
            match (j, a.is_one()) {
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
