//! Linear arithmetic over the rationals: Fourier-Motzkin elimination that
//! keeps track of how every derived row was combined, so an infeasible system
//! yields Farkas multipliers and a feasible one yields a point.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::numerics::rational::{int, midpoint};
use crate::numerics::Rational;
use crate::semipoly::MPoly;

/// `coeffs . x + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinForm {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
}

impl LinForm {
    pub fn zero(n: usize) -> Self {
        LinForm {
            coeffs: vec![Rational::zero(); n],
            constant: Rational::zero(),
        }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut f = LinForm::zero(n);
        f.coeffs[i] = Rational::one();
        f
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut f = LinForm::zero(n);
        f.constant = c;
        f
    }

    /// `None` when the polynomial is not of degree at most one.
    pub fn from_poly(p: &MPoly) -> Option<Self> {
        p.as_linear().map(|(constant, coeffs)| LinForm { coeffs, constant })
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &LinForm) -> LinForm {
        LinForm {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
            constant: &self.constant + &o.constant,
        }
    }

    pub fn sub(&self, o: &LinForm) -> LinForm {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> LinForm {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> LinForm {
        LinForm {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            constant: &self.constant * c,
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.coeffs.iter().zip(point).map(|(a, x)| a * x).fold(self.constant.clone(), |s, t| s + t)
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        Named { f: self, names }
    }
}

struct Named<'a> {
    f: &'a LinForm,
    names: &'a [String],
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(&Rational, Option<&str>)> = self
            .f
            .coeffs
            .iter()
            .zip(self.names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| (c, Some(v.as_str())))
            .collect();
        if !self.f.constant.is_zero() || terms.is_empty() {
            terms.push((&self.f.constant, None));
        }
        for (i, (c, name)) in terms.into_iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(out, "-")?,
                (0, false) => {}
                (_, true) => write!(out, " - ")?,
                (_, false) => write!(out, " + ")?,
            }
            let a = c.abs();
            match name {
                Some(v) if a.is_one() => write!(out, "{v}")?,
                Some(v) => write!(out, "{a}*{v}")?,
                None => write!(out, "{a}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rel {
    /// `form >= 0`
    Geq,
    /// `form = 0`
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinConstraint {
    pub form: LinForm,
    pub rel: Rel,
}

impl LinConstraint {
    pub fn geq(form: LinForm) -> Self {
        LinConstraint { form, rel: Rel::Geq }
    }

    pub fn eq(form: LinForm) -> Self {
        LinConstraint { form, rel: Rel::Eq }
    }

    pub fn holds_at(&self, point: &[Rational]) -> bool {
        let v = self.form.eval(point);
        match self.rel {
            Rel::Geq => !v.is_negative(),
            Rel::Eq => v.is_zero(),
        }
    }
}

/// A witness that `constraints` entail `goal >= 0`:
/// `goal_multiplier * goal - sum multipliers[i] * constraints[i]` is the
/// constant `slack`. With `goal_multiplier = 1` the slack is nonnegative; with
/// `goal_multiplier = 0` it is positive and the constraints are contradictory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub goal_multiplier: Rational,
    pub multipliers: Vec<Rational>,
    pub slack: Rational,
}

impl Certificate {
    /// Exact re-check of the identity and of the sign conditions.
    pub fn verify(&self, constraints: &[LinConstraint], goal: &LinForm) -> bool {
        if self.multipliers.len() != constraints.len() {
            return false;
        }
        let signs_ok = constraints
            .iter()
            .zip(&self.multipliers)
            .all(|(c, l)| c.rel == Rel::Eq || !l.is_negative());
        let slack_ok = if self.goal_multiplier.is_one() {
            !self.slack.is_negative()
        } else {
            self.goal_multiplier.is_zero() && self.slack.is_positive()
        };
        let mut combo = goal.scale(&self.goal_multiplier);
        for (c, l) in constraints.iter().zip(&self.multipliers) {
            combo = combo.sub(&c.form.scale(l));
        }
        signs_ok && slack_ok && combo.is_constant() && combo.constant == self.slack
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entailment {
    /// one certificate per direction: `goal >= 0`, and `-goal >= 0` for equalities
    Entailed(Vec<Certificate>),
    /// satisfies every constraint and violates the goal
    Refuted(Vec<Rational>),
}

/// Decides whether the constraints entail the goal over the rationals.
pub fn linear_entailment(constraints: &[LinConstraint], goal: &LinConstraint) -> Entailment {
    let n = goal.form.nvars();
    let directions = match goal.rel {
        Rel::Geq => vec![goal.form.clone()],
        // `g < 0` is tried before `g > 0`
        Rel::Eq => vec![goal.form.clone(), goal.form.neg()],
    };
    let mut certs = Vec::with_capacity(directions.len());
    for d in directions {
        match entails_nonneg(constraints, &d, n) {
            Ok(c) => certs.push(c),
            Err(point) => return Entailment::Refuted(point),
        }
    }
    Entailment::Entailed(certs)
}

#[derive(Clone, Debug)]
struct Row {
    form: LinForm,
    strict: bool,
    /// combination of the original rows; the last slot is the negated goal
    mult: Vec<Rational>,
}

impl Row {
    fn combine(&self, a: &Rational, o: &Row, b: &Rational) -> Row {
        Row {
            form: self.form.scale(a).add(&o.form.scale(b)),
            strict: self.strict || o.strict,
            mult: self.mult.iter().zip(&o.mult).map(|(x, y)| x * a + y * b).collect(),
        }
    }

    /// Trivially true, trivially false, or still open.
    fn status(&self) -> Option<bool> {
        if !self.form.is_constant() {
            return None;
        }
        let c = &self.form.constant;
        Some(if self.strict { c.is_positive() } else { !c.is_negative() })
    }
}

/// Scales so the first nonzero coefficient is +-1, then keeps only the
/// tightest row per linear part.
fn prune(rows: Vec<Row>) -> Vec<Row> {
    let mut best: BTreeMap<Vec<Rational>, Row> = BTreeMap::new();
    for r in rows {
        let lead = r.form.coeffs.iter().find(|c| !c.is_zero()).cloned();
        let r = match lead {
            Some(l) => {
                let k = Rational::one() / l.abs();
                Row {
                    form: r.form.scale(&k),
                    strict: r.strict,
                    mult: r.mult.iter().map(|m| m * &k).collect(),
                }
            }
            None => r,
        };
        let key = r.form.coeffs.clone();
        let tighter = match best.get(&key) {
            None => true,
            Some(old) => {
                r.form.constant < old.form.constant || (r.form.constant == old.form.constant && r.strict && !old.strict)
            }
        };
        if tighter {
            best.insert(key, r);
        }
    }
    best.into_values().collect()
}

fn certificate_from(row: &Row, m: usize) -> Certificate {
    // sum mult_i c_i + t * (-d) = k with k < 0, or k = 0 and t > 0
    let t = row.mult[m].clone();
    let k = row.form.constant.clone();
    if t.is_positive() {
        Certificate {
            goal_multiplier: Rational::one(),
            multipliers: row.mult[..m].iter().map(|l| l / &t).collect(),
            slack: -k / &t,
        }
    } else {
        Certificate {
            goal_multiplier: Rational::zero(),
            multipliers: row.mult[..m].to_vec(),
            slack: -k,
        }
    }
}

/// `Ok(certificate)` when the constraints force `d >= 0`, else a point with `d < 0`.
fn entails_nonneg(constraints: &[LinConstraint], d: &LinForm, n: usize) -> Result<Certificate, Vec<Rational>> {
    let m = constraints.len();
    let unit = |i: usize, s: Rational| {
        let mut v = vec![Rational::zero(); m + 1];
        v[i] = s;
        v
    };
    let mut rows = Vec::with_capacity(2 * m + 1);
    for (i, c) in constraints.iter().enumerate() {
        rows.push(Row {
            form: c.form.clone(),
            strict: false,
            mult: unit(i, Rational::one()),
        });
        if c.rel == Rel::Eq {
            rows.push(Row {
                form: c.form.neg(),
                strict: false,
                mult: unit(i, -Rational::one()),
            });
        }
    }
    rows.push(Row {
        form: d.neg(),
        strict: true,
        mult: unit(m, Rational::one()),
    });

    let mut levels: Vec<Vec<Row>> = Vec::with_capacity(n);
    for k in 0..n {
        for r in &rows {
            if r.status() == Some(false) {
                return Ok(certificate_from(r, m));
            }
        }
        rows.retain(|r| r.status().is_none());
        rows = prune(rows);
        let (touch, mut rest): (Vec<Row>, Vec<Row>) = rows.into_iter().partition(|r| !r.form.coeffs[k].is_zero());
        let (pos, neg): (Vec<&Row>, Vec<&Row>) = touch.iter().partition(|r| r.form.coeffs[k].is_positive());
        for p in &pos {
            for q in &neg {
                let a = -q.form.coeffs[k].clone();
                let b = p.form.coeffs[k].clone();
                rest.push(p.combine(&a, q, &b));
            }
        }
        levels.push(touch);
        rows = rest;
    }
    if let Some(r) = rows.iter().find(|r| r.status() == Some(false)) {
        return Ok(certificate_from(r, m));
    }

    // feasible: back-substitute from the last eliminated variable
    let mut x = vec![Rational::zero(); n];
    for k in (0..n).rev() {
        let mut lower: Option<(Rational, bool)> = None;
        let mut upper: Option<(Rational, bool)> = None;
        for r in &levels[k] {
            let c = &r.form.coeffs[k];
            let mut rest = r.form.clone();
            rest.coeffs[k] = Rational::zero();
            let bound = -rest.eval(&x) / c;
            if c.is_positive() {
                let tighter = match &lower {
                    None => true,
                    Some((b, s)) => bound > *b || (bound == *b && r.strict && !s),
                };
                if tighter {
                    lower = Some((bound, r.strict));
                }
            } else {
                let tighter = match &upper {
                    None => true,
                    Some((b, s)) => bound < *b || (bound == *b && r.strict && !s),
                };
                if tighter {
                    upper = Some((bound, r.strict));
                }
            }
        }
        x[k] = match (lower, upper) {
            (Some((l, false)), _) => l,
            (_, Some((u, false))) => u,
            (Some((l, true)), Some((u, true))) => midpoint(&l, &u),
            (Some((l, true)), None) => l + int(1),
            (None, Some((u, true))) => u - int(1),
            (None, None) => Rational::zero(),
        };
    }
    Err(x)
}
