//! Algebraic rules of lattice-ordered abelian groups, decided by splitting on
//! the relative order of linear forms until every sup and inf is resolved.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use super::linear::{linear_entailment, Certificate, Entailment, LinConstraint, LinForm, Rel};
use crate::error::{Error, ParseError, Result};
use crate::numerics::Rational;
use crate::semipoly::{eval_term, to_sup_inf_nf_in, LatticeTerm, Tok, TermParser};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AtomRel {
    EqZero,
    GeqZero,
}

/// `term = 0` or `term >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub term: LatticeTerm,
    pub rel: AtomRel,
}

impl Atom {
    pub fn eq_zero(term: LatticeTerm) -> Self {
        Atom { term, rel: AtomRel::EqZero }
    }

    pub fn geq_zero(term: LatticeTerm) -> Self {
        Atom { term, rel: AtomRel::GeqZero }
    }

    pub fn holds_at(&self, point: &BTreeMap<String, Rational>) -> Result<bool> {
        let v = eval_term(&self.term, point)?;
        Ok(match self.rel {
            AtomRel::EqZero => v.is_zero(),
            AtomRel::GeqZero => !v.is_negative(),
        })
    }

    /// Errors on a product of two non-constant factors.
    pub fn check_additive(&self) -> Result<()> {
        additive(&self.term)
    }
}

fn additive(t: &LatticeTerm) -> Result<()> {
    use LatticeTerm as T;
    match t {
        T::Const(_) | T::Var(_) => Ok(()),
        T::Neg(a) | T::Pos(a) | T::NegPart(a) | T::Abs(a) => additive(a),
        T::Add(a, b) | T::Sup(a, b) | T::Inf(a, b) => {
            additive(a)?;
            additive(b)
        }
        T::Mul(a, b) => {
            if a.as_constant().is_some() {
                additive(b)
            } else if b.as_constant().is_some() {
                additive(a)
            } else {
                Err(Error::UnsupportedFragment(format!("`{t}` multiplies two non-constant terms")))
            }
        }
        T::Pow(a, n) => {
            if *n <= 1 || a.as_constant().is_some() {
                additive(a)
            } else {
                Err(Error::UnsupportedFragment(format!("`{t}` is a power of a non-constant term")))
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rel {
            AtomRel::EqZero => write!(f, "{} = 0", self.term),
            AtomRel::GeqZero => write!(f, "{} >= 0", self.term),
        }
    }
}

/// `H1, ..., Hk |- C`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub hypotheses: Vec<Atom>,
    pub conclusion: Atom,
}

impl Rule {
    pub fn new(hypotheses: Vec<Atom>, conclusion: Atom) -> Self {
        Rule { hypotheses, conclusion }
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.hypotheses.iter().chain(std::iter::once(&self.conclusion))
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.atoms().flat_map(|a| a.term.variables()).collect()
    }

    /// False exactly when every hypothesis holds and the conclusion fails.
    pub fn holds_at(&self, point: &BTreeMap<String, Rational>) -> Result<bool> {
        for h in &self.hypotheses {
            if !h.holds_at(point)? {
                return Ok(true);
            }
        }
        self.conclusion.holds_at(point)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.hypotheses.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{h}")?;
        }
        if !self.hypotheses.is_empty() {
            write!(f, " ")?;
        }
        write!(f, "|- {}", self.conclusion)
    }
}

fn parse_atom(p: &mut TermParser) -> std::result::Result<Atom, ParseError> {
    let lhs = p.term()?;
    let rel = p.bump();
    let rhs = p.term()?;
    let zero = LatticeTerm::Const(Rational::zero());
    let diff = |a: LatticeTerm, b: LatticeTerm| if b == zero { a } else { a.minus(b) };
    Ok(match rel {
        Some(Tok::Eq) => Atom::eq_zero(diff(lhs, rhs)),
        Some(Tok::Ge) => Atom::geq_zero(diff(lhs, rhs)),
        Some(Tok::Le) => Atom::geq_zero(if lhs == zero { rhs } else { diff(rhs, lhs) }),
        _ => unreachable!("checked by the caller"),
    })
}

impl FromStr for Atom {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let mut p = TermParser::new(s)?;
        let a = atom_checked(&mut p)?;
        if !p.at_end() {
            return Err(p.error("end of input"));
        }
        Ok(a)
    }
}

fn atom_checked(p: &mut TermParser) -> std::result::Result<Atom, ParseError> {
    let mut probe = p.clone();
    probe.term()?;
    if !matches!(probe.peek(), Some(Tok::Eq | Tok::Ge | Tok::Le)) {
        return Err(probe.error("`=`, `>=` or `<=`"));
    }
    parse_atom(p)
}

impl FromStr for Rule {
    type Err = ParseError;

    /// `h1, h2 |- c`; a rule without hypotheses may omit the turnstile.
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let mut p = TermParser::new(s)?;
        let mut atoms = Vec::new();
        let mut turnstile = false;
        if p.peek() == Some(&Tok::Turnstile) {
            p.bump();
            turnstile = true;
        } else {
            loop {
                atoms.push(atom_checked(&mut p)?);
                match p.peek() {
                    Some(Tok::Comma) => {
                        p.bump();
                    }
                    Some(Tok::Turnstile) => {
                        p.bump();
                        turnstile = true;
                        break;
                    }
                    None => break,
                    _ => return Err(p.error("`,`, `|-` or end of input")),
                }
            }
        }
        let conclusion = if turnstile {
            atom_checked(&mut p)?
        } else if atoms.len() == 1 {
            atoms.pop().expect("one atom")
        } else {
            return Err(p.error("`|-`"));
        };
        if !p.at_end() {
            return Err(p.error("end of input"));
        }
        Ok(Rule::new(atoms, conclusion))
    }
}

/// A closed branch: the collapsed hypotheses and the branch assumptions
/// entail the collapsed conclusion, witnessed by one certificate per
/// direction of the conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leaf {
    pub constraints: Vec<LinConstraint>,
    pub goal: LinConstraint,
    pub certificates: Vec<Certificate>,
}

impl Leaf {
    pub fn verify(&self) -> bool {
        let dirs = match self.goal.rel {
            Rel::Geq => vec![self.goal.form.clone()],
            Rel::Eq => vec![self.goal.form.clone(), self.goal.form.neg()],
        };
        dirs.len() == self.certificates.len()
            && self.certificates.iter().zip(&dirs).all(|(c, d)| c.verify(&self.constraints, d))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofTree {
    Leaf(Leaf),
    /// The left branch assumes `first >= second`, the right one `first <= second`.
    Split {
        first: LinForm,
        second: LinForm,
        left: Box<ProofTree>,
        right: Box<ProofTree>,
    },
}

impl ProofTree {
    pub fn leaves(&self) -> usize {
        match self {
            ProofTree::Leaf(_) => 1,
            ProofTree::Split { left, right, .. } => left.leaves() + right.leaves(),
        }
    }

    pub fn splits(&self) -> usize {
        match self {
            ProofTree::Leaf(_) => 0,
            ProofTree::Split { left, right, .. } => 1 + left.splits() + right.splits(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            ProofTree::Leaf(_) => 0,
            ProofTree::Split { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    /// Re-checks every leaf certificate.
    pub fn verify(&self) -> bool {
        match self {
            ProofTree::Leaf(l) => l.verify(),
            ProofTree::Split { left, right, .. } => left.verify() && right.verify(),
        }
    }

    /// Indented text, one line per node.
    pub fn render(&self, names: &[String]) -> String {
        let mut out = String::new();
        self.render_into(names, 0, &mut out);
        out
    }

    fn render_into(&self, names: &[String], indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match self {
            ProofTree::Leaf(l) => {
                let kind = if l.certificates.iter().any(|c| c.goal_multiplier.is_zero()) {
                    "contradictory branch"
                } else {
                    "entailed"
                };
                out.push_str(&format!("{pad}leaf: {kind}\n"));
            }
            ProofTree::Split { first, second, left, right } => {
                let (a, b) = (first.display_with(names), second.display_with(names));
                out.push_str(&format!("{pad}case {a} >= {b}\n"));
                left.render_into(names, indent + 1, out);
                out.push_str(&format!("{pad}case {a} <= {b}\n"));
                right.render_into(names, indent + 1, out);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Proof {
    Valid(ProofTree),
    Counterexample(BTreeMap<String, Rational>),
}

/// A normal form as form indices: sup over families of inf over members.
type Shape = Vec<Vec<usize>>;

struct Search {
    vars: Vec<String>,
    forms: Vec<LinForm>,
    hyps: Vec<(Shape, Rel)>,
    goal: (Shape, Rel),
}

/// `le[i][j]`: `forms[i] <= forms[j]` is known on the current branch.
#[derive(Clone)]
struct Branch {
    le: Vec<Vec<bool>>,
    assumptions: Vec<LinConstraint>,
}

impl Branch {
    /// Records `forms[lo] <= forms[hi]` with its consequences: every pair
    /// whose difference is a positive multiple of `forms[hi] - forms[lo]`
    /// plus a nonnegative constant, closed under transitivity.
    fn assume(&mut self, forms: &[LinForm], lo: usize, hi: usize) {
        let d = forms[hi].sub(&forms[lo]);
        let n = self.le.len();
        let mut implied = vec![(lo, hi)];
        if let Some(k) = d.coeffs.iter().position(|c| !c.is_zero()) {
            for i in 0..n {
                for j in 0..n {
                    if self.le[i][j] || (i, j) == (lo, hi) {
                        continue;
                    }
                    let e = forms[j].sub(&forms[i]);
                    let c = &e.coeffs[k] / &d.coeffs[k];
                    let rest = e.sub(&d.scale(&c));
                    if c.is_positive() && rest.is_constant() && !rest.constant.is_negative() {
                        implied.push((i, j));
                    }
                }
            }
        }
        for (a, b) in implied {
            if self.le[a][b] {
                continue;
            }
            let below: Vec<usize> = (0..n).filter(|&x| self.le[x][a]).collect();
            let above: Vec<usize> = (0..n).filter(|&y| self.le[b][y]).collect();
            for &x in &below {
                for &y in &above {
                    self.le[x][y] = true;
                }
            }
        }
        self.assumptions.push(LinConstraint::geq(d));
    }

    fn comparable(&self, i: usize, j: usize) -> bool {
        self.le[i][j] || self.le[j][i]
    }

    /// The least member of `set`, or the least incomparable pair.
    fn extreme(&self, set: &[usize], least: bool) -> std::result::Result<usize, (usize, usize)> {
        let ok = |m: usize, o: usize| if least { self.le[m][o] } else { self.le[o][m] };
        if let Some(&m) = set.iter().find(|&&m| set.iter().all(|&o| ok(m, o))) {
            return Ok(m);
        }
        let mut best: Option<(usize, usize)> = None;
        for (a, &i) in set.iter().enumerate() {
            for &j in &set[a + 1..] {
                if !self.comparable(i, j) {
                    let p = (i.min(j), i.max(j));
                    if best.is_none_or(|b| p < b) {
                        best = Some(p);
                    }
                }
            }
        }
        Err(best.expect("a total preorder has a least element"))
    }

    /// The form a normal form reduces to on this branch, or the pair to split on.
    fn collapse(&self, shape: &Shape) -> std::result::Result<usize, (usize, usize)> {
        let mut mins = Vec::with_capacity(shape.len());
        let mut inner_pair: Option<(usize, usize)> = None;
        for fam in shape {
            match self.extreme(fam, true) {
                Ok(m) => mins.push(m),
                Err(p) => inner_pair = Some(inner_pair.map_or(p, |q| q.min(p))),
            }
        }
        if let Some(p) = inner_pair {
            return Err(p);
        }
        mins.sort_unstable();
        mins.dedup();
        self.extreme(&mins, false)
    }
}

/// The distinct linear forms of the normal forms of all atoms, sorted, and
/// each atom as indices into them.
fn linearize(r: &Rule) -> Result<(Vec<String>, Vec<LinForm>, Vec<(Shape, Rel)>)> {
    for a in r.atoms() {
        a.check_additive()?;
    }
    let vars: Vec<String> = r.variables().into_iter().collect();
    let mut lin_shapes = Vec::new();
    for a in r.atoms() {
        let nf = to_sup_inf_nf_in(&a.term, &vars);
        let fams: Vec<Vec<LinForm>> = nf
            .families()
            .iter()
            .map(|inner| {
                inner
                    .iter()
                    .map(|p| LinForm::from_poly(p).expect("additive terms have linear normal forms"))
                    .collect()
            })
            .collect();
        let rel = match a.rel {
            AtomRel::EqZero => Rel::Eq,
            AtomRel::GeqZero => Rel::Geq,
        };
        lin_shapes.push((fams, rel));
    }
    let table: BTreeSet<LinForm> = lin_shapes.iter().flat_map(|(f, _)| f.iter().flatten().cloned()).collect();
    let forms: Vec<LinForm> = table.into_iter().collect();
    let index: BTreeMap<&LinForm, usize> = forms.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let shapes = lin_shapes
        .iter()
        .map(|(fams, rel)| (fams.iter().map(|inner| inner.iter().map(|f| index[f]).collect()).collect(), *rel))
        .collect();
    Ok((vars, forms, shapes))
}

/// The distinct linear forms the prover compares for `r`, in split order.
pub fn rule_linear_forms(r: &Rule) -> Result<Vec<LinForm>> {
    Ok(linearize(r)?.1)
}

/// Decides a rule of the additive fragment: a proof tree whose leaves carry
/// linear certificates, or a rational point where the rule fails.
pub fn prove_lgroup_rule(r: &Rule) -> Result<Proof> {
    let (vars, forms, mut shapes) = linearize(r)?;
    let goal = shapes.pop().expect("the conclusion is present");

    let k = forms.len();
    let mut le = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            let d = forms[j].sub(&forms[i]);
            le[i][j] = d.is_constant() && !d.constant.is_negative();
        }
    }
    let search = Search {
        vars,
        forms,
        hyps: shapes,
        goal,
    };
    let root = Branch {
        le,
        assumptions: Vec::new(),
    };
    match search.run(root)? {
        Ok(tree) => Ok(Proof::Valid(tree)),
        Err(point) => {
            let named: BTreeMap<String, Rational> = search.vars.iter().cloned().zip(point).collect();
            if r.holds_at(&named)? {
                return Err(Error::Domain(format!("internal: refuting point {named:?} does not refute `{r}`")));
            }
            Ok(Proof::Counterexample(named))
        }
    }
}

impl Search {
    fn run(&self, b: Branch) -> Result<std::result::Result<ProofTree, Vec<Rational>>> {
        let mut pair: Option<(usize, usize)> = None;
        let mut collapsed = Vec::with_capacity(self.hyps.len() + 1);
        for (shape, rel) in self.hyps.iter().chain(std::iter::once(&self.goal)) {
            match b.collapse(shape) {
                Ok(i) => collapsed.push((i, *rel)),
                Err(p) => pair = Some(pair.map_or(p, |q| q.min(p))),
            }
        }
        if let Some((i, j)) = pair {
            let mut left = b.clone();
            left.assume(&self.forms, j, i);
            let l = match self.run(left)? {
                Ok(t) => t,
                Err(p) => return Ok(Err(p)),
            };
            let mut right = b;
            right.assume(&self.forms, i, j);
            let r = match self.run(right)? {
                Ok(t) => t,
                Err(p) => return Ok(Err(p)),
            };
            return Ok(Ok(ProofTree::Split {
                first: self.forms[i].clone(),
                second: self.forms[j].clone(),
                left: Box::new(l),
                right: Box::new(r),
            }));
        }
        let (goal_idx, goal_rel) = collapsed.pop().expect("the conclusion is present");
        let mut constraints: Vec<LinConstraint> = collapsed
            .into_iter()
            .map(|(i, rel)| LinConstraint {
                form: self.forms[i].clone(),
                rel,
            })
            .collect();
        constraints.extend(b.assumptions);
        let goal = LinConstraint {
            form: self.forms[goal_idx].clone(),
            rel: goal_rel,
        };
        Ok(match linear_entailment(&constraints, &goal) {
            Entailment::Entailed(certificates) => Ok(ProofTree::Leaf(Leaf {
                constraints,
                goal,
                certificates,
            })),
            Entailment::Refuted(point) => Err(point),
        })
    }
}
