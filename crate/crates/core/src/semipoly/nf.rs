//! Rewriting lattice-ordered ring terms into a sup of infs of polynomials.
//!
//! Sums, negation and the lattice operations distribute directly.
//! A polynomial multiplier `p` is pushed through the lattice structure of the
//! other factor with `p*w^+ = (p*w /\ (p^2+1)*w) \/ (-(p^2+1)*w /\ 0)`, which
//! holds in every f-ring. When both factors are lattice-valued, the first one
//! is unfolded into sums and positive parts `w^+`, and `w^+ * T` is computed
//! entrywise inside the normal form of `T`.
//!
//! Every intermediate result carries the normal form of its negative as well,
//! since negating a sup of infs directly is exponential.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use num_traits::{Signed, Zero};

use super::mpoly::MPoly;
use super::term::LatticeTerm;
use crate::numerics::Rational;

/// Outer index is the sup, inner the inf.
type Fam = Vec<Vec<MPoly>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupInfNF {
    vars: Vec<String>,
    families: Fam,
}

impl SupInfNF {
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn families(&self) -> &[Vec<MPoly>] {
        &self.families
    }

    /// `max_i min_j p_ij(point)`, the point listing values in `vars()` order.
    /// Large forms repeat a few polynomials many times, so each distinct one
    /// is evaluated once.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut values: HashMap<&MPoly, Rational> = HashMap::new();
        let mut best: Option<Rational> = None;
        for inner in &self.families {
            let mut low: Option<Rational> = None;
            for p in inner {
                let v = values.entry(p).or_insert_with(|| p.eval(point));
                if low.as_ref().is_none_or(|l| &*v < l) {
                    low = Some(v.clone());
                }
            }
            let low = low.expect("inner family is never empty");
            if best.as_ref().is_none_or(|b| &low > b) {
                best = Some(low);
            }
        }
        best.expect("at least one family")
    }

    /// Evaluation from named values; missing names are an error.
    pub fn eval_named(&self, point: &BTreeMap<String, Rational>) -> crate::Result<Rational> {
        let vals = self
            .vars
            .iter()
            .map(|v| point.get(v).cloned().ok_or_else(|| crate::Error::UnboundVariable(v.clone())))
            .collect::<crate::Result<Vec<_>>>()?;
        Ok(self.eval(&vals))
    }

    /// The normal form written back as a term.
    pub fn to_term(&self) -> LatticeTerm {
        let text = self
            .families
            .iter()
            .map(|inner| {
                inner
                    .iter()
                    .map(|p| format!("({})", p.display_with(&self.vars)))
                    .collect::<Vec<_>>()
                    .join(" /\\ ")
            })
            .map(|s| format!("({s})"))
            .collect::<Vec<_>>()
            .join(" \\/ ");
        text.parse().expect("printed normal form reparses")
    }

    /// Number of polynomials over all families.
    pub fn size(&self) -> usize {
        self.families.iter().map(Vec::len).sum()
    }
}

impl fmt::Display for SupInfNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sup{{")?;
        for (i, inner) in self.families.iter().rev().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "inf{{")?;
            for (j, p) in inner.iter().rev().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", p.display_with(&self.vars))?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// Normal form of `t` over its variables in sorted order.
pub fn to_sup_inf_nf(t: &LatticeTerm) -> SupInfNF {
    let vars: Vec<String> = t.variables().into_iter().collect();
    to_sup_inf_nf_in(t, &vars)
}

/// Normal form over a given variable list, which must contain every variable of `t`.
pub fn to_sup_inf_nf_in(t: &LatticeTerm, vars: &[String]) -> SupInfNF {
    let rw = Rewriter::new(vars.len());
    let e = lower(t, vars);
    SupInfNF {
        vars: vars.to_vec(),
        families: rw.nf(&e).pos,
    }
}

/// A term with every lattice-free subterm collapsed to a polynomial.
enum Expr {
    Poly(MPoly),
    Neg(Rc<Expr>),
    Add(Rc<Expr>, Rc<Expr>),
    Mul(Rc<Expr>, Rc<Expr>),
    Sup(Rc<Expr>, Rc<Expr>),
    Inf(Rc<Expr>, Rc<Expr>),
    Pos(Rc<Expr>),
    NegPart(Rc<Expr>),
    Abs(Rc<Expr>),
}

impl Expr {
    /// Nesting depth of lattice operations; products count as deep.
    fn lattice_depth(&self) -> usize {
        match self {
            Expr::Poly(_) => 0,
            Expr::Neg(a) => a.lattice_depth(),
            Expr::Add(a, b) => a.lattice_depth().max(b.lattice_depth()),
            Expr::Sup(a, b) | Expr::Inf(a, b) => a.lattice_depth().max(b.lattice_depth()).saturating_add(1),
            Expr::Pos(a) | Expr::NegPart(a) | Expr::Abs(a) => a.lattice_depth().saturating_add(1),
            Expr::Mul(..) => usize::MAX,
        }
    }

    fn size(&self) -> usize {
        match self {
            Expr::Poly(_) => 1,
            Expr::Neg(a) | Expr::Pos(a) | Expr::NegPart(a) | Expr::Abs(a) => 1 + a.size(),
            Expr::Add(a, b) | Expr::Mul(a, b) | Expr::Sup(a, b) | Expr::Inf(a, b) => 1 + a.size() + b.size(),
        }
    }
}

/// The polynomial of a lattice-free term over `vars`.
pub fn polynomial_of(t: &LatticeTerm, vars: &[String]) -> crate::Result<MPoly> {
    if !t.is_polynomial() {
        return Err(crate::Error::Domain(format!("`{t}` uses a lattice operation")));
    }
    if let Some(v) = t.variables().into_iter().find(|v| !vars.contains(v)) {
        return Err(crate::Error::UnboundVariable(v));
    }
    Ok(poly_of(t, vars))
}

fn poly_of(t: &LatticeTerm, vars: &[String]) -> MPoly {
    use LatticeTerm as T;
    let n = vars.len();
    match t {
        T::Const(q) => MPoly::constant(n, q.clone()),
        T::Var(v) => {
            let i = vars
                .iter()
                .position(|w| w == v)
                .unwrap_or_else(|| panic!("variable `{v}` missing from the context"));
            MPoly::var(n, i)
        }
        T::Neg(a) => -&poly_of(a, vars),
        T::Add(a, b) => &poly_of(a, vars) + &poly_of(b, vars),
        T::Mul(a, b) => &poly_of(a, vars) * &poly_of(b, vars),
        T::Pow(a, e) => poly_of(a, vars).pow(*e),
        _ => unreachable!("lattice operation inside a polynomial"),
    }
}

fn lower(t: &LatticeTerm, vars: &[String]) -> Rc<Expr> {
    use LatticeTerm as T;
    if t.is_polynomial() {
        return Rc::new(Expr::Poly(poly_of(t, vars)));
    }
    if let Some(c) = t.as_constant() {
        return Rc::new(Expr::Poly(MPoly::constant(vars.len(), c)));
    }
    let l = |a: &LatticeTerm| lower(a, vars);
    Rc::new(match t {
        T::Neg(a) => Expr::Neg(l(a)),
        T::Add(a, b) => Expr::Add(l(a), l(b)),
        T::Mul(..) => {
            // gather polynomial factors so a product is spread over lattice
            // factors once, not once per polynomial factor
            let mut factors = Vec::new();
            flatten_product(t, &mut factors);
            let mut poly = MPoly::one(vars.len());
            let mut rest: Vec<Rc<Expr>> = Vec::new();
            for f in factors {
                let e = l(f);
                match &*e {
                    Expr::Poly(p) => poly = &poly * p,
                    _ => rest.push(e),
                }
            }
            let mut acc = Rc::new(Expr::Poly(poly));
            for e in rest {
                acc = Rc::new(Expr::Mul(acc, e));
            }
            return acc;
        }
        T::Sup(a, b) => Expr::Sup(l(a), l(b)),
        T::Inf(a, b) => Expr::Inf(l(a), l(b)),
        T::Pos(a) => Expr::Pos(l(a)),
        T::NegPart(a) => Expr::NegPart(l(a)),
        T::Abs(a) => Expr::Abs(l(a)),
        T::Pow(a, e) => {
            let base = l(a);
            let mut acc = base.clone();
            for _ in 1..*e {
                acc = Rc::new(Expr::Mul(acc, base.clone()));
            }
            return acc;
        }
        T::Const(_) | T::Var(_) => unreachable!("polynomial leaves are handled above"),
    })
}

fn flatten_product<'a>(t: &'a LatticeTerm, out: &mut Vec<&'a LatticeTerm>) {
    match t {
        LatticeTerm::Mul(a, b) => {
            flatten_product(a, out);
            flatten_product(b, out);
        }
        _ => out.push(t),
    }
}

fn difference(u: &Rc<Expr>, v: &Rc<Expr>) -> Rc<Expr> {
    Rc::new(match (&**u, &**v) {
        (Expr::Poly(p), Expr::Poly(q)) => Expr::Poly(p - q),
        _ => Expr::Add(u.clone(), Rc::new(Expr::Neg(v.clone()))),
    })
}

/// A normal form as a balanced sup of balanced infs, for structural recursion.
fn expr_of(a: &Fam) -> Rc<Expr> {
    fn balanced(mut xs: Vec<Rc<Expr>>, join: fn(Rc<Expr>, Rc<Expr>) -> Expr) -> Rc<Expr> {
        while xs.len() > 1 {
            let mut next = Vec::with_capacity(xs.len().div_ceil(2));
            let mut it = xs.into_iter();
            while let Some(x) = it.next() {
                next.push(match it.next() {
                    Some(y) => Rc::new(join(x, y)),
                    None => x,
                });
            }
            xs = next;
        }
        xs.pop().expect("nonempty")
    }
    let infs = a
        .iter()
        .map(|inner| balanced(inner.iter().map(|p| Rc::new(Expr::Poly(p.clone()))).collect(), Expr::Inf))
        .collect();
    balanced(infs, Expr::Sup)
}

/// Normal forms of an element and of its negative, so negation is a swap.
#[derive(Clone)]
struct Pair {
    pos: Fam,
    neg: Fam,
}

impl Pair {
    fn poly(p: MPoly) -> Pair {
        let q = -&p;
        Pair {
            pos: single(p),
            neg: single(q),
        }
    }

    fn swap(self) -> Pair {
        Pair {
            pos: self.neg,
            neg: self.pos,
        }
    }

    fn as_poly(&self) -> Option<&MPoly> {
        as_single(&self.pos)
    }

    fn add(&self, o: &Pair) -> Pair {
        Pair {
            pos: add(&self.pos, &o.pos),
            neg: add(&self.neg, &o.neg),
        }
    }

    fn sub(&self, o: &Pair) -> Pair {
        Pair {
            pos: add(&self.pos, &o.neg),
            neg: add(&self.neg, &o.pos),
        }
    }

    fn sup(&self, o: &Pair) -> Pair {
        Pair {
            pos: sup(&self.pos, &o.pos),
            neg: inf(&self.neg, &o.neg),
        }
    }

    fn inf(&self, o: &Pair) -> Pair {
        Pair {
            pos: inf(&self.pos, &o.pos),
            neg: sup(&self.neg, &o.neg),
        }
    }

    fn scale(&self, c: &Rational) -> Pair {
        let k = c.abs();
        let s = |a: &Fam| -> Fam {
            normalize(a.iter().map(|inner| inner.iter().map(|p| p.scale(&k)).collect()).collect())
        };
        let out = Pair {
            pos: s(&self.pos),
            neg: s(&self.neg),
        };
        if c.is_negative() {
            out.swap()
        } else {
            out
        }
    }
}

fn single(p: MPoly) -> Fam {
    vec![vec![p]]
}

fn as_single(a: &Fam) -> Option<&MPoly> {
    match a.as_slice() {
        [inner] => match inner.as_slice() {
            [p] => Some(p),
            _ => None,
        },
        _ => None,
    }
}

/// Splits off the constant term.
fn shape(p: &MPoly) -> (MPoly, Rational) {
    let c = p.eval(&vec![Rational::zero(); p.nvars()]);
    (p - &MPoly::constant(p.nvars(), c.clone()), c)
}

/// An inf family keyed by interned constant-free parts, sorted by key.
type Keyed = Vec<(usize, Rational)>;

/// Does `inf a <= inf b` follow from comparing constants alone?
fn below(a: &Keyed, b: &Keyed) -> bool {
    if b.len() > a.len() {
        return false;
    }
    let mut it = a.iter();
    b.iter().all(|(s, cb)| {
        it.by_ref()
            .find(|(t, _)| t >= s)
            .is_some_and(|(t, ca)| t == s && ca <= cb)
    })
}

/// Canonical ordering plus two cheap reductions: inside an inf only the
/// smallest of polynomials differing by a constant is kept, and an inf that is
/// provably below another one is dropped from the sup.
fn normalize(a: Fam) -> Fam {
    let mut ids: HashMap<MPoly, usize> = HashMap::new();
    let mut shapes: Vec<MPoly> = Vec::new();
    let mut keyed: Vec<Keyed> = Vec::with_capacity(a.len());
    for inner in a {
        let mut m: BTreeMap<usize, Rational> = BTreeMap::new();
        for p in &inner {
            let (s, c) = shape(p);
            let next = shapes.len();
            let id = *ids.entry(s.clone()).or_insert(next);
            if id == next {
                shapes.push(s);
            }
            match m.get_mut(&id) {
                Some(old) if *old <= c => {}
                Some(old) => *old = c,
                None => {
                    m.insert(id, c);
                }
            }
        }
        keyed.push(m.into_iter().collect());
    }
    keyed.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    keyed.dedup();
    let mut kept: Vec<Keyed> = Vec::with_capacity(keyed.len());
    for m in keyed {
        if kept.iter().any(|k| below(&m, k)) {
            continue;
        }
        kept.retain(|k| !below(k, &m));
        kept.push(m);
    }
    let mut out: Fam = kept
        .into_iter()
        .map(|m| {
            let mut inner: Vec<MPoly> = m
                .into_iter()
                .map(|(id, c)| {
                    let s = &shapes[id];
                    s + &MPoly::constant(s.nvars(), c)
                })
                .collect();
            inner.sort();
            inner
        })
        .collect();
    out.sort();
    out
}

fn sup(a: &Fam, b: &Fam) -> Fam {
    normalize(a.iter().chain(b).cloned().collect())
}

fn inf(a: &Fam, b: &Fam) -> Fam {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.iter().chain(y).cloned().collect());
        }
    }
    normalize(out)
}

fn add(a: &Fam, b: &Fam) -> Fam {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            let mut inner = Vec::with_capacity(x.len() * y.len());
            for p in x {
                for q in y {
                    inner.push(p + q);
                }
            }
            out.push(inner);
        }
    }
    normalize(out)
}

struct Rewriter {
    n: usize,
    /// normal forms by node address; the node is kept alive alongside
    memo: RefCell<HashMap<*const Expr, (Rc<Expr>, Pair)>>,
}

impl Rewriter {
    fn new(n: usize) -> Self {
        Rewriter {
            n,
            memo: RefCell::new(HashMap::new()),
        }
    }

    fn zero(&self) -> Pair {
        Pair::poly(MPoly::zero(self.n))
    }

    fn nf(&self, e: &Rc<Expr>) -> Pair {
        let key = Rc::as_ptr(e);
        if let Some((_, p)) = self.memo.borrow().get(&key) {
            return p.clone();
        }
        let out = self.nf_uncached(e);
        self.memo.borrow_mut().insert(key, (e.clone(), out.clone()));
        out
    }

    fn nf_uncached(&self, e: &Expr) -> Pair {
        match e {
            Expr::Poly(p) => Pair::poly(p.clone()),
            Expr::Neg(a) => self.nf(a).swap(),
            Expr::Add(a, b) => self.nf(a).add(&self.nf(b)),
            Expr::Sup(a, b) => self.nf(a).sup(&self.nf(b)),
            Expr::Inf(a, b) => self.nf(a).inf(&self.nf(b)),
            Expr::Pos(a) => self.nf(a).sup(&self.zero()),
            Expr::NegPart(a) => self.nf(a).swap().sup(&self.zero()),
            Expr::Abs(a) => {
                let x = self.nf(a);
                x.sup(&x.clone().swap())
            }
            Expr::Mul(a, b) => self.mul(a, b),
        }
    }

    /// The structure to recurse on: the term itself, or its normal form when
    /// that is smaller (redundant branches have been pruned there).
    fn shape(&self, e: &Rc<Expr>) -> Rc<Expr> {
        if matches!(**e, Expr::Poly(_)) {
            return e.clone();
        }
        let n = self.nf(e);
        if let Some(p) = n.as_poly() {
            return Rc::new(Expr::Poly(p.clone()));
        }
        let polys: usize = n.pos.iter().map(Vec::len).sum();
        // a margin of two keeps recursion through `difference` well founded
        if 2 * polys < e.size() {
            expr_of(&n.pos)
        } else {
            e.clone()
        }
    }

    fn mul(&self, x: &Rc<Expr>, y: &Rc<Expr>) -> Pair {
        let (x, y) = (self.shape(x), self.shape(y));
        if let Expr::Poly(p) = &*x {
            return self.mul_poly(p, &y);
        }
        if let Expr::Poly(q) = &*y {
            return self.mul_poly(q, &x);
        }
        let (xn, yn) = (self.nf(&x), self.nf(&y));
        // the spread side is multiplied entry by entry, so keep it small
        let weight = |p: &Pair| p.pos.iter().chain(&p.neg).map(Vec::len).sum::<usize>();
        if weight(&xn) < weight(&yn) {
            self.mul_struct(&y, &x, &xn)
        } else {
            self.mul_struct(&x, &y, &yn)
        }
    }

    /// `x * y` by recursion on the shape of `x`; `yn` is the normal form of `y`.
    fn mul_struct(&self, x: &Rc<Expr>, y: &Rc<Expr>, yn: &Pair) -> Pair {
        let x = self.shape(x);
        match &*x {
            Expr::Poly(p) => self.mul_poly(p, y),
            Expr::Neg(a) => self.mul_struct(a, y, yn).swap(),
            Expr::Add(a, b) => self.mul_struct(a, y, yn).add(&self.mul_struct(b, y, yn)),
            // u \/ v = v + (u - v)^+
            Expr::Sup(u, v) => self.mul_struct(v, y, yn).add(&self.pos_times(&difference(u, v), yn)),
            // u /\ v = u - (u - v)^+
            Expr::Inf(u, v) => self.mul_struct(u, y, yn).sub(&self.pos_times(&difference(u, v), yn)),
            Expr::Pos(u) => self.pos_times(u, yn),
            Expr::NegPart(u) => self.pos_times(&Rc::new(Expr::Neg(u.clone())), yn),
            // |u| = -u + (2u)^+
            Expr::Abs(u) => self
                .mul_struct(u, y, yn)
                .swap()
                .add(&self.pos_times(&Rc::new(Expr::Add(u.clone(), u.clone())), yn)),
            Expr::Mul(..) => self.mul_struct(&expr_of(&self.nf(&x).pos), y, yn),
        }
    }

    /// `w^+ * y`. Multiplying by a positive element is a lattice homomorphism,
    /// so it goes inside both normal forms of `y` entrywise.
    fn pos_times(&self, w: &Rc<Expr>, yn: &Pair) -> Pair {
        let spread = |a: &Fam| -> Fam {
            let mut outer: Option<Fam> = None;
            for inner in a {
                let mut cell: Option<Fam> = None;
                for p in inner {
                    let f = self.times_pos(p, w).pos;
                    cell = Some(match cell {
                        None => f,
                        Some(c) => inf(&c, &f),
                    });
                }
                let cell = cell.expect("inner family is never empty");
                outer = Some(match outer {
                    None => cell,
                    Some(o) => sup(&o, &cell),
                });
            }
            outer.expect("at least one family")
        };
        Pair {
            pos: spread(&yn.pos),
            neg: spread(&yn.neg),
        }
    }

    /// `p * y` by recursion on the shape of `y`.
    fn mul_poly(&self, p: &MPoly, y: &Rc<Expr>) -> Pair {
        if let Some(c) = p.as_constant() {
            return self.nf(y).scale(&c);
        }
        let y = self.shape(y);
        if y.lattice_depth() > 1 {
            // nested afr7 squares the family count at every level, while
            // p = p^+ - p^- spread entrywise stays polynomial in it
            let yn = self.nf(&y);
            let minus = -p;
            let hp = self.pos_times(&Rc::new(Expr::Poly(p.clone())), &yn);
            let hm = self.pos_times(&Rc::new(Expr::Poly(minus)), &yn);
            return hp.sub(&hm);
        }
        match &*y {
            Expr::Poly(q) => Pair::poly(p * q),
            Expr::Neg(a) => self.mul_poly(p, a).swap(),
            Expr::Add(a, b) => self.mul_poly(p, a).add(&self.mul_poly(p, b)),
            Expr::Sup(u, v) => self.mul_poly(p, v).add(&self.times_pos(p, &difference(u, v))),
            Expr::Inf(u, v) => self.mul_poly(p, u).sub(&self.times_pos(p, &difference(u, v))),
            Expr::Pos(u) => self.times_pos(p, u),
            Expr::NegPart(u) => self.times_pos(p, &Rc::new(Expr::Neg(u.clone()))),
            Expr::Abs(u) => self
                .mul_poly(p, u)
                .swap()
                .add(&self.times_pos(p, &Rc::new(Expr::Add(u.clone(), u.clone())))),
            Expr::Mul(..) => self.mul_poly(p, &expr_of(&self.nf(&y).pos)),
        }
    }

    /// `p * w^+ = (p*w /\ (p^2+1)*w) \/ (-(p^2+1)*w /\ 0)`
    fn times_pos(&self, p: &MPoly, w: &Rc<Expr>) -> Pair {
        let wn = self.nf(w);
        let wp = wn.sup(&self.zero());
        if let Some(c) = p.as_constant() {
            return wp.scale(&c);
        }
        if let Some(r) = wp.as_poly() {
            // w^+ is a polynomial only when it is provably 0 or w itself
            return Pair::poly(p * r);
        }
        let q = &(p * p) + &MPoly::one(self.n);
        let pw = self.mul_poly(p, w);
        let qw = self.mul_poly(&q, w);
        let zero = self.zero();
        pw.inf(&qw).sup(&qw.clone().swap().inf(&zero))
    }
}
