#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use num_traits::{Signed, ToPrimitive};
use realalg::numerics::rational::{int, rat};
use realalg::prover::{Atom, Rule};
use realalg::semipoly::{constant, var, LatticeTerm};
use realalg::{Rational, UniPoly};

const VARS: [&str; 3] = ["x", "y", "z"];

fn leaf(rng: &mut ChaCha8Rng, p_var: f64) -> LatticeTerm {
    if rng.gen_bool(p_var) {
        var(VARS[rng.gen_range(0..3)])
    } else {
        constant(int(rng.gen_range(-3..=3)))
    }
}

/// A lattice-free term of depth at most `depth`.
pub fn random_poly(rng: &mut ChaCha8Rng, depth: u32) -> LatticeTerm {
    if depth == 0 || rng.gen_bool(0.4) {
        return leaf(rng, 0.6);
    }
    let a = random_poly(rng, depth - 1);
    match rng.gen_range(0..3) {
        0 => a.negate(),
        1 => a.plus(random_poly(rng, depth - 1)),
        _ => a.times(random_poly(rng, depth - 1)),
    }
}

/// A ring term over x, y, z in which every product has a lattice-free factor.
pub fn random_ring_term(rng: &mut ChaCha8Rng, depth: u32) -> LatticeTerm {
    if depth == 0 || rng.gen_bool(0.3) {
        return leaf(rng, 0.5);
    }
    let a = random_ring_term(rng, depth - 1);
    match rng.gen_range(0..7) {
        0 => a.negate(),
        1 => a.plus(random_ring_term(rng, depth - 1)),
        2 => a.times(random_poly(rng, 2)),
        3 => a.sup(random_ring_term(rng, depth - 1)),
        4 => a.inf(random_ring_term(rng, depth - 1)),
        5 => a.pos(),
        _ => a.abs(),
    }
}

/// An additive term over x, y, z.
pub fn random_additive_term(rng: &mut ChaCha8Rng, depth: u32) -> LatticeTerm {
    if depth == 0 || rng.gen_bool(0.3) {
        return leaf(rng, 0.8);
    }
    let a = random_additive_term(rng, depth - 1);
    match rng.gen_range(0..7) {
        0 => a.negate(),
        1 => a.plus(random_additive_term(rng, depth - 1)),
        2 => constant(int(rng.gen_range(2..=3))).times(a),
        3 => a.sup(random_additive_term(rng, depth - 1)),
        4 => a.inf(random_additive_term(rng, depth - 1)),
        5 => a.pos(),
        _ => a.abs(),
    }
}

fn count(t: &LatticeTerm) -> usize {
    t.size()
}

/// Rewrites the `k`-th node in preorder with a local change.
fn mutate_at(t: &LatticeTerm, k: &mut usize, rng: &mut ChaCha8Rng) -> LatticeTerm {
    use LatticeTerm as T;
    let here = *k == 0;
    *k = k.wrapping_sub(1);
    if here {
        return match t {
            T::Sup(a, b) => (**a).clone().inf((**b).clone()),
            T::Inf(a, b) => (**a).clone().sup((**b).clone()),
            T::Pos(a) => (**a).clone().neg_part(),
            T::NegPart(a) => (**a).clone().abs(),
            T::Abs(a) => (**a).clone().pos(),
            T::Neg(a) => (**a).clone(),
            T::Add(a, b) => (**a).clone().minus((**b).clone()),
            T::Var(v) => {
                let others: Vec<&str> = VARS.iter().copied().filter(|w| w != v).collect();
                var(others[rng.gen_range(0..others.len())])
            }
            T::Const(c) => constant(c + int(1)),
            other => other.clone().plus(constant(int(1))),
        };
    }
    match t {
        T::Neg(a) => mutate_at(a, k, rng).negate(),
        T::Pos(a) => mutate_at(a, k, rng).pos(),
        T::NegPart(a) => mutate_at(a, k, rng).neg_part(),
        T::Abs(a) => mutate_at(a, k, rng).abs(),
        T::Pow(a, n) => mutate_at(a, k, rng).pow(*n),
        T::Add(a, b) => {
            let a = mutate_at(a, k, rng);
            a.plus(mutate_at(b, k, rng))
        }
        T::Mul(a, b) => {
            let a = mutate_at(a, k, rng);
            a.times(mutate_at(b, k, rng))
        }
        T::Sup(a, b) => {
            let a = mutate_at(a, k, rng);
            a.sup(mutate_at(b, k, rng))
        }
        T::Inf(a, b) => {
            let a = mutate_at(a, k, rng);
            a.inf(mutate_at(b, k, rng))
        }
        leaf => leaf.clone(),
    }
}

/// The rule with one random local change in its conclusion.
pub fn mutate(rule: &Rule, rng: &mut ChaCha8Rng) -> Rule {
    let t = &rule.conclusion.term;
    let mut k = rng.gen_range(0..count(t));
    let term = mutate_at(t, &mut k, rng);
    Rule::new(rule.hypotheses.clone(), Atom { term, rel: rule.conclusion.rel })
}

/// `p/q` with `|p| <= bound` and `1 <= q <= bound`.
pub fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

/// A monic polynomial of the given degree with small rational coefficients.
pub fn random_monic_of_degree(rng: &mut ChaCha8Rng, d: usize, bound: i64) -> UniPoly {
    let mut cs: Vec<Rational> = (0..d).map(|_| random_rational(rng, bound)).collect();
    cs.push(int(1));
    UniPoly::new(cs)
}

pub fn random_monic(rng: &mut ChaCha8Rng, max_degree: usize, bound: i64) -> UniPoly {
    let d = rng.gen_range(1..=max_degree);
    random_monic_of_degree(rng, d, bound)
}

/// A product of linear factors, with its roots listed with multiplicity.
pub fn random_linear_product(rng: &mut ChaCha8Rng, max_factors: usize) -> (UniPoly, Vec<Rational>) {
    let n = rng.gen_range(1..=max_factors);
    let roots: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-6..=6), rng.gen_range(1..=3))).collect();
    let f = roots.iter().fold(UniPoly::one(), |acc, r| &acc * &UniPoly::linear_root(r));
    (f, roots)
}

pub fn f64_of(q: &Rational) -> f64 {
    q.to_f64().expect("small rationals convert")
}

/// `sum k |a_k| M^(k-1)` with `M = max(|a|, |b|)`, a Lipschitz constant of `f` on `[a, b]`.
pub fn lipschitz_constant(f: &UniPoly, a: &Rational, b: &Rational) -> f64 {
    let m = f64_of(&a.abs().max(b.abs()));
    f.coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| k as f64 * f64_of(&c.abs()) * m.powi(k as i32 - 1))
        .sum()
}

/// Minimum of `g` on `[a, b]` from a grid of step `h` with `l * h < tol`,
/// where `l` is a Lipschitz constant of `g`. Cells whose Lipschitz lower
/// bound already exceeds the best sample are not refined further, so the
/// returned sample is within `tol` of the true minimum.
pub fn lipschitz_grid_min(g: &dyn Fn(f64) -> f64, l: f64, a: f64, b: f64, tol: f64) -> f64 {
    let n0 = 64;
    let step = (b - a) / n0 as f64;
    let xs: Vec<f64> = (0..=n0).map(|i| if i == n0 { b } else { a + step * i as f64 }).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
    let mut best = ys.iter().copied().fold(f64::INFINITY, f64::min);
    let mut cells: Vec<(f64, f64, f64, f64)> = (0..n0).map(|i| (xs[i], xs[i + 1], ys[i], ys[i + 1])).collect();
    while let Some((lo, hi, glo, ghi)) = cells.pop() {
        if l * (hi - lo) < tol || glo.min(ghi) - l * (hi - lo) / 2.0 > best {
            continue;
        }
        let mid = (lo + hi) / 2.0;
        let gm = g(mid);
        best = best.min(gm);
        cells.push((lo, mid, glo, gm));
        cells.push((mid, hi, gm, ghi));
    }
    best
}

pub fn eval_f64(f: &UniPoly, x: f64) -> f64 {
    f.coeffs().iter().rev().fold(0.0, |acc, c| acc * x + f64_of(c))
}
