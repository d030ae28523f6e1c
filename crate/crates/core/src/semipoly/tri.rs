//! `Tri_k(x_1..x_n)`: the inf over `k`-subsets of the sup over the subset.
//! For a totally ordered input it is the `k`-th smallest entry.

use crate::error::{domain, Result};
use crate::numerics::Rational;

use super::term::LatticeTerm;

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// `[Tri_1, ..., Tri_n]` computed from the definition.
pub fn tri_sort(values: &[Rational]) -> Result<Vec<Rational>> {
    if values.is_empty() {
        return Err(domain("tri_sort needs at least one value"));
    }
    let n = values.len();
    Ok((1..=n)
        .map(|k| {
            subsets(n, k)
                .iter()
                .map(|s| s.iter().map(|&i| &values[i]).max().unwrap().clone())
                .min()
                .unwrap()
        })
        .collect())
}

/// `Tri_k` written as a term: inf over `k`-subsets of sups.
pub fn tri_term(k: usize, xs: &[LatticeTerm]) -> LatticeTerm {
    fold_subsets(xs, k, LatticeTerm::sup, LatticeTerm::inf)
}

/// The dual form: sup over `(n-k+1)`-subsets of infs.
pub fn tri_dual_term(k: usize, xs: &[LatticeTerm]) -> LatticeTerm {
    fold_subsets(xs, xs.len() - k + 1, LatticeTerm::inf, LatticeTerm::sup)
}

fn fold_subsets(
    xs: &[LatticeTerm],
    k: usize,
    inner: fn(LatticeTerm, LatticeTerm) -> LatticeTerm,
    outer: fn(LatticeTerm, LatticeTerm) -> LatticeTerm,
) -> LatticeTerm {
    subsets(xs.len(), k)
        .into_iter()
        .map(|s| s.into_iter().map(|i| xs[i].clone()).reduce(inner).unwrap())
        .reduce(outer)
        .expect("1 <= k <= n")
}
