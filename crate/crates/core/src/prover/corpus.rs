//! Named rules of lattice-ordered groups: the axioms with some classical
//! derived rules, and a list of further identities. `u ⊥ v` is written
//! `abs(u) /\ abs(v) = 0`.

use super::lgroup::Rule;
use crate::semipoly::{tri_dual_term, tri_term, var, LatticeTerm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedRule {
    pub name: String,
    pub rule: Rule,
}

fn named(name: &str, text: &str) -> NamedRule {
    NamedRule {
        name: name.to_string(),
        rule: text.parse().unwrap_or_else(|e| panic!("rule `{name}` does not parse: {e}")),
    }
}

fn ortho(a: &str, b: &str) -> String {
    format!("abs({a}) /\\ abs({b}) = 0")
}

/// Axioms of lattice-ordered abelian groups and rules derived from them.
///
/// The modular rule is stated with `z <= x`: with `x <= z` it fails at
/// `x = y = 0, z = 1`.
pub fn lgroup_axioms() -> Vec<NamedRule> {
    let mut out = vec![
        named("ga0", "|- 0 = 0"),
        named("ga1", "x = 0 |- -x = 0"),
        named("ga2", "x = 0, y = 0 |- x + y = 0"),
        named("sup1=", "x = 0 |- ((x + y) \\/ z) - (y \\/ z) = 0"),
        named("sup2=", "x = 0 |- (y \\/ (x + z)) - (y \\/ z) = 0"),
        named("sdt1", "|- (x \\/ x) - x = 0"),
        named("sdt2", "|- (x \\/ y) - (y \\/ x) = 0"),
        named("sdt3", "|- ((x \\/ y) \\/ z) - (x \\/ (y \\/ z)) = 0"),
        named("translation", "|- x + (y \\/ z) - ((x + y) \\/ (x + z)) = 0"),
        named("gr1", "|- (x \\/ (y1 /\\ y2)) - ((x \\/ y1) /\\ (x \\/ y2)) = 0"),
        named("gr2", "|- (x /\\ (y1 \\/ y2)) - ((x /\\ y1) \\/ (x /\\ y2)) = 0"),
        named("gr3", "|- ((x /\\ y) \\/ x) - x = 0"),
        named("gr4", "|- ((x \\/ y) /\\ x) - x = 0"),
        named("gr5", "|- (x /\\ y) + (x \\/ y) - (x + y) = 0"),
        named("gr6", "|- x - (pos(x) - neg(x)) = 0"),
        named("gr7a", "|- abs(x) - (pos(x) + neg(x)) = 0"),
        named("gr7b", "|- abs(x) - (pos(x) \\/ neg(x)) = 0"),
        named("Sup", "z >= x, z >= y |- z >= x \\/ y"),
        named("Gao", "x >= 0, x <= 0 |- x = 0"),
        named("Gr1", &format!("y >= 0, z >= 0, {} |- pos(y - z) - y = 0", ortho("y", "z"))),
        named("Gr2", "z <= x |- ((x /\\ y) \\/ z) - (x /\\ (y \\/ z)) = 0"),
    ];
    for n in 2..=4 {
        out.push(named(&format!("Gr3_{n}"), &format!("{n}*x >= 0 |- x >= 0")));
    }
    for n in 2..=3 {
        out.push(NamedRule {
            name: format!("Gr4_{n}"),
            rule: cancellation(n),
        });
    }
    out
}

/// `n x >= inf_k (k y + (n-k) x) |- x >= y`.
fn cancellation(n: usize) -> Rule {
    let parts: Vec<String> = (1..=n).map(|k| format!("({k}*y + {}*x)", n - k)).collect();
    format!("{n}*x >= {} |- x >= y", parts.join(" /\\ ")).parse().expect("well formed")
}

fn xs(n: usize) -> Vec<LatticeTerm> {
    (1..=n).map(|i| var(&format!("x{i}"))).collect()
}

/// `\/ x_i` written by inclusion and exclusion over the infs of subsets.
fn inclusion_exclusion(n: usize) -> Rule {
    let mut text = String::new();
    for k in 1..=n {
        let sign = if k % 2 == 1 { "+" } else { "-" };
        let infs: Vec<String> = crate::semipoly::subsets(n, k)
            .into_iter()
            .map(|s| {
                let names: Vec<String> = s.iter().map(|i| format!("x{}", i + 1)).collect();
                format!("({})", names.join(" /\\ "))
            })
            .collect();
        text.push_str(&format!(" {sign} ({})", infs.join(" + ")));
    }
    let sup: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    format!("|- ({}) = {}", sup.join(" \\/ "), text.trim_start_matches(" +").trim_start())
        .parse()
        .expect("well formed")
}

/// Identities of lattice-ordered groups, each equivalence split into its
/// two directions.
pub fn lgroup_identities() -> Vec<NamedRule> {
    let xy = ortho("x", "y");
    let uv = ortho("u", "v");
    let vw = ortho("v", "w");
    let nonneg = "u >= 0, v >= 0, w >= 0";
    let mut out = vec![
        named("sum-via-abs", "|- x + y = abs(x - y) + 2*(x /\\ y)"),
        named("pos-of-inf", "|- pos(x /\\ y) = pos(x) /\\ pos(y)"),
        named("neg-of-inf", "|- neg(x /\\ y) = neg(x) \\/ neg(y)"),
        named("pos-of-sup", "|- pos(x \\/ y) = pos(x) \\/ pos(y)"),
        named("neg-of-sup", "|- neg(x \\/ y) = neg(x) /\\ neg(y)"),
        named("pos-sum-lower", "|- 2*pos(x /\\ y) <= pos(x + y)"),
        named("pos-sum-upper", "|- pos(x + y) <= pos(x) + pos(y)"),
        named("triangle", "|- abs(x + y) <= abs(x) + abs(y)"),
        named(
            "triangle-defect",
            "|- abs(x) + abs(y) = abs(x + y) + 2*(pos(x) /\\ neg(y)) + 2*(neg(x) /\\ pos(y))",
        ),
        named("triangle-minus", "|- abs(x - y) <= abs(x) + abs(y)"),
        named(
            "triangle-minus-defect",
            "|- abs(x) + abs(y) = abs(x - y) + 2*(pos(x) /\\ pos(y)) + 2*(neg(x) /\\ neg(y))",
        ),
        named("sup-of-abs", "|- abs(x + y) \\/ abs(x - y) = abs(x) + abs(y)"),
        named("inf-of-abs", "|- abs(x + y) /\\ abs(x - y) = abs(abs(x) - abs(y))"),
        named("abs-diff", "|- abs(x - y) = (x \\/ y) - (x /\\ y)"),
        named(
            "abs-diff-split",
            "|- abs((x \\/ z) - (y \\/ z)) + abs((x /\\ z) - (y /\\ z)) = abs(x - y)",
        ),
        named("abs-diff-parts", "|- abs(pos(x) - pos(y)) + abs(neg(x) - neg(y)) = abs(x - y)"),
        named("modular", "z <= x |- (x /\\ y) \\/ z = x /\\ (y \\/ z)"),
        named("exchange", "x + y = z + t |- x + y = (x \\/ z) + (y /\\ t)"),
        named("sup-inclusion-exclusion-2", &inclusion_exclusion(2).to_string()),
        named("sup-inclusion-exclusion-3", &inclusion_exclusion(3).to_string()),
        named("ortho-sum-diff", &format!("{xy} |- abs(x + y) = abs(x - y)")),
        named("sum-diff-ortho", &format!("abs(x + y) = abs(x - y) |- {xy}")),
        named("ortho-sum-sup", &format!("{xy} |- abs(x + y) = abs(x) \\/ abs(y)")),
        named("sum-sup-ortho", &format!("abs(x + y) = abs(x) \\/ abs(y) |- {xy}")),
        named("ortho-abs-sum", &format!("{xy} |- abs(x + y) = abs(x) + abs(y)")),
        named("ortho-sum-is-sup", &format!("{xy} |- abs(x) + abs(y) = abs(x) \\/ abs(y)")),
        named(
            "ortho-decomposition-x",
            &format!(
                "{xy}, {}, {}, {}, x + y = x1 + y1 |- x = x1",
                ortho("x1", "y"),
                ortho("x", "y1"),
                ortho("x1", "y1")
            ),
        ),
        named(
            "ortho-decomposition-y",
            &format!(
                "{xy}, {}, {}, {}, x + y = x1 + y1 |- y = y1",
                ortho("x1", "y"),
                ortho("x", "y1"),
                ortho("x1", "y1")
            ),
        ),
        named("pos-ortho-sum", &format!("u >= 0, v >= 0, {uv} |- u + v = abs(u - v)")),
        named("pos-sum-ortho", &format!("u >= 0, v >= 0, u + v = abs(u - v) |- {uv}")),
        named("inf-subadditive", &format!("{nonneg} |- (u + v) /\\ w <= (u /\\ w) + (v /\\ w)")),
        named("sup-subadditive", "w >= 0 |- (x + y) \\/ w <= (x \\/ w) + (y \\/ w)"),
        named("ortho-absorb", &format!("{nonneg}, {vw} |- (u + v) /\\ w = u /\\ w")),
        named("ortho-inf-additive", &format!("{nonneg}, {uv} |- (u + v) /\\ w = (u /\\ w) + (v /\\ w)")),
    ];
    for n in 2..=3 {
        out.push(NamedRule {
            name: format!("cancellation-{n}"),
            rule: cancellation(n),
        });
    }
    for n in 2..=3 {
        let x = xs(n);
        for k in 1..=n {
            out.push(named(
                &format!("tri-dual-{n}-{k}"),
                &format!("|- {} = {}", tri_term(k, &x), tri_dual_term(k, &x)),
            ));
        }
        for k in 1..n {
            out.push(named(
                &format!("tri-monotone-{n}-{k}"),
                &format!("|- {} <= {}", tri_term(k, &x), tri_term(k + 1, &x)),
            ));
        }
    }
    // sorting a chain, for two orders of three elements
    for order in [[1, 2, 3], [3, 1, 2]] {
        let x = xs(3);
        let chain = format!("x{} <= x{}, x{} <= x{}", order[0], order[1], order[1], order[2]);
        for k in 1..=3 {
            out.push(named(
                &format!("tri-sorts-{}{}{}-{k}", order[0], order[1], order[2]),
                &format!("{chain} |- {} = x{}", tri_term(k, &x), order[k - 1]),
            ));
        }
    }
    out
}
