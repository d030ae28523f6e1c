//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use realalg::numerics::rational::{int, rat};
use realalg::numerics::{
    algebraic_compare, algebraic_sign, check_mean_value, quartic_rule, real_roots, RealAlgebraic, Sturm,
};
use realalg::prover::{
    check_collapse_certificate, lgroup_axioms, lgroup_identities, prove_lgroup_rule, CollapseCertificate,
    CollapseVerdict, Proof, RingPresentation, Rule,
};
use realalg::semipoly::{eval_term, to_sup_inf_nf, tri_sort, univar_semipoly_compare, LatticeTerm, SemiEq};
use realalg::series::{
    hensel_newton_root, series_abs, series_frac, series_inf, series_inverse, series_otf_split, FracResult,
    LazySeries, OtfSide, SeriesPoly,
};
use realalg::vroots::{
    budan_fourier_index, complex_sqrt_cover, interval_extrema, ivt_witness, quartic_system, rescale_roots,
    virtual_roots, VirtualRootTriangle,
};
use realalg::{Error, Rational, UniPoly};

use common::{
    eval_f64, f64_of, lipschitz_constant, lipschitz_grid_min, random_linear_product, random_monic,
    random_monic_of_degree, random_rational,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn eq(a: &RealAlgebraic, b: &RealAlgebraic) -> bool {
    algebraic_compare(a, b) == Ordering::Equal
}

fn q(x: Rational) -> RealAlgebraic {
    RealAlgebraic::from_rational(x)
}

fn triangle(f: &UniPoly) -> Result<VirtualRootTriangle, String> {
    virtual_roots(f).map_err(|e| format!("{f:?}: {e}"))
}

fn virtual_roots_suite() -> Outcome {
    let start = Instant::now();
    let mut g = rng(1);
    for _ in 0..200 {
        let f = random_monic(&mut g, 6, 10);
        let t = triangle(&f)?;
        for delta in 2..=t.degree() {
            for j in 1..delta {
                ensure!(
                    algebraic_compare(t.rho(delta, j), t.rho(delta - 1, j)) != Ordering::Greater
                        && algebraic_compare(t.rho(delta - 1, j), t.rho(delta, j + 1)) != Ordering::Greater,
                    "interlacing fails for {f:?} at ({delta}, {j})"
                );
            }
        }
        for r in real_roots(&f).map_err(|e| e.to_string())? {
            ensure!(t.top().iter().any(|v| eq(v, &r)), "root of {f:?} missing from the top row");
        }
        let fs = t.f_star();
        for delta in 1..=t.degree() {
            for x in t.row(delta) {
                ensure!(algebraic_sign(&fs, x) == 0, "entry of {f:?} is not a root of f*");
            }
        }
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(60), "took {took:?}");
    Ok(format!("200 polynomials in {:.1}s", took.as_secs_f64()))
}

/// The real `d`-th root of `c` (odd `d` when `c < 0`).
fn real_root(c: &Rational, d: usize) -> RealAlgebraic {
    if c.is_zero() {
        return RealAlgebraic::zero();
    }
    let p = &UniPoly::monomial(int(1), d) - &UniPoly::constant(c.abs());
    let r = RealAlgebraic::isolated(&p, int(0), c.abs() + int(1)).expect("a positive root");
    if c.is_negative() {
        r.neg()
    } else {
        r
    }
}

fn closed_forms() -> Outcome {
    for d in 2..=5usize {
        for a in [-2i64, 0, 3] {
            let f = &UniPoly::monomial(int(1), d) - &UniPoly::constant(int(a));
            let t = triangle(&f)?;
            let top = t.top();
            let apos = int(a.max(0));
            ensure!(eq(&top[d - 1], &real_root(&apos, d)), "rho_d,d for X^{d} - {a}");
            for x in &top[1..d - 1] {
                ensure!(x.cmp_rational(&Rational::zero()) == Ordering::Equal, "interior entry for X^{d} - {a}");
            }
            // rho_d,1 + rho_d,d is 0 for even d and the real d-th root of a for odd d
            let first = if d % 2 == 0 {
                real_root(&apos, d).neg()
            } else {
                real_root(&int(a.min(0)), d)
            };
            ensure!(eq(&top[0], &first), "rho_d,1 for X^{d} - {a}");
        }
    }
    Ok("12 binomials".into())
}

fn product_case() -> Outcome {
    let mut g = rng(3);
    for _ in 0..50 {
        let (f, roots) = random_linear_product(&mut g, 5);
        let t = triangle(&f)?;
        let tri = tri_sort(&roots).map_err(|e| e.to_string())?;
        let mut sorted = roots.clone();
        sorted.sort();
        ensure!(tri == sorted, "Tri disagrees with sorting on {roots:?}");
        for (k, r) in tri.iter().enumerate() {
            ensure!(t.top()[k].cmp_rational(r) == Ordering::Equal, "rho_d,{} for roots {roots:?}", k + 1);
        }
    }
    Ok("50 products".into())
}

fn budan_fourier() -> Outcome {
    let mut g = rng(4);
    let mut done = 0;
    let mut skipped = 0;
    while done < 200 {
        let f = random_monic(&mut g, 6, 10);
        let a = rat(g.gen_range(-40..=40), g.gen_range(1..=7));
        let t = triangle(&f)?;
        let bf = match budan_fourier_index(&t, &a) {
            Ok(bf) => bf,
            Err(Error::VanishingDerivative { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e.to_string()),
        };
        let pa = q(a.clone());
        ensure!(
            bf.lower.cmp_value(&pa) == Ordering::Less && bf.upper.cmp_value(&pa) == Ordering::Greater,
            "bracket fails for {f:?} at {a}"
        );
        let sturm = Sturm::new(&f);
        let b = t.bound() + int(1);
        let d = t.degree();
        ensure!(sturm.count(&-b.clone(), &a) <= d - bf.r, "more roots below {a} than virtual roots for {f:?}");
        ensure!(sturm.count(&a, &b) <= bf.r, "more roots above {a} than sign changes for {f:?}");
        done += 1;
    }
    Ok(format!("200 admissible points ({skipped} inadmissible draws skipped)"))
}

fn ivt() -> Outcome {
    let mut g = rng(5);
    let mut done = 0;
    while done < 100 {
        let f = random_monic(&mut g, 6, 10);
        let a = random_rational(&mut g, 10);
        let b = &a + rat(g.gen_range(1..=30), g.gen_range(1..=5));
        if f.sign_at(&a) * f.sign_at(&b) >= 0 {
            continue;
        }
        let t = triangle(&f)?;
        let w = ivt_witness(&t, &q(a.clone()), &q(b.clone())).map_err(|e| e.to_string())?;
        ensure!(algebraic_sign(&f, &w.mu[w.zero_index - 1]) == 0, "mu is not a zero for {f:?} on [{a}, {b}]");
        done += 1;
    }
    Ok("100 sign changes".into())
}

fn extrema() -> Outcome {
    let mut g = rng(6);
    let tol = 1e-6;
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let f = random_monic(&mut g, 4, 5);
        let a = rat(g.gen_range(-6..=2), 3);
        let b = &a + rat(g.gen_range(1..=6), 3);
        let t = triangle(&f)?;
        let e = interval_extrema(&t, &q(a.clone()), &q(b.clone())).map_err(|e| e.to_string())?;
        let l = lipschitz_constant(&f, &a, &b);
        let (fa, fb) = (f64_of(&a), f64_of(&b));
        let inf = lipschitz_grid_min(&|x| eval_f64(&f, x), l, fa, fb, tol);
        let sup = -lipschitz_grid_min(&|x| -eval_f64(&f, x), l, fa, fb, tol);
        let inf_abs = lipschitz_grid_min(&|x| eval_f64(&f, x).abs(), l, fa, fb, tol);
        let slack = tol + 1e-9 * (1.0 + l);
        for (exact, oracle, what) in [(&e.inf, inf, "inf"), (&e.sup, sup, "sup"), (&e.inf_abs, inf_abs, "inf |f|")] {
            let gap = (exact.to_f64() - oracle).abs();
            worst = worst.max(gap);
            ensure!(gap <= slack, "{what} of {f:?} on [{a}, {b}] off by {gap:e}");
        }
        let signs: Vec<i8> = (0..=1000).map(|i| f.sign_at(&(&a + (&b - &a) * rat(i, 1000)))).collect();
        match e.constant_sign {
            0 => ensure!(!signs.iter().all(|&s| s == 1) || e.inf.cmp_rational(&Rational::zero()) != Ordering::Greater, "flag 0 with positive inf"),
            s => ensure!(signs.iter().all(|&x| x == s), "constant_sign {s} contradicted by sampling {f:?}"),
        }
        if signs.contains(&1) && signs.contains(&-1) {
            ensure!(e.constant_sign == 0, "sign change sampled but flag set for {f:?}");
        }
    }
    Ok(format!("50 intervals, largest gap {worst:.1e}"))
}

fn rescale() -> Outcome {
    let mut g = rng(7);
    for i in 0..50 {
        let f = random_monic(&mut g, 5, 10);
        let c = match i % 5 {
            0 => Rational::zero(),
            1 | 2 => -rat(g.gen_range(1..=5), g.gen_range(1..=3)),
            _ => rat(g.gen_range(1..=5), g.gen_range(1..=3)),
        };
        let r = rescale_roots(&triangle(&f)?, &c).map_err(|e| e.to_string())?;
        ensure!(r.verified, "scaling law fails for {f:?} with c = {c}");
        ensure!(r.predicted.iter().zip(r.triangle.top()).all(|(a, b)| eq(a, b)), "prediction mismatch");
    }
    Ok("50 rescalings".into())
}

fn quartic_inequalities() -> Outcome {
    let mut g = rng(8);
    for _ in 0..50 {
        let f = random_monic_of_degree(&mut g, 4, 10);
        for ineq in quartic_system(&triangle(&f)?).map_err(|e| e.to_string())? {
            ensure!(ineq.holds, "{} fails for {f:?}", ineq.name);
        }
    }
    Ok("50 quartics".into())
}

fn random_point(rule: &Rule, g: &mut ChaCha8Rng) -> BTreeMap<String, Rational> {
    rule.variables().into_iter().map(|v| (v, rat(g.gen_range(-6..=6), g.gen_range(1..=3)))).collect()
}

fn prover_corpus() -> Outcome {
    let corpus: Vec<_> = lgroup_axioms().into_iter().chain(lgroup_identities()).collect();
    let mut slowest = Duration::ZERO;
    for named in &corpus {
        let start = Instant::now();
        let proof = prove_lgroup_rule(&named.rule).map_err(|e| format!("{}: {e}", named.name))?;
        let took = start.elapsed();
        slowest = slowest.max(took);
        ensure!(took < Duration::from_secs(5), "{} took {took:?}", named.name);
        match proof {
            Proof::Valid(t) => ensure!(t.verify(), "{}: certificates do not verify", named.name),
            Proof::Counterexample(p) => return Err(format!("{} refuted at {p:?}", named.name)),
        }
    }
    // mutants that sampling refutes must come back with a verified counterexample
    let mut g = rng(9);
    let identities = lgroup_identities();
    let mut refuted = 0;
    let mut tried = 0;
    while refuted < 20 {
        ensure!(tried < 2000, "only {refuted} refutable mutants in {tried} draws");
        let m = common::mutate(&identities[tried % identities.len()].rule, &mut g);
        tried += 1;
        let failing = (0..2000).map(|_| random_point(&m, &mut g)).any(|p| !m.holds_at(&p).unwrap());
        if !failing {
            continue;
        }
        match prove_lgroup_rule(&m).map_err(|e| e.to_string())? {
            Proof::Counterexample(p) => ensure!(!m.holds_at(&p).unwrap(), "`{m}`: point {p:?} does not refute"),
            Proof::Valid(_) => return Err(format!("`{m}` proved but fails at a sampled point")),
        }
        refuted += 1;
    }
    Ok(format!("{} rules valid (slowest {:.2}s), 20 mutants refuted", corpus.len(), slowest.as_secs_f64()))
}

fn collapse() -> Outcome {
    let verdict = |pres: &RingPresentation, cert: &CollapseCertificate| {
        check_collapse_certificate(pres, cert).map_err(|e| e.to_string())
    };
    let sos = RingPresentation::new(&["x"], &[], &[], &["1 + x^2"]).map_err(|e| e.to_string())?;
    let text = r#"{"s": [], "p": [{"coeff": "1", "square": "x", "gens": []}], "z": [{"mult": "-1", "idx": 0}]}"#;
    let cert = CollapseCertificate::from_json(text, &sos).map_err(|e| e.to_string())?;
    ensure!(verdict(&sos, &cert)? == CollapseVerdict::Accepted, "sum of squares certificate rejected");

    let trivial = RingPresentation::new(&["x"], &["x"], &[], &["x"]).map_err(|e| e.to_string())?;
    let text = r#"{"s": [0], "p": [], "z": [{"mult": "-1", "idx": 0}]}"#;
    let tcert = CollapseCertificate::from_json(text, &trivial).map_err(|e| e.to_string())?;
    ensure!(verdict(&trivial, &tcert)? == CollapseVerdict::Accepted, "x > 0, x = 0 certificate rejected");

    let mut g = rng(10);
    for i in 0..10 {
        let mut bad = cert.clone();
        match i % 3 {
            0 => bad.z[0].mult = sos.parse_poly(&format!("-1 + {}*x", g.gen_range(1..5))).unwrap(),
            1 => bad.p[0].coeff = int(1) + rat(g.gen_range(1..9), g.gen_range(1..4)),
            _ => bad.p[0].square = sos.parse_poly(&format!("x + {}", g.gen_range(1..5))).unwrap(),
        }
        match verdict(&sos, &bad)? {
            CollapseVerdict::Rejected(r) => ensure!(!r.is_zero(), "empty residual"),
            CollapseVerdict::Accepted => return Err(format!("corruption accepted: {}", bad.to_json(&sos))),
        }
    }
    Ok("2 accepted, 10 corruptions rejected".into())
}

fn semipoly() -> Outcome {
    let mut g = rng(11);
    for _ in 0..100 {
        let t = common::random_ring_term(&mut g, 5);
        let nf = to_sup_inf_nf(&t);
        for _ in 0..100 {
            let p: BTreeMap<String, Rational> =
                ["x", "y", "z"].iter().map(|v| (v.to_string(), random_rational(&mut g, 6))).collect();
            ensure!(nf.eval_named(&p).unwrap() == eval_term(&t, &p).unwrap(), "NF of `{t}` disagrees at {p:?}");
        }
    }
    let t = |s: &str| -> LatticeTerm { s.parse().unwrap() };
    match univar_semipoly_compare(&t("x \\/ (1 - x)"), &t("1 \\/ x \\/ (1 - x)")).map_err(|e| e.to_string())? {
        SemiEq::DiffersAt { witness, .. } => {
            ensure!(witness > int(0) && witness < int(1), "witness {witness} outside (0, 1)")
        }
        SemiEq::Equal => return Err("the pair was reported equal".into()),
    }
    for (a, b) in [("abs(x)", "x \\/ -x"), ("pos(x) * neg(x)", "0")] {
        ensure!(
            univar_semipoly_compare(&t(a), &t(b)).map_err(|e| e.to_string())? == SemiEq::Equal,
            "{a} and {b} reported different"
        );
    }
    Ok("10000 evaluations, 3 comparisons".into())
}

fn truncated(g: &mut ChaCha8Rng) -> LazySeries {
    let n = g.gen_range(0..8);
    LazySeries::polynomial((0..n).map(|_| rat(g.gen_range(-4..=4), g.gen_range(1..=3))).collect())
}

fn all_zero(cs: &[Rational]) -> bool {
    cs.iter().all(Zero::is_zero)
}

fn series() -> Outcome {
    let inv = series_inverse(&LazySeries::parse_polynomial("1 - e").unwrap()).map_err(|e| e.to_string())?;
    ensure!(inv.coeffs(51).iter().all(|c| *c == int(1)), "(1 - e)^-1 has a coefficient other than 1");

    let p = SeriesPoly::parse("X^2 + X - e").map_err(|e| e.to_string())?;
    let root = hensel_newton_root(&p).map_err(|e| e.to_string())?;
    ensure!(all_zero(&p.eval(&root).coeffs(50)), "Newton residual is not zero mod e^50");

    let (xi, zeta) = (LazySeries::monomial(int(1), 2), LazySeries::epsilon());
    let rho = match series_frac(&xi, &zeta, 50).map_err(|e| e.to_string())? {
        FracResult::Series(r) => r,
        FracResult::Unknown { .. } => return Err("Fr(e^2, e) undecided".into()),
    };
    ensure!(rho.coeffs(51) == LazySeries::monomial(int(1), 3).coeffs(51), "Fr(e^2, e) is not e^3");
    ensure!(all_zero(&rho.mul(&zeta).sub(&xi.pow(2)).coeffs(51)), "fr1 fails");
    let upper = series_inf(&series_abs(&xi), &series_abs(&zeta)).sub(&rho);
    ensure!((0..=50).all(|k| rho.kappa(k) >= 0 && upper.kappa(k) >= 0), "fr2 fails");

    let mut g = rng(12);
    for _ in 0..100 {
        let s = truncated(&mut g);
        let sq = s.mul(&s);
        for k in 0..20 {
            ensure!(s.kappa(k) == 0 || s.kappa(k + 1) == s.kappa(k), "kappa does not stabilize");
            ensure!(sq.kappa(2 * k) == 0 || sq.kappa(2 * k) == 1, "square with negative potential");
            ensure!((sq.kappa(2 * k) == 0) == (s.kappa(k) == 0), "square valuation mismatch");
        }
    }
    let mut pairs = 0;
    while pairs < 100 {
        let (x, y) = (truncated(&mut g), truncated(&mut g));
        let Some(v) = x.add(&y).valuation_within(10) else { continue };
        if x.add(&y).kappa(v) != 1 {
            continue;
        }
        match series_otf_split(&x, &y, v) {
            OtfSide::Left => ensure!(x.kappa(v) == 1, "Left without a positive x"),
            OtfSide::Right => ensure!(y.kappa(v) == 1, "Right without a positive y"),
            OtfSide::Unknown => return Err("undecided split of a positive sum".into()),
        }
        pairs += 1;
    }
    Ok("inverse, Newton, Fr, 100 series, 100 pairs".into())
}

fn complex_sqrt() -> Outcome {
    let mut g = rng(13);
    for _ in 0..50 {
        let (a, b) = (random_rational(&mut g, 10), random_rational(&mut g, 10));
        let c = complex_sqrt_cover(&a, &b).map_err(|e| e.to_string())?;
        ensure!(c.square_ok && c.sign_ok && c.identity_ok, "checks fail for {a} + {b}i");
        let (u, v) = (c.u.to_f64(), c.v.to_f64() * c.s as f64);
        ensure!((u * u - v * v - f64_of(&a)).abs() < 1e-9, "real part off for {a} + {b}i");
        ensure!((2.0 * u * v - f64_of(&b)).abs() < 1e-9, "imaginary part off for {a} + {b}i");
    }
    Ok("50 square roots".into())
}

fn mean_value() -> Outcome {
    let mut g = rng(14);
    let (l, w) = quartic_rule();
    for _ in 0..100 {
        let f = UniPoly::new((0..=4).map(|_| random_rational(&mut g, 10)).collect());
        let a = random_rational(&mut g, 10);
        let b = &a + rat(g.gen_range(1..=20), g.gen_range(1..=5));
        ensure!(check_mean_value(&f, &a, &b, &l, &w).map_err(|e| e.to_string())?, "fails for {f:?} on [{a}, {b}]");
    }
    Ok("100 quartics".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 14] = [
        ("virtual roots suite", virtual_roots_suite),
        ("closed forms for X^d - a", closed_forms),
        ("products of linear factors", product_case),
        ("Budan-Fourier brackets", budan_fourier),
        ("intermediate values", ivt),
        ("extrema against the Lipschitz grid", extrema),
        ("rescaling", rescale),
        ("quartic inequality system", quartic_inequalities),
        ("prover corpus and mutants", prover_corpus),
        ("collapse certificates", collapse),
        ("semipolynomials", semipoly),
        ("power series", series),
        ("complex square roots", complex_sqrt),
        ("mean value table", mean_value),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
