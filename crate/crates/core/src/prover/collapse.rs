//! Checking algebraic collapse certificates `s + p + z = 0` for a
//! presentation of an ordered ring by generators and sign conditions.
//!
//! `s` is a product of members of `gt0`, `p` a sum of `c * q^2 * g1 * ... * gk`
//! with `c > 0` and each `gi` in `gt0` or `geq0` (indexed in that
//! concatenated order), and `z` a sum of `m * e` with `e` in `eq0`.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::rational::{format_rational, parse_rational};
use crate::numerics::Rational;
use crate::semipoly::{polynomial_of, LatticeTerm, MPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    pub generators: Vec<String>,
    pub gt0: Vec<MPoly>,
    pub geq0: Vec<MPoly>,
    pub eq0: Vec<MPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareTerm {
    pub coeff: Rational,
    pub square: MPoly,
    /// indices into `gt0` followed by `geq0`
    pub gens: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqTerm {
    pub mult: MPoly,
    pub idx: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseCertificate {
    /// indices into `gt0`, with repetition; empty means `s = 1`
    pub s: Vec<usize>,
    pub p: Vec<SquareTerm>,
    pub z: Vec<EqTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CollapseVerdict {
    Accepted,
    /// the nonzero value of `s + p + z`
    Rejected(MPoly),
}

#[derive(Serialize, Deserialize)]
struct PresentationDoc {
    generators: Vec<String>,
    #[serde(default)]
    gt0: Vec<String>,
    #[serde(default)]
    geq0: Vec<String>,
    #[serde(default)]
    eq0: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn value(&self) -> Result<Rational> {
        match self {
            Number::Int(n) => Ok(Rational::from_integer((*n).into())),
            Number::Text(s) => Ok(parse_rational(s)?),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SquareDoc {
    coeff: Number,
    square: String,
    #[serde(default)]
    gens: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct EqDoc {
    mult: String,
    idx: usize,
}

#[derive(Serialize, Deserialize)]
struct CertificateDoc {
    #[serde(default)]
    s: Vec<usize>,
    #[serde(default)]
    p: Vec<SquareDoc>,
    #[serde(default)]
    z: Vec<EqDoc>,
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Json(e.to_string())
}

fn poly(text: &str, vars: &[String]) -> Result<MPoly> {
    let t: LatticeTerm = text.parse()?;
    polynomial_of(&t, vars)
}

impl RingPresentation {
    /// Polynomials are given in the term grammar over `generators`.
    pub fn new(generators: &[&str], gt0: &[&str], geq0: &[&str], eq0: &[&str]) -> Result<Self> {
        let generators: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let parse = |xs: &[&str]| xs.iter().map(|s| poly(s, &generators)).collect::<Result<Vec<_>>>();
        Ok(RingPresentation {
            gt0: parse(gt0)?,
            geq0: parse(geq0)?,
            eq0: parse(eq0)?,
            generators: generators.clone(),
        })
    }

    /// `{"generators": [...], "gt0": [...], "geq0": [...], "eq0": [...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PresentationDoc = serde_json::from_str(text).map_err(json_err)?;
        let g: Vec<&str> = doc.generators.iter().map(String::as_str).collect();
        fn refs(v: &[String]) -> Vec<&str> {
            v.iter().map(String::as_str).collect()
        }
        RingPresentation::new(&g, &refs(&doc.gt0), &refs(&doc.geq0), &refs(&doc.eq0))
    }

    pub fn to_json(&self) -> String {
        let show = |v: &[MPoly]| v.iter().map(|p| self.show(p)).collect();
        let doc = PresentationDoc {
            generators: self.generators.clone(),
            gt0: show(&self.gt0),
            geq0: show(&self.geq0),
            eq0: show(&self.eq0),
        };
        serde_json::to_string(&doc).expect("plain data serializes")
    }

    /// A polynomial in the term grammar over the generators.
    pub fn show(&self, p: &MPoly) -> String {
        p.display_with(&self.generators).to_string()
    }

    pub fn parse_poly(&self, text: &str) -> Result<MPoly> {
        poly(text, &self.generators)
    }

    fn cone_generator(&self, i: usize) -> Result<&MPoly> {
        self.gt0
            .get(i)
            .or_else(|| self.geq0.get(i.wrapping_sub(self.gt0.len())))
            .ok_or_else(|| {
                Error::MalformedCertificate(format!(
                    "cone generator {i} does not exist ({} strict, {} non-strict)",
                    self.gt0.len(),
                    self.geq0.len()
                ))
            })
    }
}

impl CollapseCertificate {
    /// `{"s": [...], "p": [{"coeff", "square", "gens"}], "z": [{"mult", "idx"}]}`,
    /// with polynomials over the generators of `pres`.
    pub fn from_json(text: &str, pres: &RingPresentation) -> Result<Self> {
        let doc: CertificateDoc = serde_json::from_str(text).map_err(json_err)?;
        let p = doc
            .p
            .iter()
            .map(|t| {
                Ok(SquareTerm {
                    coeff: t.coeff.value()?,
                    square: pres.parse_poly(&t.square)?,
                    gens: t.gens.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let z = doc
            .z
            .iter()
            .map(|t| {
                Ok(EqTerm {
                    mult: pres.parse_poly(&t.mult)?,
                    idx: t.idx,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CollapseCertificate { s: doc.s, p, z })
    }

    pub fn to_json(&self, pres: &RingPresentation) -> String {
        let doc = CertificateDoc {
            s: self.s.clone(),
            p: self
                .p
                .iter()
                .map(|t| SquareDoc {
                    coeff: Number::Text(format_rational(&t.coeff)),
                    square: pres.show(&t.square),
                    gens: t.gens.clone(),
                })
                .collect(),
            z: self
                .z
                .iter()
                .map(|t| EqDoc {
                    mult: pres.show(&t.mult),
                    idx: t.idx,
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("plain data serializes")
    }
}

/// Expands `s + p + z` and accepts exactly when it is the zero polynomial.
pub fn check_collapse_certificate(pres: &RingPresentation, cert: &CollapseCertificate) -> Result<CollapseVerdict> {
    let n = pres.generators.len();
    let malformed = |what: String| Error::MalformedCertificate(what);
    let mut s = MPoly::one(n);
    for &i in &cert.s {
        let g = pres
            .gt0
            .get(i)
            .ok_or_else(|| malformed(format!("s cites gt0[{i}], which does not exist")))?;
        s = &s * g;
    }
    let mut total = s;
    for t in &cert.p {
        if !t.coeff.is_positive() {
            return Err(malformed(format!("coefficient {} is not positive", format_rational(&t.coeff))));
        }
        let mut term = (&t.square * &t.square).scale(&t.coeff);
        for &g in &t.gens {
            term = &term * pres.cone_generator(g)?;
        }
        total = &total + &term;
    }
    for t in &cert.z {
        let e = pres
            .eq0
            .get(t.idx)
            .ok_or_else(|| malformed(format!("z cites eq0[{}], which does not exist", t.idx)))?;
        total = &total + &(&t.mult * e);
    }
    Ok(if total.is_zero() {
        CollapseVerdict::Accepted
    } else {
        CollapseVerdict::Rejected(total)
    })
}
