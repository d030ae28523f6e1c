//! One-shot commands over the `realalg` library with JSON results.
//!
//! Every exact number in a payload is a string `p/q` (or `p` for integers).
//! Real algebraic numbers are `{"rational": q}` or
//! `{"defpoly": f, "lo": a, "hi": b}`, and infinite bounds are `"-inf"`/`"+inf"`.

use std::collections::BTreeMap;
use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use realalg::numerics::parse_rational;
use realalg::prover::{
    check_collapse_certificate, prove_lgroup_rule, CollapseCertificate, CollapseVerdict, Proof, RingPresentation,
    Rule,
};
use realalg::semipoly::{to_sup_inf_nf, univar_semipoly_compare, LatticeTerm, SemiEq};
use realalg::series::{
    hensel_newton_root, series_abs, series_frac, series_inverse, series_sup, FracResult, LazySeries, SeriesPoly,
};
use realalg::vroots::{
    algebraic_to_json, budan_fourier_index, complex_sqrt_cover, interval_extrema, ivt_witness, sign_table,
    virtual_roots,
};
use realalg::{Error, ParseError, RealAlgebraic, Rational, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

/// What went wrong. Parse failures carry the byte offset inside the named
/// argument and the token the parser expected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub argument: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pos: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub found: Option<String>,
}

/// `payload` is set exactly when `status` is ok, `error` exactly when it is not.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(default)]
    pub diagnostics: Vec<String>,
}

impl CommandResult {
    pub fn ok(payload: Value) -> Self {
        CommandResult {
            status: Status::Ok,
            payload: Some(payload),
            error: None,
            diagnostics: Vec::new(),
        }
    }

    pub fn failure(error: ErrorInfo) -> Self {
        CommandResult {
            status: Status::Error,
            payload: None,
            diagnostics: vec![error.message.clone()],
            error: Some(error),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }

    pub fn exit_code(&self) -> i32 {
        if self.is_ok() {
            0
        } else {
            1
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("results always serialize")
    }
}

#[derive(Parser, Debug)]
#[command(name = "realalg", version, about = "Exact real algebra from the command line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesOp {
    Abs,
    Inv,
    Frac,
    Newton,
    Sup,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Virtual-roots triangle of a monic polynomial in x
    Vroots {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Sign-change index at a point and the virtual roots around it
    Budan {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// A zero between two points where f changes sign
    Ivt {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
    /// inf f, sup f and inf |f| on a closed interval
    Extrema {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
    /// Sign of f on the real line
    Signtable {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Square root of re + i*im with its factorization checks
    Csqrt {
        #[arg(long, allow_hyphen_values = true)]
        re: String,
        #[arg(long, allow_hyphen_values = true)]
        im: String,
    },
    /// Sup-inf normal form of a lattice-ordered ring term
    Nf {
        #[arg(allow_hyphen_values = true)]
        term: String,
    },
    /// Whether two univariate terms define the same function
    Semieq {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Decide a rule of lattice-ordered abelian groups
    Prove {
        #[arg(allow_hyphen_values = true)]
        rule: String,
    },
    /// Check a collapse certificate against a presentation (both JSON files)
    Checkcert { presentation: String, certificate: String },
    /// Coefficients of an operation on power series in e
    Series {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum)]
        op: SeriesOp,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        /// second operand of sup and frac
        #[arg(long = "with", allow_hyphen_values = true)]
        other: Option<String>,
    },
}

/// Failure of a command, tagged with the argument it came from.
struct Failure {
    argument: Option<String>,
    error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { argument: None, error }
    }
}

fn at_arg<T>(name: &str, r: Result<T, impl Into<Error>>) -> Result<T, Failure> {
    r.map_err(|e| Failure {
        argument: Some(name.to_string()),
        error: e.into(),
    })
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Parse(_) => "parse",
        Error::Precondition(_) | Error::VanishingDerivative { .. } => "precondition",
        Error::EmptyInterval => "empty-interval",
        Error::NoSignChange => "no-sign-change",
        Error::UnboundVariable(_) => "unbound-variable",
        Error::UnsupportedFragment(_) => "unsupported-fragment",
        Error::MalformedCertificate(_) => "malformed-certificate",
        Error::NotAUnit(_) => "not-a-unit",
        Error::OrderViolation { .. } => "order-violation",
        Error::Json(_) => "invalid-document",
    }
}

fn error_info(f: Failure) -> ErrorInfo {
    let (pos, expected, found) = match &f.error {
        Error::Parse(ParseError { pos, expected, found }) => (Some(*pos), Some(expected.clone()), Some(found.clone())),
        _ => (None, None, None),
    };
    let message = match &f.argument {
        Some(a) => format!("{a}: {}", f.error),
        None => f.error.to_string(),
    };
    ErrorInfo {
        kind: error_kind(&f.error).to_string(),
        message,
        argument: f.argument,
        pos,
        expected,
        found,
    }
}

fn poly(name: &str, text: &str) -> Result<UniPoly, Failure> {
    at_arg(name, text.parse::<UniPoly>())
}

fn rational(name: &str, text: &str) -> Result<Rational, Failure> {
    at_arg(name, parse_rational(text))
}

fn term(name: &str, text: &str) -> Result<LatticeTerm, Failure> {
    at_arg(name, text.parse::<LatticeTerm>())
}

fn strings(qs: &[Rational]) -> Vec<String> {
    qs.iter().map(ToString::to_string).collect()
}

/// Parses `argv` (program name first) without running anything.
pub fn parse(argv: impl IntoIterator<Item = impl Into<OsString> + Clone>) -> Result<Cli, clap::Error> {
    Cli::try_parse_from(argv)
}

/// Parses and runs one command. Usage errors become error results.
pub fn run(argv: impl IntoIterator<Item = impl Into<OsString> + Clone>) -> CommandResult {
    match parse(argv) {
        Ok(cli) => execute(&cli.command),
        Err(e) => CommandResult::failure(ErrorInfo {
            kind: "usage".to_string(),
            message: e.render().to_string().trim_end().to_string(),
            argument: None,
            pos: None,
            expected: None,
            found: None,
        }),
    }
}

pub fn execute(cmd: &Command) -> CommandResult {
    match dispatch(cmd) {
        Ok(payload) => CommandResult::ok(payload),
        Err(f) => CommandResult::failure(error_info(f)),
    }
}

fn dispatch(cmd: &Command) -> Result<Value, Failure> {
    match cmd {
        Command::Vroots { poly: p } => {
            let t = virtual_roots(&poly("poly", p)?)?;
            let mut doc = t.to_json();
            doc["top"] = json!(t.top().iter().map(algebraic_to_json).collect::<Vec<_>>());
            Ok(doc)
        }
        Command::Budan { poly: p, at } => {
            let t = virtual_roots(&poly("poly", p)?)?;
            Ok(budan_fourier_index(&t, &rational("at", at)?)?.to_json())
        }
        Command::Ivt { poly: p, from, to } => {
            let t = virtual_roots(&poly("poly", p)?)?;
            let a = RealAlgebraic::from_rational(rational("from", from)?);
            let b = RealAlgebraic::from_rational(rational("to", to)?);
            Ok(ivt_witness(&t, &a, &b)?.to_json())
        }
        Command::Extrema { poly: p, from, to } => {
            let t = virtual_roots(&poly("poly", p)?)?;
            let a = RealAlgebraic::from_rational(rational("from", from)?);
            let b = RealAlgebraic::from_rational(rational("to", to)?);
            Ok(interval_extrema(&t, &a, &b)?.to_json())
        }
        Command::Signtable { poly: p } => {
            let t = virtual_roots(&poly("poly", p)?)?;
            Ok(sign_table(&t).to_json())
        }
        Command::Csqrt { re, im } => {
            let (a, b) = (rational("re", re)?, rational("im", im)?);
            Ok(complex_sqrt_cover(&a, &b)?.to_json())
        }
        Command::Nf { term: t } => {
            let nf = to_sup_inf_nf(&term("term", t)?);
            Ok(json!({
                "vars": nf.vars(),
                "nf": nf.to_string(),
                "size": nf.size(),
            }))
        }
        Command::Semieq { left, right } => {
            let (a, b) = (term("left", left)?, term("right", right)?);
            Ok(match univar_semipoly_compare(&a, &b)? {
                SemiEq::Equal => json!({ "verdict": "equal" }),
                SemiEq::DiffersAt { witness, left, right } => json!({
                    "verdict": "differs",
                    "witness": witness.to_string(),
                    "left": left.to_string(),
                    "right": right.to_string(),
                }),
            })
        }
        Command::Prove { rule } => prove(rule),
        Command::Checkcert {
            presentation,
            certificate,
        } => checkcert(presentation, certificate),
        Command::Series { expr, op, depth, other } => series(expr, *op, *depth, other.as_deref()),
    }
}

fn prove(text: &str) -> Result<Value, Failure> {
    let rule: Rule = at_arg("rule", text.parse::<Rule>())?;
    Ok(match prove_lgroup_rule(&rule)? {
        Proof::Valid(tree) => {
            let names: Vec<String> = rule.variables().into_iter().collect();
            json!({
                "verdict": "valid",
                "rule": rule.to_string(),
                "splits": tree.splits(),
                "leaves": tree.leaves(),
                "depth": tree.depth(),
                "certificates_verified": tree.verify(),
                "tree": tree.render(&names).lines().collect::<Vec<_>>(),
            })
        }
        Proof::Counterexample(point) => {
            let point: BTreeMap<String, String> = point.into_iter().map(|(k, v)| (k, v.to_string())).collect();
            json!({
                "verdict": "counterexample",
                "rule": rule.to_string(),
                "point": point,
            })
        }
    })
}

fn read_file(name: &str, path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        argument: Some(name.to_string()),
        error: Error::Json(format!("cannot read `{path}`: {e}")),
    })
}

fn checkcert(pres_path: &str, cert_path: &str) -> Result<Value, Failure> {
    let pres = at_arg("presentation", RingPresentation::from_json(&read_file("presentation", pres_path)?))?;
    let cert = at_arg("certificate", CollapseCertificate::from_json(&read_file("certificate", cert_path)?, &pres))?;
    Ok(match check_collapse_certificate(&pres, &cert)? {
        CollapseVerdict::Accepted => json!({ "verdict": "accepted" }),
        CollapseVerdict::Rejected(residual) => json!({
            "verdict": "rejected",
            "residual": pres.show(&residual),
        }),
    })
}

fn series_payload(op: &str, depth: usize, s: &LazySeries) -> Value {
    json!({
        "op": op,
        "depth": depth,
        "status": "series",
        "coefficients": strings(&s.coeffs(depth)),
        "display": s.display(depth),
    })
}

fn series(expr: &str, op: SeriesOp, depth: usize, other: Option<&str>) -> Result<Value, Failure> {
    let operand = |name: &str, text: &str| at_arg(name, LazySeries::parse_polynomial(text));
    let second = || match other {
        Some(t) => operand("with", t),
        None => Err(Failure {
            argument: Some("with".to_string()),
            error: Error::Precondition("this operation takes a second series given with --with".to_string()),
        }),
    };
    Ok(match op {
        SeriesOp::Abs => series_payload("abs", depth, &series_abs(&operand("expr", expr)?)),
        SeriesOp::Inv => series_payload("inv", depth, &series_inverse(&operand("expr", expr)?)?),
        SeriesOp::Sup => series_payload("sup", depth, &series_sup(&operand("expr", expr)?, &second()?)),
        SeriesOp::Frac => match series_frac(&operand("expr", expr)?, &second()?, depth)? {
            FracResult::Series(r) => series_payload("frac", depth, &r),
            FracResult::Unknown { prefix } => json!({
                "op": "frac",
                "depth": depth,
                "status": "unknown",
                "coefficients": strings(&prefix),
            }),
        },
        SeriesOp::Newton => {
            let p = at_arg("expr", SeriesPoly::parse(expr))?;
            series_payload("newton", depth, &hensel_newton_root(&p)?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_failures_keep_their_position() {
        let info = error_info(Failure {
            argument: Some("poly".into()),
            error: Error::Parse(ParseError::new(3, "a term", "`)`")),
        });
        assert_eq!((info.kind.as_str(), info.pos), ("parse", Some(3)));
        assert_eq!(info.expected.as_deref(), Some("a term"));
        assert!(info.message.starts_with("poly: "));
    }

    #[test]
    fn errors_have_no_payload() {
        let r = run(["realalg", "csqrt", "--re", "x", "--im", "1"]);
        assert_eq!(r.status, Status::Error);
        assert!(r.payload.is_none() && r.error.is_some());
        assert_eq!(r.exit_code(), 1);
        let r = run(["realalg", "csqrt", "--re", "-3", "--im", "4"]);
        assert!(r.is_ok() && r.error.is_none());
        assert_eq!(r.exit_code(), 0);
    }
}
