//! The `denv` command line: argument parsing, dispatch and reports.
//!
//! Exit codes: 0 on success, 2 when the input does not parse, 3 for invalid caps or
//! parameters.

mod format;
mod parse;
mod report;

use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::algebra::{Field, PointP1, RatFun, Scalar};
use crate::dynamics::{repelling_point_avoiding, OrbitCaps};
use crate::error::Error;
use crate::families::{self, FamilySpec, LattesParams, Normalization};
use crate::jets::{jet_compose, jet_identity, jet_invert, jet_of_map, Jet, MAX_JET_ORDER};
use crate::koenigs::{self, Koenigs, DEFAULT_SERIES_ORDER};
use crate::solver::{classify, SolveCaps, DEFAULT_MAX_DEN_DEGREE};

pub use format::{format_poly, format_ratfun};
pub use parse::{parse_ratfun, parse_scalar, MAX_EXPONENT};
pub use report::{classification_report, Report};

#[derive(Debug, Parser)]
#[command(name = "denv", version, about = "Differential invariants of rational maps of the Riemann sphere")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search for groupoid equations solved by a map and classify it.
    Classify(ClassifyArgs),
    /// Print a member of an exceptional family, or a known coefficient.
    Family(FamilyArgs),
    /// Koenigs linearizer at a repelling fixed point.
    Koenigs(KoenigsArgs),
    /// Jet arithmetic.
    Jets(JetsArgs),
}

#[derive(Debug, Args)]
pub struct FieldArg {
    /// Coefficient field: rational, gauss or sqrt:<d>.
    #[arg(long, default_value = "rational")]
    pub field: String,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// The map, e.g. "x^2 - 2".
    pub map: String,
    #[command(flatten)]
    pub field: FieldArg,
    #[arg(long, default_value_t = DEFAULT_MAX_DEN_DEGREE)]
    pub max_den_deg: usize,
    /// Numerator degree allowance above the denominator degree (default: equal to it).
    #[arg(long)]
    pub extra_num_deg: Option<usize>,
    /// Pole multiplicity at candidate points (default: 1 for G2, 2 for G3).
    #[arg(long)]
    pub pole_mult: Option<u32>,
    /// Largest postcritical support before giving up.
    #[arg(long, default_value_t = OrbitCaps::default().max_support)]
    pub orbit_cap: usize,
    /// Height budget in bits for new postcritical points, above the map's own height.
    #[arg(long, default_value_t = OrbitCaps::default().height_bits)]
    pub height_cap: u64,
    /// G1 exponents range over ±1..=±N.
    #[arg(long, default_value_t = crate::equations::DEFAULT_N_MAX)]
    pub n_range: i32,
    #[arg(long)]
    pub json: bool,
    /// Include wall-clock timings in the report (makes output nondeterministic).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[command(subcommand)]
    pub kind: FamilyKind,
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum FamilyKind {
    /// x^k.
    Monomial {
        #[arg(allow_hyphen_values = true)]
        k: i64,
    },
    /// Chebyshev polynomial of degree k.
    Chebyshev {
        k: u32,
        /// classical (T_k) or dilated (2 T_k(x/2)).
        #[arg(long, default_value = "classical")]
        normalization: String,
    },
    /// Multiplication by k on y^2 = 4x^3 - g2 x - g3, in the x coordinate.
    Lattes {
        #[arg(long, allow_hyphen_values = true)]
        g2: String,
        #[arg(long, allow_hyphen_values = true)]
        g3: String,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Known affine coefficient for a case 1..7 of the table.
    Mu {
        case: u8,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        g2: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        g3: String,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[command(flatten)]
        field: FieldArg,
    },
}

#[derive(Debug, Args)]
pub struct KoenigsArgs {
    pub map: String,
    /// Fixed point (default: the first repelling fixed point found).
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Truncation order of the series.
    #[arg(long, default_value_t = DEFAULT_SERIES_ORDER)]
    pub order: usize,
    /// Working precision in bits for numeric points.
    #[arg(long, default_value_t = crate::algebra::bigfloat::DEFAULT_PRECISION)]
    pub precision: usize,
    #[command(flatten)]
    pub field: FieldArg,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct JetsArgs {
    #[command(subcommand)]
    pub op: JetOp,
    #[arg(long, global = true, default_value = "rational")]
    pub field: String,
    #[arg(long, global = true)]
    pub json: bool,
}

/// Jets are written `(x, y, y1, .., yk)`.
#[derive(Debug, Subcommand)]
pub enum JetOp {
    /// The jet of `b` after `a`.
    Compose {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    Invert {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    Identity {
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long)]
        order: usize,
    },
    /// The jet of a map at a point.
    Of {
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long)]
        order: usize,
    },
}

/// What a command printed and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } | Error::Field(_) | Error::ZeroDenominator => 2,
        _ => 3,
    }
}

fn field_of(tag: &str) -> Result<Field, Error> {
    Field::parse(tag).map_err(|e| Error::Caps(e.to_string()))
}

/// Parses and runs a command line, returning output instead of printing it.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn dispatch(cmd: Command) -> Result<String, Error> {
    match cmd {
        Command::Classify(a) => cmd_classify(&a),
        Command::Family(a) => cmd_family(&a),
        Command::Koenigs(a) => cmd_koenigs(&a),
        Command::Jets(a) => cmd_jets(&a),
    }
}

fn json_line<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

pub fn cmd_classify(a: &ClassifyArgs) -> Result<String, Error> {
    let field = field_of(&a.field.field)?;
    let caps = SolveCaps {
        max_den_degree: a.max_den_deg,
        extra_num_degree: a.extra_num_deg,
        pole_mult: a.pole_mult,
        orbit: OrbitCaps { max_support: a.orbit_cap, height_bits: a.height_cap },
        n_max: a.n_range,
    };
    caps.validate()?;
    let r = parse_ratfun(&a.map, field)?;
    let start = Instant::now();
    let c = classify(&r, &caps)?;
    let elapsed = start.elapsed();
    let mut report = classification_report(&a.map, field, &c);
    if a.timings {
        report.timings_ms.insert("classify".into(), elapsed.as_millis() as u64);
    }
    Ok(if a.json { json_line(&report) } else { report.to_text() })
}

fn scalar_arg(src: &str, field: Field) -> Result<Scalar, Error> {
    parse_scalar(src, field).map_err(|e| Error::Parameter(e.to_string()))
}

pub fn cmd_family(a: &FamilyArgs) -> Result<String, Error> {
    let (label, r, flag) = match &a.kind {
        FamilyKind::Monomial { k } => (format!("monomial {k}"), families::monomial(*k)?, None),
        FamilyKind::Chebyshev { k, normalization } => {
            let n = Normalization::parse(normalization)?;
            (format!("chebyshev {k} {n}"), families::chebyshev(*k, n)?, None)
        }
        FamilyKind::Lattes { g2, g3, k, field } => {
            let field = field_of(&field.field)?;
            let p = LattesParams::new(scalar_arg(g2, field)?, scalar_arg(g3, field)?, *k)?;
            (format!("lattes g2={} g3={} k={k}", p.g2, p.g3), families::lattes(&p)?, None)
        }
        FamilyKind::Mu { case, g2, g3, k, field } => {
            let field = field_of(&field.field)?;
            let spec = FamilySpec { case: *case, k: *k, g2: scalar_arg(g2, field)?, g3: scalar_arg(g3, field)? };
            let m = families::known_mu(&spec)?;
            let flag = match m.source {
                families::MuSource::Verified => "verified",
                families::MuSource::PaperVerbatim => "paper-verbatim, convention-adjusted",
            };
            (format!("mu case {case}"), m.mu, Some(flag))
        }
    };
    let text = format_ratfun(&r);
    if a.json {
        let mut v = serde_json::json!({ "family": label, "map": text, "degree": r.degree() });
        if let Some(f) = flag {
            v["source"] = serde_json::Value::from(f);
        }
        Ok(json_line(&v))
    } else {
        Ok(match flag {
            Some(f) => format!("{text}\nsource: {f}\n"),
            None => format!("{text}\n"),
        })
    }
}

pub fn cmd_koenigs(a: &KoenigsArgs) -> Result<String, Error> {
    let field = field_of(&a.field.field)?;
    if a.order < 1 || a.precision < crate::algebra::bigfloat::MIN_PRECISION {
        return Err(Error::Caps(format!(
            "order must be at least 1 and precision at least {} bits",
            crate::algebra::bigfloat::MIN_PRECISION
        )));
    }
    let r = parse_ratfun(&a.map, field)?;
    let k = match &a.point {
        Some(p) => Koenigs::Exact(koenigs::koenigs_at(&r, &scalar_arg(p, field)?, a.order)?),
        None => {
            let avoid = crate::algebra::Divisor::infinity();
            let fp = repelling_point_avoiding(&r, &avoid, field, 1, a.precision)?;
            koenigs::koenigs_series(&r, &fp, a.order, a.precision)?
        }
    };
    let (point, lambda, coeffs, residual) = match &k {
        Koenigs::Exact(s) => (
            s.point.to_string(),
            s.multiplier.to_string(),
            s.coefficients().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            koenigs::linearization_residual(&r, s)?,
        ),
        Koenigs::Numeric(s) => (
            s.point.to_string(),
            s.multiplier.to_string(),
            s.coefficients().iter().map(|c| c.to_string()).collect(),
            koenigs::linearization_residual(&r, s)?,
        ),
    };
    let exact = matches!(k, Koenigs::Exact(_));
    if a.json {
        let v = serde_json::json!({
            "map": format_ratfun(&r),
            "point": point,
            "multiplier": lambda,
            "order": a.order,
            "exact": exact,
            "coefficients": coeffs,
            "residual": residual,
        });
        return Ok(json_line(&v));
    }
    Ok(format!(
        "map: {}\npoint: {point}\nmultiplier: {lambda}\nmode: {}\ncoefficients: {}\nresidual: {residual}\n",
        format_ratfun(&r),
        if exact { "exact" } else { "numeric" },
        coeffs.join(", ")
    ))
}

/// Reads `(x, y, y1, .., yk)`.
pub fn parse_jet(src: &str, field: Field) -> Result<Jet, Error> {
    let inner = src
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::Syntax { position: 0, message: "a jet is written (x, y, y1, ..)".into() })?;
    let parts: Vec<Scalar> = inner.split(',').map(|p| parse_scalar(p, field)).collect::<Result<_, _>>()?;
    if parts.len() < 3 {
        return Err(Error::InvalidJet("a jet needs a source, a target and a first derivative".into()));
    }
    if parts.len() - 2 > MAX_JET_ORDER {
        return Err(Error::InvalidJet(format!("order above {MAX_JET_ORDER}")));
    }
    Jet::new(parts[0].clone(), parts[1].clone(), parts[2..].to_vec())
}

pub fn cmd_jets(a: &JetsArgs) -> Result<String, Error> {
    let field = field_of(&a.field)?;
    let check_order = |n: usize| {
        if n == 0 || n > MAX_JET_ORDER {
            Err(Error::Caps(format!("jet order must lie in 1..={MAX_JET_ORDER}")))
        } else {
            Ok(())
        }
    };
    let j = match &a.op {
        JetOp::Compose { a: x, b } => jet_compose(&parse_jet(x, field)?, &parse_jet(b, field)?)?,
        JetOp::Invert { a: x } => jet_invert(&parse_jet(x, field)?),
        JetOp::Identity { at, order } => {
            check_order(*order)?;
            jet_identity(scalar_arg(at, field)?, *order)
        }
        JetOp::Of { map, at, order } => {
            check_order(*order)?;
            let r: RatFun = parse_ratfun(map, field)?;
            jet_of_map(&r, &PointP1::Finite(scalar_arg(at, field)?), *order)?
        }
    };
    if a.json {
        let v = serde_json::json!({
            "source": j.source().to_string(),
            "target": j.target().to_string(),
            "derivatives": j.derivs().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        });
        Ok(json_line(&v))
    } else {
        Ok(format!("{j}\n"))
    }
}
