//! Command-line front end. Every subcommand produces one JSON value; the
//! text rendering prints the same fields.

mod selftest;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::distributions::{verify_quadratic, DistributionSeries};
use crate::error::{Error, Result};
use crate::expr::{parse_kernel, Expr};
use crate::fgl::FormalGroupLaw;
use crate::quot::{derived_kernel, normalized_pushpull, Composition};
use crate::ring::{json::RingElementJson, make_model, LineBundleMonomial, Model, RingElement};
use crate::shuffle::{
    kernel_block, rn_inverse, rn_map, shuffle_product, verify_genus_relation, GeneratorConvention, Kernel, ShuffleElement,
    ShuffleElementJson,
};
use crate::surface::chern_report;

pub use selftest::{selftest, CheckResult, SelftestReport};

#[derive(Parser, Debug)]
#[command(name = "gshuffle", version, about = "Exact shuffle-algebra computations on a curve", allow_negative_numbers = true)]
pub struct Cli {
    /// Genus of the curve.
    #[arg(long, global = true, default_value_t = 1)]
    pub genus: u32,
    /// additive, multiplicative or universal:N.
    #[arg(long, global = true, default_value = "additive", value_parser = parse_theory)]
    pub theory: FormalGroupLaw,
    /// Number of curve factors for plain expressions.
    #[arg(long, global = true)]
    pub factors: Option<usize>,
    /// Degree blocks, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub parts: Option<Vec<usize>>,
    /// gc, gcnorm, or an expression in `z` and `Delta`.
    #[arg(long, global = true, default_value = "gc")]
    pub kernel: String,
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate an expression in the ring of `C^d`.
    Eval { expr: String },
    /// Shuffle product of two symmetric elements.
    Shuffle { f: String, h: String },
    /// Check the exchange relation for two line-bundle monomials.
    VerifyQuadratic {
        #[arg(long)]
        l1: String,
        #[arg(long)]
        l2: String,
    },
    /// Check the cubic relation between generators `e_i` and `e_j`.
    #[command(allow_negative_numbers = true)]
    VerifyGenusRelation {
        i: i32,
        j: i32,
        #[arg(long, default_value = "dual-euler")]
        convention: String,
    },
    /// Derive the kernel block of a composition from localization weights.
    DeriveKernel,
    /// Apply or invert the renormalization map.
    Rn { mode: RnMode, expr: String },
    /// Numerical invariants of a framed sheaf of rank `n` and length `d` on a genus `g` curve.
    #[command(allow_negative_numbers = true)]
    Chern { n: i64, d: i64, g: u32 },
    /// Run the invariant suite.
    Selftest,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RnMode {
    Apply,
    Invert,
}

fn parse_theory(s: &str) -> std::result::Result<FormalGroupLaw, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Result of a subcommand: the JSON value, its text rendering and whether
/// every identity it checked holds.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub holds: bool,
}

fn element_json(x: &RingElement) -> Value {
    serde_json::to_value(RingElementJson::from_element(x)).expect("serializable")
}

fn shuffle_json(x: &ShuffleElement) -> Value {
    serde_json::to_value(ShuffleElementJson::from_element(x)).expect("serializable")
}

fn series_json(s: &DistributionSeries) -> Value {
    Value::Array(
        s.components()
            .iter()
            .map(|c| {
                let pins: serde_json::Map<String, Value> =
                    c.pins.iter().map(|(v, x)| (v.to_string(), element_json(x))).collect();
                json!({ "pins": pins, "weight": element_json(&c.weight) })
            })
            .collect(),
    )
}

fn series_text(s: &DistributionSeries) -> String {
    if s.is_zero() {
        return "0".into();
    }
    s.components()
        .iter()
        .map(|c| {
            let pins: Vec<String> = c.pins.iter().map(|(v, x)| format!("{v} = {x}")).collect();
            format!("delta({}) * ({})", pins.join(", "), c.weight)
        })
        .collect::<Vec<_>>()
        .join("\n  + ")
}

fn model_of(cli: &Cli, factors: usize) -> Model {
    make_model(cli.genus, factors, cli.theory.clone(), &[])
}

fn symmetric_operand(cli: &Cli, src: &str, degree: Option<usize>, kernel: &Kernel) -> Result<ShuffleElement> {
    let e = Expr::parse(src)?;
    let parts = match degree {
        Some(d) if !e.contains_shuffle() => vec![d],
        _ => e.default_parts(None),
    };
    ShuffleElement::new(e.eval(&model_of(cli, 0), &parts, kernel)?)
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let kernel = parse_kernel(&cli.kernel)?;
    match &cli.command {
        Command::Eval { expr } => {
            let e = Expr::parse(expr)?;
            let parts = match &cli.parts {
                Some(p) => p.clone(),
                None => e.default_parts(cli.factors),
            };
            let x = e.eval(&model_of(cli, 0), &parts, &kernel)?;
            Ok(Outcome { json: element_json(&x), text: x.to_string(), holds: true })
        }
        Command::Shuffle { f, h } => {
            let (df, dh) = match cli.parts.as_deref() {
                Some([a, b]) => (Some(*a), Some(*b)),
                Some(p) => return Err(Error::Domain(format!("shuffle takes two degree blocks, got {p:?}"))),
                None => (None, None),
            };
            let f = symmetric_operand(cli, f, df.or(cli.factors), &kernel)?;
            let h = symmetric_operand(cli, h, dh.or(cli.factors), &kernel)?;
            let x = shuffle_product(&f, &h, &kernel)?;
            Ok(Outcome { json: shuffle_json(&x), text: x.value().to_string(), holds: true })
        }
        Command::Rn { mode, expr } => {
            let f = symmetric_operand(cli, expr, cli.factors, &kernel)?;
            let x = match mode {
                RnMode::Apply => rn_map(&f)?,
                RnMode::Invert => rn_inverse(&f)?,
            };
            Ok(Outcome { json: shuffle_json(&x), text: x.value().to_string(), holds: true })
        }
        Command::VerifyQuadratic { l1, l2 } => {
            let m1: LineBundleMonomial = l1.parse()?;
            let m2: LineBundleMonomial = l2.parse()?;
            let r = verify_quadratic(&model_of(cli, 2), &m1, &m2, &kernel)?;
            let holds = r.holds();
            let json = json!({
                "l1": m1.to_string(),
                "l2": m2.to_string(),
                "kernel": kernel.name(),
                "genus": cli.genus,
                "theory": cli.theory.theory_name(),
                "holds": holds,
                "reduction_holds": r.reduction_holds,
                "lhs": series_json(&r.lhs),
                "rhs": series_json(&r.rhs),
                "residual": series_json(&r.residual),
            });
            let text = format!(
                "holds: {holds}\nreduction_holds: {}\nlhs: {}\nrhs: {}\nresidual: {}",
                r.reduction_holds,
                series_text(&r.lhs),
                series_text(&r.rhs),
                series_text(&r.residual)
            );
            Ok(Outcome { json, text, holds })
        }
        Command::VerifyGenusRelation { i, j, convention } => {
            let conv: GeneratorConvention = convention.parse()?;
            let r = verify_genus_relation(&model_of(cli, 1), *i, *j, conv)?;
            let holds = r.holds();
            let json = json!({
                "i": i, "j": j, "genus": cli.genus, "convention": convention,
                "holds": holds, "residual": shuffle_json(&r.residual),
            });
            let text = format!("holds: {holds}\nresidual: {}", r.residual.value());
            Ok(Outcome { json, text, holds })
        }
        Command::DeriveKernel => {
            let parts = cli.parts.clone().ok_or_else(|| Error::Domain("derive-kernel needs --parts".into()))?;
            let c = Composition::new(&parts)?;
            let m = model_of(cli, c.total());
            let dk = derived_kernel(&c, &m)?;
            let norm = normalized_pushpull(&c, &m)?;
            let norm_expected = kernel_block(&Kernel::gc_norm(), &m, &parts)?;
            let equal = dk.equal();
            let normalized_equal = norm == norm_expected;
            let holds = equal && normalized_equal;
            let json = json!({
                "parts": parts, "genus": cli.genus, "theory": cli.theory.theory_name(),
                "derived": element_json(&dk.derived), "expected": element_json(&dk.expected),
                "equal": equal, "normalized_equal": normalized_equal,
            });
            let text = format!(
                "derived: {}\nexpected: {}\nequal: {equal}\nnormalized_equal: {normalized_equal}",
                dk.derived, dk.expected
            );
            Ok(Outcome { json, text, holds })
        }
        Command::Chern { n, d, g } => {
            let r = chern_report(*n, *d, *g)?;
            let i = &r.invariants;
            let text = format!(
                "rank: {}\nc1_f: {}\nc1_D: {}\nc2: {}\nch: {}",
                i.rank, i.c1_f, i.c1_d, i.c2, r.ch.text
            );
            Ok(Outcome { json: to_value(&r), text, holds: r.holds })
        }
        Command::Selftest => {
            let r = selftest(cli.seed);
            let text = r
                .checks
                .iter()
                .map(|c| format!("{} {} ({} cases)", if c.passed { "ok  " } else { "FAIL" }, c.name, c.cases))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Outcome { json: to_value(&r), text, holds: r.passed })
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code: 0 when every identity holds, 1 when a residual is
/// nonzero, 2 on usage or domain errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Error::Domain(e.to_string())),
        },
        None => execute(&cli),
    };
    match result {
        Ok(o) => {
            if cli.json {
                let _ = writeln!(out, "{}", o.json);
            } else {
                let _ = writeln!(out, "{}", o.text);
            }
            if o.holds {
                0
            } else {
                1
            }
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "error": e.to_string() }));
            }
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
