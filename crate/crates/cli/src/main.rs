use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use suppcone::binom_ideal::{dickson_decompose, shifts_from, Shift};
use suppcone::charp::{self, fq_poly_from_json, fq_poly_to_json, Field, FqPoly};
use suppcone::gapcheck::gap_verify;
use suppcone::num::{q_from_json, QuadNum};
use suppcone::orders::{refine_quad_weight, WeightOrder};
use suppcone::registry::{run_all, run_fixture, FIXTURE_NAMES};
use suppcone::support::{self, SupportSpec};
use suppcone::{plot, Cone, Exec, RatVec};

#[derive(Parser)]
#[command(name = "suppcone", version, about = "Support cones, Dickson decompositions and Artin-Schreier roots")]
struct Cli {
    /// Input JSON file, or - for stdin.
    #[arg(long, short, global = true, default_value = "-")]
    input: String,
    /// Output file, or - for stdout.
    #[arg(long, short, global = true, default_value = "-")]
    output: String,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Canonicalise a cone given by generators or facets.
    Cone {
        #[arg(long)]
        dual: bool,
    },
    /// Minimal translates of an intersection of shifted cones.
    Dickson,
    /// Support cone, its dual, tau' conditions and tau tilde of a spec.
    Tau,
    /// Finite set C with the support inside C + tau dual.
    Normalize,
    /// Truncated root of T^p - T = a.
    Asroot {
        #[arg(long, default_value_t = 5)]
        depth: u32,
    },
    /// Weighted gap bound on a truncated root.
    Gap,
    /// Non-polyhedrality diagnostic on nested planar truncations.
    Diagnose {
        /// Use only the first N truncations.
        #[arg(long)]
        levels: Option<usize>,
    },
    /// Closure checks for a class of supports under an order.
    Families,
    /// Run a bundled worked example and compare with its expected values.
    CheckExample {
        name: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Planar support as CSV, with an optional SVG figure.
    Plot {
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Terms sampled per infinite family.
        #[arg(long, default_value_t = 12)]
        levels: u32,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(#[from] io::Error),
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn read_input(path: &str) -> Result<Value, CliError> {
    let mut text = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = fs::read_to_string(path)?;
    }
    serde_json::from_str(&text).map_err(input_err)
}

fn parse<T: for<'de> Deserialize<'de>>(v: Value) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(input_err)
}

fn write_text(path: &str, text: &str) -> Result<(), CliError> {
    if path == "-" {
        io::stdout().write_all(text.as_bytes())?;
    } else {
        fs::write(path, text)?;
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialise");
    s.push('\n');
    s
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialise")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DicksonInput {
    shifts: Vec<Shift>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagnoseInput {
    truncations: Vec<Vec<RatVec>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AsrootInput {
    a: Value,
    #[serde(default)]
    weight: Option<Vec<QuadNum>>,
    #[serde(default)]
    order: Option<WeightOrder>,
    #[serde(default)]
    branch: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GapInput {
    series: Value,
    coefficients: Vec<Value>,
    weight: RatVec,
    #[serde(default)]
    guaranteed_level: Option<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamiliesInput {
    spec: SupportSpec,
    #[serde(default)]
    weight: Option<Vec<QuadNum>>,
    #[serde(default)]
    order: Option<WeightOrder>,
    #[serde(default = "default_samples")]
    samples: usize,
    #[serde(default)]
    seed: u64,
}

fn default_samples() -> usize {
    32
}

fn order_from(weight: Option<Vec<QuadNum>>, order: Option<WeightOrder>) -> Result<WeightOrder, CliError> {
    match (weight, order) {
        (Some(w), None) => refine_quad_weight(&w).map_err(input_err),
        (None, Some(o)) => Ok(o),
        _ => Err(CliError::Input("give exactly one of \"weight\" or \"order\"".into())),
    }
}

fn poly_in(field: Option<Field>, v: &Value) -> Result<(Field, FqPoly), CliError> {
    let (f, a) = fq_poly_from_json(v).map_err(input_err)?;
    if field.is_some_and(|g| g != f) {
        return Err(CliError::Input("all polynomials must share one coefficient field".into()));
    }
    Ok((f, a))
}

fn root_json(f: Field, r: &charp::AsRoot) -> Value {
    json!({
        "depth": r.depth,
        "root": fq_poly_to_json(f, &r.root),
        "residual": fq_poly_to_json(f, &r.residual),
        "predicted_residual": fq_poly_to_json(f, &r.predicted_residual),
        "certified": r.certified(),
        "root_set_size": r.root_set_size,
        "constant_shift": r.constant_shift.as_ref().map(|c| c.coeffs().to_vec()),
    })
}

/// Runs one command; `Ok(false)` means a fixture mismatch.
fn run(cli: Cli) -> Result<bool, CliError> {
    let out = &cli.output;
    let value = match cli.cmd {
        Cmd::CheckExample { name, all } => {
            let reports = match (name, all) {
                (None, true) => run_all(Exec::default()),
                (Some(n), false) => vec![run_fixture(&n)],
                _ => {
                    return Err(CliError::Input(format!(
                        "give a fixture name or --all; known fixtures: {}",
                        FIXTURE_NAMES.join(", ")
                    )))
                }
            };
            let reports = reports.into_iter().collect::<Result<Vec<_>, _>>().map_err(input_err)?;
            let ok = reports.iter().all(|r| r.matches);
            let v = if reports.len() == 1 {
                to_value(&reports[0])
            } else {
                to_value(&reports)
            };
            write_text(out, &pretty(&v))?;
            return Ok(ok);
        }
        Cmd::Plot { svg, levels } => {
            let spec: SupportSpec = parse(read_input(&cli.input)?)?;
            let p = plot::render(&spec, levels).map_err(input_err)?;
            if let Some(path) = svg {
                fs::write(path, &p.svg)?;
            }
            write_text(out, &p.csv)?;
            return Ok(true);
        }
        Cmd::Cone { dual } => {
            let c: Cone = parse(read_input(&cli.input)?)?;
            to_value(&if dual { c.dual() } else { c })
        }
        Cmd::Dickson => {
            let i: DicksonInput = parse(read_input(&cli.input)?)?;
            to_value(&dickson_decompose(&shifts_from(&i.shifts)).map_err(input_err)?)
        }
        Cmd::Tau => {
            let s: SupportSpec = parse(read_input(&cli.input)?)?;
            to_value(&support::tau_result(&s).map_err(input_err)?)
        }
        Cmd::Normalize => {
            let s: SupportSpec = parse(read_input(&cli.input)?)?;
            to_value(&support::normalize(&s).map_err(input_err)?)
        }
        Cmd::Diagnose { levels } => {
            let mut i: DiagnoseInput = parse(read_input(&cli.input)?)?;
            if let Some(l) = levels {
                i.truncations.truncate(l);
            }
            to_value(&support::non_polyhedral_diagnostic(&i.truncations).map_err(input_err)?)
        }
        Cmd::Asroot { depth } => {
            let i: AsrootInput = parse(read_input(&cli.input)?)?;
            let o = order_from(i.weight, i.order)?;
            let (f, a) = poly_in(None, &i.a)?;
            let r = match i.branch.as_deref().unwrap_or("both") {
                "both" => charp::as_root(&a, f, &o, depth),
                "negative" => charp::as_negative_root(&a, f, &o, depth),
                "positive" => charp::as_positive_root(&a, f, &o, depth),
                b => return Err(CliError::Input(format!("unknown branch {b:?}"))),
            }
            .map_err(input_err)?;
            root_json(f, &r)
        }
        Cmd::Gap => {
            let i: GapInput = parse(read_input(&cli.input)?)?;
            let (f, xi) = poly_in(None, &i.series)?;
            let coeffs = i
                .coefficients
                .iter()
                .map(|c| poly_in(Some(f), c).map(|x| x.1))
                .collect::<Result<Vec<_>, _>>()?;
            let g = i
                .guaranteed_level
                .as_ref()
                .map(q_from_json)
                .transpose()
                .map_err(CliError::Input)?;
            to_value(&gap_verify(&xi, &coeffs, &i.weight, g).map_err(input_err)?)
        }
        Cmd::Families => {
            let i: FamiliesInput = parse(read_input(&cli.input)?)?;
            let o = order_from(i.weight, i.order)?;
            to_value(&charp::field_family_check(&i.spec, &o, i.samples, i.seed).map_err(input_err)?)
        }
    };
    write_text(out, &pretty(&value))?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
