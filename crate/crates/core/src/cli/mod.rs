//! Command-line front end: `orbits`, `gdim`, `verify <suite>...` and
//! `series`.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or a
//! computation aborts, 2 for invalid input.

pub mod config;
pub mod output;
pub mod suites;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cyclotomic::fixed::eigen_dims;
use crate::cyclotomic::CycloAlgebra;
use crate::error::{Error, Result};
use crate::quiver::classify_lambda;
use crate::report::CheckSet;
use crate::scalars::{series_checks, series_comp_inverse, series_f};
use crate::vqha::v_algebra;
use crate::weyl::{dimension_vector, fmt_tuple, orbit, split_beta, Flavor, Tuple};
use crate::wqha::w_algebra;

pub use config::{Resolved, RunConfig, RunOptions};
pub use output::{Format, Report, Section};
pub use suites::{run_suite, Suite};

#[derive(Debug, Parser)]
#[command(name = "qhbd", version, about = "Quiver Hecke algebras of types B and D and their cyclotomic quotients")]
struct Cli {
    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for parallel suites and products.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Working order for power series.
    #[arg(long, global = true)]
    truncation: Option<usize>,
    /// Abort quotient saturation beyond this degree.
    #[arg(long, global = true)]
    degree_cap: Option<i32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the type B orbits of the seeds and their type D splits.
    Orbits,
    /// Graded dimensions of the cyclotomic quotients.
    Gdim {
        /// Include the structure constants of the type B quotient.
        #[arg(long)]
        structure_constants: bool,
    },
    /// Run verification suites.
    Verify {
        #[arg(value_enum)]
        suites: Vec<Suite>,
    },
    /// Coefficients of f and its compositional inverse g.
    Series,
}

fn tuple_json(t: &[crate::scalars::Scalar]) -> Value {
    Value::Array(t.iter().map(|x| Value::String(x.to_string())).collect())
}

fn orbits_data(cfg: &Resolved) -> Result<Value> {
    let mut seen: BTreeSet<Tuple> = BTreeSet::new();
    let mut listing = Vec::new();
    for s in &cfg.seeds {
        if seen.contains(s) {
            continue;
        }
        let o = orbit(s, Flavor::B);
        seen.extend(o.members.iter().cloned());
        let (plus, minus) = split_beta(&o);
        let nu: serde_json::Map<String, Value> =
            dimension_vector(&o).into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        listing.push(json!({
            "seed": tuple_json(&o.seed),
            "size": o.members.len(),
            "members": o.members.iter().map(|t| tuple_json(t)).collect::<Vec<_>>(),
            "d_orbit_of_seed": plus.iter().map(|t| tuple_json(t)).collect::<Vec<_>>(),
            "d_orbit_complement": minus.iter().map(|t| tuple_json(t)).collect::<Vec<_>>(),
            "single_d_orbit": minus.is_empty(),
            "dimension_vector": nu,
        }));
    }
    let mut data = json!({ "orbits": listing });
    if let Some(l) = &cfg.lambda {
        let cases: serde_json::Map<String, Value> = l
            .entries()
            .iter()
            .map(|x| Ok((x.to_string(), serde_json::to_value(classify_lambda(&cfg.params, x, l.search_bound())?).expect("serializes"))))
            .collect::<Result<_>>()?;
        data["lambda_cases"] = Value::Object(cases);
    }
    Ok(data)
}

fn gdim_data(cfg: &Resolved, structure: bool) -> Result<Value> {
    let m = cfg.multiplicities()?;
    let beta = cfg.require_beta()?.to_vec();
    let v = CycloAlgebra::new(&v_algebra(cfg.params.clone(), beta.clone())?, m, cfg.quotient)?;
    let w = CycloAlgebra::new(&w_algebra(cfg.params.clone(), beta)?, m, cfg.quotient)?;
    let (fixed, minus) = eigen_dims(&v);
    let (vd, wd) = (v.graded_dims(), w.graded_dims());
    let degrees: BTreeSet<i32> = vd.keys().chain(wd.keys()).copied().collect();
    let rows: Vec<Value> = degrees
        .iter()
        .map(|d| {
            json!({
                "degree": d,
                "v": vd.get(d).copied().unwrap_or(0),
                "v_fixed": fixed.get(d).copied().unwrap_or(0),
                "v_minus": minus.get(d).copied().unwrap_or(0),
                "w": wd.get(d).copied().unwrap_or(0),
            })
        })
        .collect();
    let mut data = json!({
        "multiplicities": m.to_string(),
        "symmetric": m.is_symmetric(),
        "nilpotency_indices": v.nilpotency_indices(),
        "degree_bound": v.degree_bound(),
        "totals": { "v": v.dim(), "v_fixed": fixed.values().sum::<usize>(), "w": w.dim() },
        "graded": rows,
    });
    if structure {
        let table = v.structure_constants();
        let mut products = Vec::new();
        for (a, row) in table.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                if !c.is_empty() {
                    let entries: Vec<Value> = c.iter().map(|(k, x)| json!([k, x.to_string()])).collect();
                    products.push(json!([a, b, entries]));
                }
            }
        }
        data["structure"] = json!({
            "basis": v.basis().iter().map(|t| v.algebra().fmt_term(t)).collect::<Vec<_>>(),
            "degrees": (0..v.dim()).map(|k| v.basis_degree(k)).collect::<Vec<_>>(),
            "products": products,
        });
    }
    Ok(data)
}

fn series_data(config: &RunConfig, order: usize) -> Result<(Value, CheckSet)> {
    let field = config.field()?;
    let f = series_f(field, order)?;
    let g = series_comp_inverse(&f)?;
    let coeffs = |s: &crate::scalars::TruncSeries| s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>();
    let data = json!({ "field": field.to_string(), "order": order, "f": coeffs(&f), "g": coeffs(&g) });
    Ok((data, series_checks(field, order)?))
}

/// Runs `suites` in parallel; sections come back in the requested order.
pub fn verify_sections(cfg: &Resolved, suites: &[Suite]) -> Result<Vec<Section>> {
    if suites.is_empty() {
        return Err(Error::Config("no suite selected".into()));
    }
    Ok(suites.par_iter().map(|s| Section::new(s.name(), run_suite(cfg, *s))).collect())
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Config(_)
            | Error::InvalidField(_)
            | Error::InvalidParams(_)
            | Error::Parse { .. }
            | Error::OverlappingComponents { .. }
            | Error::TupleNotInSet(_)
    )
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let mut config = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(t) = cli.truncation {
        config.options.truncation = Some(t);
    }
    if let Some(d) = cli.degree_cap {
        config.options.degree_cap = Some(d);
    }
    Ok(config)
}

fn emit(cli: &Cli, config: &RunConfig, report: &Report) -> Result<()> {
    let format = match (cli.format, &config.format) {
        (Some(f), _) => f,
        (None, Some(s)) => Format::parse(s).ok_or_else(|| Error::Config(format!("unknown format {s:?}")))?,
        (None, None) => Format::Json,
    };
    let text = report.render(format);
    match &cli.out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn execute(cli: &Cli, config: &RunConfig) -> std::result::Result<Report, Error> {
    let start = Instant::now();
    let (name, sections, data) = match &cli.command {
        Command::Series => {
            let order = config.options.truncation.or(config.options.series_order).unwrap_or(config::DEFAULT_SERIES_ORDER);
            let (data, checks) = series_data(config, order)?;
            ("series", vec![Section::new("series", checks)], data)
        }
        Command::Orbits => {
            let cfg = config.resolve()?;
            ("orbits", Vec::new(), orbits_data(&cfg)?)
        }
        Command::Gdim { structure_constants } => {
            let cfg = config.resolve()?;
            let _ = cfg.multiplicities()?;
            let _ = cfg.require_beta()?;
            match gdim_data(&cfg, *structure_constants) {
                Ok(d) => ("gdim", Vec::new(), d),
                Err(e) => {
                    let mut set = CheckSet::new();
                    set.error("quotient computed", "graded dimensions", e);
                    ("gdim", vec![Section::new("gdim", set)], Value::Null)
                }
            }
        }
        Command::Verify { suites } => {
            let mut chosen: Vec<Suite> = suites.clone();
            if chosen.is_empty() {
                for s in &config.suites {
                    chosen.push(Suite::from_name(s).ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))?);
                }
            }
            let sections = verify_sections(&config.resolve()?, &chosen)?;
            ("verify", sections, Value::Null)
        }
    };
    Ok(Report::new(name, config, sections, data, start.elapsed()))
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.workers {
        if n == 0 {
            eprintln!("error: --workers must be positive");
            return 2;
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let config = match load_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let report = match execute(&cli, &config) {
        Ok(r) => r,
        Err(e) if is_input_error(&e) => {
            eprintln!("error: {e}");
            return 2;
        }
        Err(e) => {
            let mut set = CheckSet::new();
            set.error("command ran to completion", "computation", &e);
            Report::new("error", &config, vec![Section::new("error", set)], Value::Null, Default::default())
        }
    };
    if let Err(e) = emit(&cli, &config, &report) {
        eprintln!("error: {e}");
        return 2;
    }
    if report.passed {
        0
    } else {
        1
    }
}

/// Human-readable label of a tuple list, for diagnostics.
pub fn fmt_tuples(ts: &[Tuple]) -> String {
    ts.iter().map(|t| fmt_tuple(t)).collect::<Vec<_>>().join(" ")
}
