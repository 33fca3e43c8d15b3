//! `polarsparse` command-line tool.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 dimension mismatch,
//! 3 certified representation is not the unique ℓ1 solution, 4 infeasible
//! problem, 5 unbounded polar polytope, 6 enumeration guard exceeded.

mod demo;
mod input;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use polarsparse::{
    basis_pursuit, basis_pursuit_brute, certify, enumerate_polar_vertices, is_k_neighbourly, mp,
    omp, spark, AtomMatrix, Error, Representation, Tolerances,
};
use serde_json::{json, Value};

use input::InputError;

#[derive(Parser)]
#[command(
    name = "polarsparse",
    version,
    about = "Sparse recovery certificates and polar polytope geometry"
)]
struct Cli {
    /// Print only the verdict instead of the JSON report
    #[arg(long, global = true)]
    quiet: bool,

    /// Override the strictness tolerance (residual tolerance for `solve`)
    #[arg(long, global = true, value_name = "FLOAT")]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every certificate for a representation x0
    Certify {
        #[arg(long, value_name = "PATH")]
        dict: PathBuf,
        /// Dense `1 0 -1` or sparse 1-based `1:1 3:-1`
        #[arg(long, value_name = "SPEC", allow_hyphen_values = true)]
        x0: String,
    },
    /// Find a representation of y
    Solve {
        #[arg(long, value_name = "PATH")]
        dict: PathBuf,
        #[arg(long, value_name = "SPEC", allow_hyphen_values = true)]
        y: String,
        #[arg(long, value_enum, default_value_t = Method::Bp)]
        method: Method,
        /// Step limit for omp (default: dimension) and mp (default: 1000)
        #[arg(long, value_name = "INT")]
        max_steps: Option<usize>,
    },
    /// Polar polytope queries
    Geometry {
        #[command(subcommand)]
        query: Geometry,
    },
    /// Built-in worked example: fig-regions, unit-norm-d3 or omp-two-step
    Demo { name: String },
}

#[derive(Subcommand)]
enum Geometry {
    /// List the vertices of the polar polytope
    Vertices {
        #[arg(long, value_name = "PATH")]
        dict: PathBuf,
        /// Write vertices and scaled atoms as CSV for plotting (d = 2 or 3)
        #[arg(long, value_name = "PATH")]
        plot_data: Option<PathBuf>,
    },
    /// Check k-neighbourliness of the atom polytope
    Neighborly {
        #[arg(long, value_name = "PATH")]
        dict: PathBuf,
        #[arg(long, value_name = "INT")]
        k: usize,
    },
    /// Smallest number of linearly dependent atoms
    Spark {
        #[arg(long, value_name = "PATH")]
        dict: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Bp,
    BpBrute,
    Omp,
    Mp,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Bp => "bp",
            Method::BpBrute => "bp-brute",
            Method::Omp => "omp",
            Method::Mp => "mp",
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<InputError>() {
            return match e {
                InputError::Parse(_) => 1,
                InputError::Dimension(_) => 2,
            };
        }
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::DimensionMismatch(_) => 2,
                Error::NonFinite | Error::ZeroAtom { .. } | Error::InvalidSupport(_) => 1,
                Error::Infeasible
                | Error::Unbounded
                | Error::IterationLimit(_)
                | Error::InconsistentCertificate(_) => 4,
                Error::UnboundedPolar { .. } => 5,
                Error::GuardExceeded { .. } => 6,
            };
        }
    }
    1
}

fn emit(value: &Value) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn cmd_certify(dict: &Path, x0: &str, quiet: bool, tol: &Tolerances) -> anyhow::Result<u8> {
    let a = input::load_dictionary(dict, tol)?;
    let x0 = Representation::new(input::parse_spec(x0, a.len())?, tol);
    let r = certify(&a, &x0, tol)?;
    if quiet {
        println!(
            "fuchs={} fuchs_corollary={} erc={} l1_unique={}",
            r.fuchs.holds, r.fuchs_corollary.holds, r.erc.holds, r.l1_unique
        );
    } else {
        emit(&report::certificate(&r))?;
    }
    Ok(if r.l1_unique { 0 } else { 3 })
}

fn cmd_solve(
    dict: &Path,
    y: &str,
    method: Method,
    max_steps: Option<usize>,
    quiet: bool,
    tol: &Tolerances,
) -> anyhow::Result<u8> {
    let a = input::load_dictionary(dict, tol)?;
    let y = input::parse_spec(y, a.dim())?;
    let out = match method {
        Method::Bp | Method::BpBrute => {
            let result = if let Method::Bp = method {
                basis_pursuit(&a, &y, tol)?
            } else {
                basis_pursuit_brute(&a, &y, tol)?
            };
            let residual = (a.synthesize(&result.coeffs) - &y).norm();
            let converged = residual <= tol.residual_tol * (1.0 + y.norm());
            report::bp(method.name(), &result, residual, converged)
        }
        Method::Omp | Method::Mp => {
            let trace = if let Method::Omp = method {
                omp(&a, &y, max_steps.unwrap_or(a.dim()), tol)?
            } else {
                mp(&a, &y, max_steps.unwrap_or(1000), tol)?
            };
            report::pursuit(method.name(), &trace, y.norm())
        }
    };
    if quiet {
        let coeffs: Vec<String> = out["coeffs"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|v| v.to_string())
            .collect();
        println!("{}", coeffs.join(" "));
    } else {
        emit(&out)?;
    }
    Ok(0)
}

fn write_plot_data(
    path: &Path,
    a: &AtomMatrix,
    vertices: &[polarsparse::PolarVertex],
) -> anyhow::Result<()> {
    let d = a.dim();
    if !(2..=3).contains(&d) {
        return Err(InputError::Dimension(format!(
            "plot data needs d = 2 or 3, dictionary has d = {d}"
        ))
        .into());
    }
    let mut w =
        csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
    let mut header = vec!["x", "y", "z"];
    header.truncate(d);
    header.push("label");
    w.write_record(&header)?;
    for v in vertices {
        let mut row: Vec<String> = v.point.iter().map(|x| x.to_string()).collect();
        row.push(v.active_labels(a.len()).join(","));
        w.write_record(&row)?;
    }
    let scaled = a.scaled_atoms();
    for (sign, symbol) in [(1.0, '+'), (-1.0, '-')] {
        for (i, col) in scaled.column_iter().enumerate() {
            let mut row: Vec<String> = col.iter().map(|x| (sign * x).to_string()).collect();
            row.push(format!("{symbol}a{}", i + 1));
            w.write_record(&row)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_geometry(query: &Geometry, quiet: bool, tol: &Tolerances) -> anyhow::Result<u8> {
    match query {
        Geometry::Vertices { dict, plot_data } => {
            let a = input::load_dictionary(dict, tol)?;
            let vertices = enumerate_polar_vertices(&a, tol)?;
            if let Some(path) = plot_data {
                write_plot_data(path, &a, &vertices)?;
            }
            if quiet {
                println!("{}", vertices.len());
            } else {
                emit(&report::vertices(a.dim(), a.len(), &vertices))?;
            }
        }
        Geometry::Neighborly { dict, k } => {
            let a = input::load_dictionary(dict, tol)?;
            let (verdict, failure) = is_k_neighbourly(&a, *k, tol)?;
            let failure = failure.map(|s| s.to_string());
            if quiet {
                match &failure {
                    Some(s) => println!("{verdict} {s}"),
                    None => println!("{verdict}"),
                }
            } else {
                emit(&json!({ "k": k, "neighborly": verdict, "failure": failure }))?;
            }
        }
        Geometry::Spark { dict } => {
            let a = input::load_dictionary(dict, tol)?;
            let s = spark(&a, tol);
            if quiet {
                println!("{s}");
            } else {
                emit(&json!({ "spark": s, "atoms": a.len() }))?;
            }
        }
    }
    Ok(0)
}

fn tolerances(cli: &Cli) -> anyhow::Result<Tolerances> {
    let mut tol = Tolerances::default();
    if let Some(t) = cli.tol {
        if let Command::Solve { .. } = cli.command {
            tol.residual_tol = t;
        } else {
            tol.strict_tol = t;
        }
        if !tol.is_valid() {
            return Err(
                InputError::Parse(format!("--tol must be positive and finite, got {t}")).into(),
            );
        }
    }
    Ok(tol)
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    let tol = tolerances(cli)?;
    match &cli.command {
        Command::Certify { dict, x0 } => cmd_certify(dict, x0, cli.quiet, &tol),
        Command::Solve {
            dict,
            y,
            method,
            max_steps,
        } => cmd_solve(dict, y, *method, *max_steps, cli.quiet, &tol),
        Command::Geometry { query } => cmd_geometry(query, cli.quiet, &tol),
        Command::Demo { name } => demo::run(name, cli.quiet, &tol).map(|_| 0),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
