//! Command-line front end.
//!
//! Exit codes: `0` pass, `2` fail, `1` error.
//!
//! Expression grammar (prefix S-expressions):
//!
//! ```text
//! expr   := number | var | "pi" | "e" | "(" op expr+ ")"
//! op     := add | sub | mul | div | pow | exp | log | sin | cos | tan | sinh | cosh
//! var    := x | y | z | s | t | u | v
//! ```
//!
//! `add` and `mul` take two or more operands, `sub` one (negation) or two,
//! `div` two, `pow` a base and a constant real exponent, the functions one.
//! A univariate field uses a single variable name. In `embedding` entries,
//! `s`, `u`, `x` denote the first parameter and `t`, `v`, `y` the second.

mod output;
mod spec_doc;

pub use output::{export_obj, fmt_sig9, obj_text, samples_csv, spec_digest, to_json, ReportDoc, TOOL_VERSION};
pub use spec_doc::{parse_doc, parse_surface_spec, SpecKind, SurfaceSpecDoc};

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::catalog::{list_families, FamilyName};
use crate::error::{Error, Result};
use crate::geometry::Metric;
use crate::jets::Interval;
use crate::verify::{
    check_constancy, convergence_ratio, nonexistence_probe, ode_crosscheck, sample_curvature, GridSpec, OdeProblem,
    ProbeProblem, ProbeResult, Quantity,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FAIL: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "surfcurv",
    version,
    about = "Curvature verification for translation and homothetical surfaces"
)]
pub struct Cli {
    /// Worker threads for parallel sampling and probing (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample K or H on a grid and certify that it is constant.
    Verify {
        spec: PathBuf,
        #[arg(long, value_parser = parse_quantity)]
        quantity: Quantity,
        /// Value the quantity must take; the sample mean is used when absent.
        #[arg(long, allow_negative_numbers = true)]
        expected: Option<f64>,
        /// Allowed deviation (default 1e-9 for K, 1e-10 for H).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_parser = parse_grid, default_value = "21x21")]
        grid: (usize, usize),
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Export the surface as a Wavefront OBJ triangle mesh.
    Mesh {
        spec: PathBuf,
        #[arg(long, value_parser = parse_grid, default_value = "21x21")]
        grid: (usize, usize),
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Search for a constant-K surface in a class where none should exist.
    Probe {
        /// homothetical_nonzero_k or translation_planar_generator.
        #[arg(long)]
        problem: String,
        #[arg(long = "K0", allow_negative_numbers = true)]
        k0: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        budget: usize,
        /// Fail (exit 2) when the best residual falls below this floor.
        #[arg(long)]
        floor: Option<f64>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// List the catalog families with their default parameters and domains.
    Families,
    /// Integrate a reduced ODE and compare it with its closed-form solution.
    Crosscheck {
        /// tan, exp_branch or power_branch.
        #[arg(long)]
        ode: String,
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
        /// Parameter override `name=value`; repeatable.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, f64)>,
        /// Integration interval `lo,hi`.
        #[arg(long, value_parser = parse_interval, allow_hyphen_values = true)]
        interval: Option<Interval>,
        /// Fail (exit 2) when the maximum error exceeds this.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Coarse step count `n` of the order check `error(n)/error(2n)`.
        #[arg(long, default_value_t = 50)]
        ratio_steps: usize,
        /// Fail (exit 2) when the order-check ratio is below this.
        #[arg(long, default_value_t = 8.0)]
        min_ratio: f64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn parse_quantity(s: &str) -> std::result::Result<Quantity, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// `NSxNT`, both at least 2.
pub fn parse_grid(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected NSxNT, got {s:?}"))?;
    let n = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("{v:?}: {e}"));
    let (ns, nt) = (n(a)?, n(b)?);
    if ns < 2 || nt < 2 {
        return Err(format!("grid counts must be at least 2, got {ns}x{nt}"));
    }
    Ok((ns, nt))
}

fn parse_param(s: &str) -> std::result::Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got {s:?}"))?;
    let v: f64 = v.trim().parse().map_err(|e| format!("{v:?}: {e}"))?;
    Ok((k.trim().to_string(), v))
}

fn parse_interval(s: &str) -> std::result::Result<Interval, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected lo,hi, got {s:?}"))?;
    let p = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("{v:?}: {e}"));
    Interval::new(p(a)?, p(b)?).map_err(|e| e.to_string())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Default ODE problem and interval for a cross-check id, with overrides.
pub fn ode_problem(id: &str, overrides: &[(String, f64)]) -> Result<(OdeProblem, Interval)> {
    let (names, mut values, interval): (&[&str], Vec<f64>, (f64, f64)) = match id {
        "tan" => (&["a", "k", "d"], vec![1.0, 1.0, 0.0], (0.0, 1.2)),
        "exp_branch" => (&["b", "c", "p", "q"], vec![1.0, 1.0, 1.0, 1.0], (0.0, 1.0)),
        "power_branch" => (&["a", "b", "c", "p", "q"], vec![2.0, 1.0, 1.0, 1.0, 1.0], (0.0, 0.5)),
        _ => {
            return Err(Error::spec(
                "ode",
                format!("unknown ODE {id:?} (expected tan, exp_branch or power_branch)"),
            ))
        }
    };
    for (k, v) in overrides {
        let i = names.iter().position(|n| n == k).ok_or_else(|| {
            Error::spec(
                format!("param.{k}"),
                format!("unknown parameter for {id} (expected {names:?})"),
            )
        })?;
        values[i] = *v;
    }
    let v = &values;
    let ode = match id {
        "tan" => OdeProblem::Tan {
            a: v[0],
            k: v[1],
            d: v[2],
        },
        "exp_branch" => OdeProblem::ExpBranch {
            b: v[0],
            c: v[1],
            p: v[2],
            q: v[3],
        },
        _ => OdeProblem::PowerBranch {
            a: v[0],
            b: v[1],
            c: v[2],
            p: v[3],
            q: v[4],
        },
    };
    Ok((ode, Interval::new(interval.0, interval.1)?))
}

#[derive(Debug, Serialize)]
struct FamilyListing {
    family: FamilyName,
    metric: Metric,
    params: std::collections::BTreeMap<String, f64>,
    domain: crate::geometry::Rect,
    claims: Vec<(Quantity, f64)>,
}

#[derive(Debug, Serialize)]
struct ProbeDoc<'a> {
    tool_version: &'a str,
    result: &'a ProbeResult,
}

#[derive(Debug, Serialize)]
struct CrosscheckDoc<'a> {
    tool_version: &'a str,
    ode: OdeProblem,
    interval: Interval,
    steps: usize,
    max_error: f64,
    ratio_steps: usize,
    /// `error(ratio_steps) / error(2·ratio_steps)`.
    convergence_ratio: f64,
    min_ratio: f64,
    tol: f64,
    pass: bool,
}

/// Runs one command and returns its exit code.
pub fn execute(command: &Command) -> Result<i32> {
    match command {
        Command::Verify {
            spec,
            quantity,
            expected,
            tol,
            grid,
            json,
            csv,
        } => {
            let text = read(spec)?;
            let (surface, metric) = parse_surface_spec(&text)?;
            let grid = GridSpec::over(surface.domain(), grid.0, grid.1)?;
            let samples = sample_curvature(&surface, metric, &grid)?;
            let tol = tol.unwrap_or(quantity.default_tol());
            let report = check_constancy(&samples, *quantity, *expected, tol);
            if let Some(path) = csv {
                write(path, &samples_csv(&samples.samples))?;
            }
            let code = if report.passed() { EXIT_PASS } else { EXIT_FAIL };
            eprintln!(
                "{} {}: max |{} - {}| = {:e} over {} samples ({} skipped), tol {:e}",
                if report.passed() { "PASS" } else { "FAIL" },
                spec.display(),
                quantity,
                expected.map_or("mean".to_string(), |e| e.to_string()),
                report.max_abs_dev,
                report.n_samples,
                report.skipped_degenerate,
                report.tol
            );
            let doc = ReportDoc {
                tool_version: TOOL_VERSION.to_string(),
                spec_digest: spec_digest(&text)?,
                reports: vec![report],
                samples_path: csv.as_ref().map(|p| p.display().to_string()),
            };
            match json {
                Some(path) => write(path, &to_json(&doc))?,
                None => print!("{}", to_json(&doc)),
            }
            Ok(code)
        }
        Command::Mesh { spec, grid, output } => {
            let (surface, metric) = parse_surface_spec(&read(spec)?)?;
            let grid = GridSpec::over(surface.domain(), grid.0, grid.1)?;
            export_obj(&surface, metric, &grid, output)?;
            Ok(EXIT_PASS)
        }
        Command::Probe {
            problem,
            k0,
            seed,
            budget,
            floor,
            json,
        } => {
            let problem = ProbeProblem::from_id(problem, *k0)?;
            let result = nonexistence_probe(&problem, *seed, *budget)?;
            let text = to_json(&ProbeDoc {
                tool_version: TOOL_VERSION,
                result: &result,
            });
            match json {
                Some(path) => write(path, &text)?,
                None => print!("{text}"),
            }
            let ok = floor.is_none_or(|f| result.best_residual >= f);
            eprintln!(
                "{} best residual {:e}",
                if ok { "PASS" } else { "FAIL" },
                result.best_residual
            );
            Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Families => {
            let listing: Vec<FamilyListing> = list_families()
                .into_iter()
                .map(|f| FamilyListing {
                    family: f.family,
                    metric: f.family.metric(),
                    params: f.params,
                    domain: f.domain.expect("listed families carry domains"),
                    claims: f.family.claims().to_vec(),
                })
                .collect();
            print!("{}", to_json(&listing));
            Ok(EXIT_PASS)
        }
        Command::Crosscheck {
            ode,
            steps,
            params,
            interval,
            tol,
            ratio_steps,
            min_ratio,
            json,
        } => {
            let (problem, default_interval) = ode_problem(ode, params)?;
            let interval = interval.unwrap_or(default_interval);
            let max_error = ode_crosscheck(&problem, interval, *steps)?;
            let ratio = convergence_ratio(&problem, interval, *ratio_steps)?;
            let pass = max_error < *tol && ratio >= *min_ratio;
            eprintln!(
                "{} {}: max error {:e} at {} steps, order ratio {:.2} at {} -> {} steps",
                if pass { "PASS" } else { "FAIL" },
                problem.id(),
                max_error,
                steps,
                ratio,
                ratio_steps,
                2 * ratio_steps
            );
            let text = to_json(&CrosscheckDoc {
                tool_version: TOOL_VERSION,
                ode: problem,
                interval,
                steps: *steps,
                max_error,
                ratio_steps: *ratio_steps,
                convergence_ratio: ratio,
                min_ratio: *min_ratio,
                tol: *tol,
                pass,
            });
            match json {
                Some(path) => write(path, &text)?,
                None => print!("{text}"),
            }
            Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
        }
    }
}

/// Parses `args`, runs the command on a pool of the requested size and maps
/// errors to exit code 1.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS };
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return EXIT_ERROR;
        }
    };
    match pool.install(|| execute(&cli.command)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
