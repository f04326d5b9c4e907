//! `heps`: exponent bounds for planar Pucci supersolutions, sweep curves,
//! and grid-laboratory experiments.

mod svg;

use clap::{Args, Parser, Subcommand};
use heps_core::{bound_report, m0, m0_maximizer, solve_system, Ellipticity};
use heps_lab::corpus::CorpusSpec;
use heps_lab::decay::{decay_fit, intrinsic_ratio};
use heps_lab::envelope::a_envelope;
use heps_lab::io::{read_grid_file, write_grid_file};
use heps_lab::lemma::lemma_check;
use heps_lab::theta::theta;
use heps_lab::{corpus, GridFunction, LabError};
use rayon::prelude::*;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_INPUT: u8 = 2;
const EXIT_OUTPUT: u8 = 3;
const EXIT_GRID_PARSE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "heps",
    about = "Bounds for the sharp Hessian integrability exponent of planar Pucci supersolutions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute all exponent bounds for one ellipticity pair (JSON on stdout).
    Bound(EllArgs),
    /// Sweep the bounds over a range of ellipticity ratios into CSV or SVG.
    Curve {
        #[arg(long = "tau-min")]
        tau_min: f64,
        #[arg(long = "tau-max")]
        tau_max: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_parser = ["csv", "svg"])]
        format: String,
    },
    /// Solve the tangency system for a decay constant c (JSON on stdout).
    Solve {
        #[arg(long)]
        c: f64,
    },
    /// Evaluate the extremum constant m0(n) and its maximizer (JSON on stdout).
    M0 {
        #[arg(long)]
        n: u32,
    },
    /// Grid-laboratory experiments on discretized supersolutions.
    #[command(subcommand)]
    Lab(LabCommand),
}

#[derive(Args)]
struct EllArgs {
    #[arg(long)]
    lambda: f64,
    #[arg(long = "Lambda")]
    big_lambda: f64,
}

impl EllArgs {
    fn build(&self) -> Result<Ellipticity, CliError> {
        Ellipticity::new(self.lambda, self.big_lambda).map_err(|e| CliError::input(e.to_string()))
    }
}

#[derive(Subcommand)]
enum LabCommand {
    /// Sample a corpus member onto a grid file.
    Corpus {
        /// One of: quadratic(a), affine, cone, radial_power(b),
        /// radial_power_sub(s), double_well, perturbed_concave(seed)
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: usize,
        /// Box as `lo,hi` (the domain is the square [lo,hi]^2).
        #[arg(long, default_value = "-1,1", allow_hyphen_values = true)]
        domain: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the a-paraboloid envelope of a grid function.
    Envelope {
        #[arg(long)]
        grid: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        a: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the minimal tangent-paraboloid opening at a point (JSON).
    Theta {
        #[arg(long)]
        grid: PathBuf,
        /// Physical coordinates `x,y`; snapped to the nearest node.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Fit the level-set measure decay of the curvature function (JSON).
    Decay {
        #[arg(long)]
        grid: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        t0: f64,
        /// Threshold ratio; defaults to the intrinsic dyadic ratio of the
        /// configured ellipticity.
        #[arg(long)]
        ratio: Option<f64>,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long = "Lambda", default_value_t = 3.0)]
        big_lambda: f64,
    },
    /// Run the sliding-paraboloid measure inequality check (JSON).
    Lemma {
        #[arg(long)]
        grid: PathBuf,
        #[arg(long)]
        lambda: f64,
        #[arg(long = "Lambda")]
        big_lambda: f64,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        delta: f64,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn output(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_OUTPUT,
            message: message.into(),
        }
    }
}

impl From<LabError> for CliError {
    fn from(e: LabError) -> Self {
        let code = match &e {
            LabError::Parse { .. } | LabError::InvalidGrid(_) => EXIT_GRID_PARSE,
            LabError::Io(_) => EXIT_OUTPUT,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<heps_core::SolverError> for CliError {
    fn from(e: heps_core::SolverError) -> Self {
        CliError::input(e.to_string())
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

/// `HEPS_THREADS` caps worker parallelism; 0 means sequential.
fn configure_threads() {
    if let Ok(raw) = std::env::var("HEPS_THREADS") {
        if let Ok(k) = raw.trim().parse::<usize>() {
            let threads = if k == 0 { 1 } else { k };
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Bound(args) => cmd_bound(args),
        Command::Curve {
            tau_min,
            tau_max,
            steps,
            out,
            format,
        } => cmd_curve(tau_min, tau_max, steps, &out, &format),
        Command::Solve { c } => cmd_solve(c),
        Command::M0 { n } => cmd_m0(n),
        Command::Lab(lab) => run_lab(lab),
    }
}

fn cmd_bound(args: EllArgs) -> Result<(), CliError> {
    let ell = args.build()?;
    let report = bound_report(ell)?;
    let doc = json!({
        "tau": report.tau,
        "c": report.c,
        "lower_opt": report.eps_lower_opt,
        "lower_interp": report.eps_lower_interp,
        "upper_ass": report.eps_upper,
        "upper_ndim_3": ell
            .upper_bound_ndim(3)
            .map_err(|e| CliError::input(e.to_string()))?,
        "ratio": report.ratio,
        "theorem_product": report.theorem_product(),
    });
    println!("{doc}");
    Ok(())
}

/// One row per ratio: `tau,c,lower_opt,lower_interp,upper,ratio`.
fn curve_rows(tau_min: f64, tau_max: f64, steps: usize) -> Result<Vec<[f64; 6]>, CliError> {
    if !(tau_min > 0.0 && tau_min < tau_max && tau_max <= 1.0) || steps < 2 {
        return Err(CliError::input(format!(
            "need 0 < tau-min < tau-max <= 1 and steps >= 2; got [{tau_min}, {tau_max}] with {steps}"
        )));
    }
    let dt = (tau_max - tau_min) / (steps - 1) as f64;
    (0..steps)
        .into_par_iter()
        .map(|i| {
            let tau = if i + 1 == steps {
                tau_max
            } else {
                tau_min + i as f64 * dt
            };
            let ell = Ellipticity::from_tau(tau).map_err(|e| CliError::input(e.to_string()))?;
            let r = bound_report(ell)?;
            Ok([
                r.tau,
                r.c,
                r.eps_lower_opt,
                r.eps_lower_interp,
                r.eps_upper,
                r.ratio,
            ])
        })
        .collect()
}

fn curve_csv(rows: &[[f64; 6]]) -> String {
    let mut out = String::from("tau,c,lower_opt,lower_interp,upper,ratio\n");
    for row in rows {
        let mut first = true;
        for v in row {
            if !first {
                out.push(',');
            }
            first = false;
            out.push_str(&format!("{v}"));
        }
        out.push('\n');
    }
    out
}

fn cmd_curve(
    tau_min: f64,
    tau_max: f64,
    steps: usize,
    out: &Path,
    format: &str,
) -> Result<(), CliError> {
    let rows = curve_rows(tau_min, tau_max, steps)?;
    let content = match format {
        "csv" => curve_csv(&rows),
        "svg" => svg::curve_chart(&rows),
        other => return Err(CliError::input(format!("unknown format `{other}`"))),
    };
    std::fs::write(out, content)
        .map_err(|e| CliError::output(format!("cannot write {}: {e}", out.display())))?;
    Ok(())
}

fn cmd_solve(c: f64) -> Result<(), CliError> {
    let cp = solve_system(c, 2)?;
    let doc = json!({
        "c": cp.c,
        "n": cp.n,
        "x_c": cp.x_c,
        "d_c": cp.d_c,
        "residual_value": cp.residual_value,
        "residual_slope": cp.residual_slope,
        "boundary_flag": cp.boundary_flag,
    });
    println!("{doc}");
    Ok(())
}

fn cmd_m0(n: u32) -> Result<(), CliError> {
    let value = m0(n)?;
    let maximizer = m0_maximizer(n)?;
    let doc = json!({ "n": n, "value": value, "maximizer": maximizer });
    println!("{doc}");
    Ok(())
}

fn run_lab(lab: LabCommand) -> Result<(), CliError> {
    match lab {
        LabCommand::Corpus {
            name,
            n,
            domain,
            out,
        } => {
            let spec: CorpusSpec = name.parse().map_err(CliError::from)?;
            let (lo, hi) = parse_pair(&domain, "domain")?;
            let g = corpus(spec, n, lo, hi)?;
            write_grid_file(&g, &out)
                .map_err(|e| CliError::output(format!("cannot write {}: {e}", out.display())))?;
            Ok(())
        }
        LabCommand::Envelope { grid, a, out } => {
            if a.is_nan() || a < 0.0 {
                return Err(CliError::input(format!("opening must be >= 0, got {a}")));
            }
            let g = load_grid(&grid)?;
            let env = a_envelope(&g, a);
            write_grid_file(&env, &out)
                .map_err(|e| CliError::output(format!("cannot write {}: {e}", out.display())))?;
            Ok(())
        }
        LabCommand::Theta { grid, point } => {
            let g = load_grid(&grid)?;
            let (x, y) = parse_pair(&point, "point")?;
            let node = g
                .nearest_node(x, y)
                .ok_or_else(|| CliError::input(format!("point ({x}, {y}) is outside the grid")))?;
            let value = theta(&g, node)?;
            let doc = json!({
                "point": [x, y],
                "node": [node.0, node.1],
                "theta": if value.is_finite() { json!(value) } else { json!(null) },
                "infinite": !value.is_finite(),
            });
            println!("{doc}");
            Ok(())
        }
        LabCommand::Decay {
            grid,
            t0,
            ratio,
            count,
            lambda,
            big_lambda,
        } => {
            let g = load_grid(&grid)?;
            let ratio = match ratio {
                Some(r) => r,
                None => {
                    let ell = Ellipticity::new(lambda, big_lambda)
                        .map_err(|e| CliError::input(e.to_string()))?;
                    intrinsic_ratio(ell)?
                }
            };
            let fit = decay_fit(&g, t0, ratio, count)?;
            let doc = json!({
                "thresholds": fit.thresholds,
                "measures": fit.measures,
                "slope": fit.slope,
                "exponent": fit.exponent(),
                "r_squared": fit.r_squared,
                "used": fit.used,
                "ratio": ratio,
            });
            println!("{doc}");
            Ok(())
        }
        LabCommand::Lemma {
            grid,
            lambda,
            big_lambda,
            a,
            delta,
        } => {
            let g = load_grid(&grid)?;
            let ell = Ellipticity::new(lambda, big_lambda)
                .map_err(|e| CliError::input(e.to_string()))?;
            let r = lemma_check(&g, ell, a, delta, None)?;
            let doc = json!({
                "a": r.a,
                "delta": r.delta,
                "measure_f": r.measure_f,
                "measure_new_contact": r.measure_new_contact,
                "bound": r.bound,
                "slack": r.slack,
                "satisfied": r.satisfied,
                "interior_ok": r.interior_ok,
                "touching_count": r.touching.len(),
                "supersolution_fraction": r.supersolution_fraction,
            });
            println!("{doc}");
            Ok(())
        }
    }
}

fn load_grid(path: &Path) -> Result<GridFunction, CliError> {
    if !path.exists() {
        return Err(CliError::input(format!(
            "grid file {} does not exist",
            path.display()
        )));
    }
    read_grid_file(path).map_err(CliError::from)
}

fn parse_pair(raw: &str, what: &str) -> Result<(f64, f64), CliError> {
    let parts: Vec<&str> = raw.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::input(format!("{what} must be `a,b`, got `{raw}`")));
    }
    let a: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| CliError::input(format!("cannot parse {what} component `{}`", parts[0])))?;
    let b: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| CliError::input(format!("cannot parse {what} component `{}`", parts[1])))?;
    Ok((a, b))
}
