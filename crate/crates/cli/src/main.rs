//! `fke`: closed-form solver and numerical cross-validator for generalized
//! fractional kinetic equations with polynomial forcings.
//!
//! Subcommands:
//! - `solve`  evaluate the closed-form series on a (alpha, t) grid
//! - `grid`   same rows as `solve`, intended as a dense surface mesh
//! - `verify` cross-validate the series against the Volterra oracle

// `!(x > 0.0)` guards reject NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod error;
mod rows;
mod sweep;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fke_core::closed_form::{GammaMode, Variant};
use fke_core::srivastava::SrivastavaPoly;
use serde::Deserialize;

use error::CliError;
use rows::OutputFormat;
use sweep::{ProblemTemplate, SweepSpec};

const PAPER_GRID_ALPHAS: [f64; 4] = [0.1, 0.5, 0.9, 1.3];
const DEFAULT_VERIFY_H: f64 = 4.8828125e-4; // 2^-11

#[derive(Parser)]
#[command(name = "fke", version, about = "Fractional kinetic equation solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the closed-form solution over a time grid
    Solve(SolveArgs),
    /// Emit a dense (t, alpha) mesh of closed-form values
    Grid(SolveArgs),
    /// Cross-validate the closed form against the numerical oracle
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ProblemArgs {
    /// Equation variant: 1..4
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    theorem: u8,
    /// Initial population N0
    #[arg(long, default_value_t = 1.0)]
    n0: f64,
    /// Forcing rate c
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Decay rate d (theorems 2 and 4 only)
    #[arg(long)]
    d: Option<f64>,
    /// Fractional derivative order of the forcing (theorems 3 and 4 only)
    #[arg(long, default_value_t = 0.0)]
    lambda: f64,
    /// Polynomial spec file: {"w": int, "p": int, "coefficients": [..]}
    #[arg(long)]
    poly: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    /// Fractional order of the memory term; repeatable
    #[arg(long = "alpha")]
    alphas: Vec<f64>,
    #[arg(long, default_value_t = 0.0)]
    t_start: f64,
    #[arg(long, default_value_t = 4.0)]
    t_end: f64,
    #[arg(long, default_value_t = 21)]
    t_steps: usize,
    #[arg(long, value_enum, default_value_t = GammaModeArg::Derived)]
    gamma_mode: GammaModeArg,
    /// Preset: t = 0..4 in 21 steps, alpha in {0.1, 0.5, 0.9, 1.3}
    #[arg(long)]
    paper_grid: bool,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// CSV rendering of singular cells (t = 0 with lambda > 0)
    #[arg(long, default_value = "nan")]
    placeholder: String,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    sweep: SweepArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    sweep: SweepArgs,
    #[command(flatten)]
    output: OutputArgs,
    /// Oracle step size
    #[arg(long, default_value_t = DEFAULT_VERIFY_H)]
    h: f64,
    /// Maximum allowed relative deviation (sup-norm normalized)
    #[arg(long, default_value_t = 5e-3)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum GammaModeArg {
    Derived,
    Paper,
}

impl From<GammaModeArg> for GammaMode {
    fn from(arg: GammaModeArg) -> Self {
        match arg {
            GammaModeArg::Derived => GammaMode::Derived,
            GammaModeArg::Paper => GammaMode::PaperLiteral,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(arg: FormatArg) -> Self {
        match arg {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyFile {
    w: u32,
    p: u32,
    coefficients: Vec<f64>,
}

fn load_poly(path: &Path) -> Result<SrivastavaPoly, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let file: PolyFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    Ok(SrivastavaPoly::new(file.w, file.p, file.coefficients)?)
}

fn build_spec(problem: &ProblemArgs, sweep: &SweepArgs) -> Result<SweepSpec, CliError> {
    let variant = match problem.theorem {
        1 => Variant::T1,
        2 => Variant::T2,
        3 => Variant::T3,
        _ => Variant::T4,
    };
    let template = ProblemTemplate {
        variant,
        n0: problem.n0,
        c: problem.c,
        d: problem.d,
        lambda: problem.lambda,
        poly: load_poly(&problem.poly)?,
    };
    let (alphas, t_start, t_end, t_steps) = if sweep.paper_grid {
        if !sweep.alphas.is_empty() {
            return Err(CliError::Validation(
                "--paper-grid fixes the alpha set; drop the --alpha flags".into(),
            ));
        }
        (PAPER_GRID_ALPHAS.to_vec(), 0.0, 4.0, 21)
    } else {
        (
            sweep.alphas.clone(),
            sweep.t_start,
            sweep.t_end,
            sweep.t_steps,
        )
    };
    let spec = SweepSpec {
        template,
        alphas,
        t_start,
        t_end,
        t_steps,
        gamma_mode: sweep.gamma_mode.into(),
    };
    spec.validate()?;
    Ok(spec)
}

fn write_output(output: &OutputArgs, text: &str) -> Result<(), CliError> {
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))
        }
    }
}

fn run_solve(args: &SolveArgs) -> Result<(), CliError> {
    let spec = build_spec(&args.problem, &args.sweep)?;
    let table = sweep::run_solve(&spec)?;
    let text = match args.output.format.into() {
        OutputFormat::Csv => rows::emit_csv(&table, &args.output.placeholder),
        OutputFormat::Json => rows::emit_json(&table)?,
    };
    write_output(&args.output, &text)
}

fn run_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let spec = build_spec(&args.problem, &args.sweep)?;
    let cells = sweep::run_verify(&spec, args.h, args.tol)?;
    let text = match args.output.format.into() {
        OutputFormat::Csv => sweep::emit_verify_csv(&cells),
        OutputFormat::Json => sweep::emit_verify_json(&cells)?,
    };
    write_output(&args.output, &text)?;
    let failed: Vec<&sweep::VerifyCell> = cells.iter().filter(|c| !c.pass).collect();
    if let Some(worst) = failed
        .iter()
        .max_by(|a, b| a.max_rel_dev.total_cmp(&b.max_rel_dev))
    {
        return Err(CliError::Verification(format!(
            "{} of {} cells exceed tol {}; worst alpha={} rel_dev={:.3e}",
            failed.len(),
            cells.len(),
            args.tol,
            worst.alpha,
            worst.max_rel_dev
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(args) | Command::Grid(args) => run_solve(args),
        Command::Verify(args) => run_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
