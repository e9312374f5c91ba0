//! `matexp`: matrix exponentials from the command line.
//!
//! Exit status: 0 on success, 1 on input errors (bad flags, unreadable or
//! malformed files, invalid parameters), 2 on numerical failures
//! (non-convergence, realification failure, overflow).

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use matexp::{
    build_symbolic_exponential_with, characteristic_polynomial, cluster_spectrum,
    default_cluster_tol, expm_oracle, find_roots_seeded, refine_spectrum, solve_ivp_with,
    stability_report_for, BuildConfig, RealSquareMatrix, SymbolicExponential,
};
use matexp_cli::io::{self, Format};
use matexp_cli::render;

#[derive(Parser)]
#[command(
    name = "matexp",
    version,
    about = "Matrix exponentials e^{tA} via characteristic polynomial and partial fractions",
    after_help = "Matrix files are JSON {\"n\": 2, \"entries\": [[1,2],[4,3]]} or CSV rows; \
                  the format is inferred from the file extension. EXPM_SEED overrides the \
                  root finder's deterministic perturbation seed."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the monic characteristic polynomial coefficients, ascending, as a JSON array
    Charpoly {
        /// Matrix file (JSON or CSV)
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
    },
    /// Print the distinct eigenvalues with algebraic multiplicities as JSON
    Spectrum {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        /// Root clustering tolerance (default: 1e-6 scaled by the largest root modulus)
        #[arg(long, allow_hyphen_values = true)]
        tol: Option<f64>,
    },
    /// Evaluate exp(tA) and print it as a matrix document
    Expm {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        /// Evaluation time
        #[arg(short = 't', long = "time", allow_hyphen_values = true)]
        t: f64,
        /// Root clustering tolerance override
        #[arg(long, allow_hyphen_values = true)]
        tol: Option<f64>,
        /// Also print the relative deviation from the scaling-and-squaring oracle on stderr
        #[arg(long = "check-oracle")]
        check_oracle: bool,
    },
    /// Print exp(tA) as a closed form with one group per eigenvalue
    ClosedForm {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        /// Emit LaTeX instead of plain text
        #[arg(long)]
        latex: bool,
        /// Render conjugate eigenvalue pairs as real cos/sin groups
        #[arg(long)]
        realform: bool,
    },
    /// Sample the solution of x' = Ax, x(0) = x0 and write CSV rows t,x1,...,xn
    Trajectory {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        /// Initial state: JSON array of n reals
        #[arg(long)]
        x0: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        t0: f64,
        #[arg(long, allow_hyphen_values = true)]
        t1: f64,
        /// Number of steps; the output has steps+1 rows including both endpoints
        #[arg(long)]
        steps: usize,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report the spectral abscissa and, for stable systems, a decay certificate as JSON
    Stability {
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        #[arg(long, default_value_t = 50.0)]
        horizon: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

enum CliError {
    Input(String),
    Numerical(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Numerical(m) => m,
        }
    }
}

impl From<io::DocumentError> for CliError {
    fn from(e: io::DocumentError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<matexp::Error> for CliError {
    fn from(e: matexp::Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Numerical(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                ExitCode::SUCCESS
            } else {
                // clap prints usage with the error; the exit-status
                // contract maps every input problem to 1
                eprintln!("{e}");
                ExitCode::from(1)
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn root_seed() -> Result<u64, CliError> {
    match std::env::var("EXPM_SEED") {
        Ok(text) => text
            .trim()
            .parse::<u64>()
            .map_err(|_| CliError::Input(format!("EXPM_SEED must be an unsigned integer, got {text:?}"))),
        Err(_) => Ok(matexp::rootfind::DEFAULT_SEED),
    }
}

fn load_matrix(path: &Path) -> Result<RealSquareMatrix, CliError> {
    let doc = io::parse_matrix_document(path, Format::infer(path))?;
    let matrix = doc.to_matrix()?;
    if matrix.order() > 32 || matrix.norm_inf() > 1e3 {
        eprintln!(
            "warning: matrix is outside the documented accuracy envelope \
             (order <= 32, row-sum norm <= 1e3); coefficients may lose precision"
        );
    }
    Ok(matrix)
}

fn build(a: &RealSquareMatrix, tol: Option<f64>) -> Result<SymbolicExponential, CliError> {
    let config = BuildConfig { cluster_tol: tol, root_seed: root_seed()? };
    let s = build_symbolic_exponential_with(a, &config)?;
    for w in s.warnings() {
        eprintln!("warning: {w}");
    }
    Ok(s)
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Charpoly { input } => {
            let a = load_matrix(&input)?;
            let p = characteristic_polynomial(&a)?;
            let coeffs: Vec<f64> = p.coeffs().iter().map(|c| c.re).collect();
            println!("{}", serde_json::to_string(&coeffs).expect("serializing a float array"));
            Ok(())
        }
        Command::Spectrum { input, tol } => {
            let a = load_matrix(&input)?;
            let p = characteristic_polynomial(&a)?;
            let roots = find_roots_seeded(&p, root_seed()?)?;
            let tol = match tol {
                Some(t) if t.is_finite() && t > 0.0 => t,
                Some(t) => {
                    return Err(CliError::Input(format!("--tol must be positive, got {t}")))
                }
                None => default_cluster_tol(&roots),
            };
            let spectrum = refine_spectrum(&p, &cluster_spectrum(&roots, tol)?);
            let items: Vec<serde_json::Value> = spectrum
                .items()
                .iter()
                .map(|it| {
                    serde_json::json!({
                        "lambda": [it.lambda.re, it.lambda.im],
                        "multiplicity": it.multiplicity,
                    })
                })
                .collect();
            println!("{}", serde_json::Value::Array(items));
            Ok(())
        }
        Command::Expm { input, t, tol, check_oracle } => {
            let a = load_matrix(&input)?;
            if !t.is_finite() {
                return Err(CliError::Input(format!("-t must be finite, got {t}")));
            }
            let s = build(&a, tol)?;
            let e = s.evaluate(t)?;
            println!("{}", io::write_matrix_json(&e, None));
            if check_oracle {
                let reference = expm_oracle(&a, t)?;
                let mut diff = 0.0;
                for (g, w) in e.entries().iter().zip(reference.entries()) {
                    diff += (g - w) * (g - w);
                }
                let rel = diff.sqrt() / reference.norm_fro().max(f64::MIN_POSITIVE);
                eprintln!("oracle relative deviation: {rel:.3e}");
            }
            Ok(())
        }
        Command::ClosedForm { input, latex, realform } => {
            let a = load_matrix(&input)?;
            let s = build(&a, None)?;
            let rendering = render::render_closed_form(&s, realform);
            if latex {
                print!("{}", rendering.latex);
            } else {
                print!("{}", rendering.plain_text);
            }
            Ok(())
        }
        Command::Trajectory { input, x0, t0, t1, steps, out } => {
            let a = load_matrix(&input)?;
            let state = io::parse_vector_document(&x0)?;
            if state.len() != a.order() {
                return Err(CliError::Input(format!(
                    "initial state has {} components, matrix order is {}",
                    state.len(),
                    a.order()
                )));
            }
            if !(t0.is_finite() && t1.is_finite() && t1 > t0) {
                return Err(CliError::Input(format!("need finite t1 > t0, got t0={t0}, t1={t1}")));
            }
            if steps == 0 {
                return Err(CliError::Input("--steps must be at least 1".into()));
            }
            let times: Vec<f64> =
                (0..=steps).map(|i| t0 + (t1 - t0) * i as f64 / steps as f64).collect();
            let config = BuildConfig { cluster_tol: None, root_seed: root_seed()? };
            let trajectory = solve_ivp_with(&a, &state, &times, &config)?;
            let mut csv = String::new();
            csv.push('t');
            for k in 1..=a.order() {
                csv.push_str(&format!(",x{k}"));
            }
            csv.push('\n');
            for (t, x) in trajectory.times.iter().zip(&trajectory.states) {
                csv.push_str(&format!("{t}"));
                for v in x {
                    csv.push_str(&format!(",{v}"));
                }
                csv.push('\n');
            }
            match out {
                Some(path) => std::fs::write(&path, csv).map_err(|e| {
                    CliError::Input(format!("cannot write {}: {e}", path.display()))
                })?,
                None => {
                    std::io::stdout()
                        .write_all(csv.as_bytes())
                        .map_err(|e| CliError::Input(format!("cannot write stdout: {e}")))?;
                }
            }
            Ok(())
        }
        Command::Stability { input, horizon, samples } => {
            let a = load_matrix(&input)?;
            if !horizon.is_finite() || horizon <= 0.0 {
                return Err(CliError::Input(format!("--horizon must be positive, got {horizon}")));
            }
            if samples == 0 {
                return Err(CliError::Input("--samples must be at least 1".into()));
            }
            let s = build(&a, None)?;
            let report = stability_report_for(&s, horizon, samples)?;
            let value = serde_json::json!({
                "spectral_abscissa": report.spectral_abscissa,
                "is_asymptotically_stable": report.is_asymptotically_stable,
                "alpha": report.alpha,
                "C": report.c,
                "samples_checked": report.samples_checked,
            });
            println!("{value}");
            Ok(())
        }
    }
}
