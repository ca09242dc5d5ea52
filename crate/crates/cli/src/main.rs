mod commands;
mod failure;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::failure::Failure;

#[derive(Debug, Parser)]
#[command(name = "junction", version, about = "Self-adjoint extensions of -d²/dx² across an excised junction")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    options: Options,
}

#[derive(Debug, Args)]
struct Options {
    /// Junction half-length Λ ≥ 0.
    #[arg(long, global = true, allow_hyphen_values = true, default_value_t = 0.0)]
    lambda: f64,

    /// Tolerance for unitarity, class-α and flux checks. For `verify`,
    /// overrides every suite tolerance when given.
    #[arg(long, global = true, allow_hyphen_values = true)]
    tol: Option<f64>,

    #[arg(long, global = true, allow_hyphen_values = true, default_value_t = 1e-2)]
    k_min: f64,

    #[arg(long, global = true, allow_hyphen_values = true, default_value_t = 1e2)]
    k_max: f64,

    /// Number of log-spaced wavenumbers, endpoints included.
    #[arg(long, global = true, default_value_t = 256)]
    k_steps: usize,

    #[arg(long, global = true, value_enum, default_value_t = SideArg::Left)]
    side: SideArg,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, default_value_t = 1000)]
    samples: usize,

    /// Upper end of the Λ range sampled by `verify`.
    #[arg(long, global = true, allow_hyphen_values = true, default_value_t = 3.0)]
    lambda_max: f64,

    /// Output path, `-` for standard output.
    #[arg(long, global = true, default_value = "-")]
    output: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Args)]
struct Payload {
    /// JSON payload; standard input when omitted or `-`.
    file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// U → (γ₁, γ₂, γ₃) with U = γ₃·[[γ₁, -γ₂*], [γ₂, γ₁*]]. Payload {"u": [[z, z], [z, z]]}.
    Decompose(Payload),
    /// Non-diagonal U → class-α vector. Payload {"u": ...}.
    U2alpha(Payload),
    /// Class-α vector → U. Payload {"alpha": [z, z, z, z]}.
    Alpha2u(Payload),
    /// Diagonal U → (ρ₊, ρ₋). Payload {"u": ...}.
    U2rho(Payload),
    /// (ρ₊, ρ₋) → diagonal U. Payload {"rho": [x, x]}, x a number or "inf".
    Rho2u(Payload),
    /// Split α into e^{iθ} times a real unimodular matrix. Payload {"alpha": ...}.
    Phase(Payload),
    /// Reflection/transmission sweep as CSV. Payload {"alpha": ...} or {"rho": ...}.
    Scatter(Payload),
    /// Bound states. Payload {"alpha": ...} or {"rho": ...}.
    Bound(Payload),
    /// Seeded property suites; JSON report.
    Verify,
}

/// Validated settings shared by the subcommands.
#[derive(Debug, Clone)]
pub struct CliConfig {
    pub lambda: f64,
    pub tol: f64,
    pub tol_explicit: bool,
    pub k_min: f64,
    pub k_max: f64,
    pub k_steps: usize,
    pub side: junction::Side,
    pub seed: u64,
    pub samples: usize,
    pub lambda_max: f64,
    pub output: PathBuf,
}

pub const DEFAULT_TOL: f64 = 1e-12;

impl CliConfig {
    fn from_options(o: Options) -> Result<Self, Failure> {
        let positive = |name: &str, x: f64| {
            if x.is_finite() && x > 0.0 {
                Ok(())
            } else {
                Err(Failure::config(format!("--{name} must be positive and finite, got {x}")))
            }
        };
        if !(o.lambda.is_finite() && o.lambda >= 0.0) {
            return Err(Failure::config(format!("--lambda must be finite and >= 0, got {}", o.lambda)));
        }
        if !(o.lambda_max.is_finite() && o.lambda_max >= 0.0) {
            return Err(Failure::config(format!(
                "--lambda-max must be finite and >= 0, got {}",
                o.lambda_max
            )));
        }
        if let Some(tol) = o.tol {
            positive("tol", tol)?;
        }
        positive("k-min", o.k_min)?;
        positive("k-max", o.k_max)?;
        if o.k_min >= o.k_max {
            return Err(Failure::config(format!(
                "--k-min ({}) must be below --k-max ({})",
                o.k_min, o.k_max
            )));
        }
        if o.k_steps < 2 {
            return Err(Failure::config(format!("--k-steps must be at least 2, got {}", o.k_steps)));
        }
        if o.samples == 0 {
            return Err(Failure::config("--samples must be at least 1"));
        }
        Ok(Self {
            lambda: o.lambda,
            tol: o.tol.unwrap_or(DEFAULT_TOL),
            tol_explicit: o.tol.is_some(),
            k_min: o.k_min,
            k_max: o.k_max,
            k_steps: o.k_steps,
            side: match o.side {
                SideArg::Left => junction::Side::Left,
                SideArg::Right => junction::Side::Right,
            },
            seed: o.seed,
            samples: o.samples,
            lambda_max: o.lambda_max,
            output: o.output,
        })
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = CliConfig::from_options(cli.options)?;
    match cli.command {
        Command::Decompose(p) => commands::decompose(&cfg, p.file.as_deref()),
        Command::U2alpha(p) => commands::u2alpha(&cfg, p.file.as_deref()),
        Command::Alpha2u(p) => commands::alpha2u(&cfg, p.file.as_deref()),
        Command::U2rho(p) => commands::u2rho(&cfg, p.file.as_deref()),
        Command::Rho2u(p) => commands::rho2u(&cfg, p.file.as_deref()),
        Command::Phase(p) => commands::phase(&cfg, p.file.as_deref()),
        Command::Scatter(p) => commands::scatter(&cfg, p.file.as_deref()),
        Command::Bound(p) => commands::bound(&cfg, p.file.as_deref()),
        Command::Verify => commands::verify(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {failure}");
            failure.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(args: &[&str]) -> Result<CliConfig, Failure> {
        let mut argv = vec!["junction", "verify"];
        argv.extend_from_slice(args);
        CliConfig::from_options(Cli::try_parse_from(argv).unwrap().options)
    }

    #[test]
    fn defaults() {
        let cfg = config(&[]).unwrap();
        assert_eq!(cfg.tol, DEFAULT_TOL);
        assert!(!cfg.tol_explicit);
        assert_eq!((cfg.k_min, cfg.k_max, cfg.k_steps), (1e-2, 1e2, 256));
        assert_eq!(cfg.samples, 1000);
    }

    #[test]
    fn rejects_bad_settings() {
        for args in [
            &["--k-steps", "1"][..],
            &["--k-min", "0"],
            &["--k-min", "5", "--k-max", "5"],
            &["--tol", "0"],
            &["--lambda", "nan"],
            &["--lambda-max", "-1"],
            &["--samples", "0"],
        ] {
            assert!(config(args).is_err(), "{args:?}");
        }
    }
}
