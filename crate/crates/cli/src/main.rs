//! `sigmadet` command line: point evaluation of the Weierstrass functions and
//! seeded verification campaigns over the determinant identities.
//!
//! Exit codes: 0 success (for `verify`: every residual within tolerance),
//! 1 campaign ran but exceeded its tolerance, 2 configuration or domain
//! error. On exit 2 the only stdout output is one machine-parsable line
//! `error kind=<kind> arg=<argument>`.

mod literal;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use sigmadet::{run_campaign, CampaignConfig, Error, IdentityKind, Lattice, Weierstrass};

use literal::{format_complex, parse_complex, parse_lattice};
use output::OutputFormat;

#[derive(Parser)]
#[command(
    name = "sigmadet",
    version,
    about = "Weierstrass functions and their determinant identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate sigma, zeta, pe, or a pe derivative at one point.
    Eval(EvalArgs),
    /// Run a seeded verification campaign for one identity.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Lattice generators, two complex literals: "2,2i".
    #[arg(long)]
    lattice: String,
    /// Function to evaluate.
    #[arg(long = "fn", value_enum)]
    function: EvalFn,
    /// Argument, a complex literal: "0.5+0.5i".
    #[arg(long)]
    u: String,
    /// Derivative order (pe_k only).
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalFn {
    Sigma,
    Zeta,
    Pe,
    #[value(name = "pe_k")]
    PeK,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity to verify.
    #[arg(long, value_enum)]
    identity: IdentityArg,
    /// Lattice generators, two complex literals.
    #[arg(long, default_value = "2,2i")]
    lattice: String,
    /// Identity order n (the multiplier m for --identity multiplication).
    #[arg(long)]
    n: u32,
    /// Number of seeded trials.
    #[arg(long, default_value_t = 100)]
    trials: u32,
    /// Random seed; defaults to $SIGMADET_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Pass/fail threshold on the maximal relative residual.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Report format.
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdentityArg {
    Fs,
    Hermite,
    Kiepert,
    Confluence,
    Multiplication,
}

impl From<IdentityArg> for IdentityKind {
    fn from(arg: IdentityArg) -> Self {
        match arg {
            IdentityArg::Fs => IdentityKind::Fs,
            IdentityArg::Hermite => IdentityKind::Hermite,
            IdentityArg::Kiepert => IdentityKind::Kiepert,
            IdentityArg::Confluence => IdentityKind::Confluence,
            IdentityArg::Multiplication => IdentityKind::Multiplication,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum FormatArg {
    Json,
    Csv,
    Human,
}

impl From<FormatArg> for OutputFormat {
    fn from(arg: FormatArg) -> Self {
        match arg {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Human => OutputFormat::Human,
        }
    }
}

/// A domain or configuration failure destined for the one-line contract.
struct CliError {
    kind: &'static str,
    arg: String,
}

impl CliError {
    fn new(kind: &'static str, arg: impl Into<String>) -> Self {
        CliError {
            kind,
            arg: arg.into(),
        }
    }

    fn from_core(error: Error, arg: &str) -> Self {
        let leaked: &'static str = match error.kind() {
            "degenerate-lattice" => "degenerate-lattice",
            "too-close-to-pole" => "too-close-to-pole",
            "invalid-config" => "invalid-config",
            "order-too-large" => "order-too-large",
            "dimension-too-large" => "dimension-too-large",
            "step-too-large" => "step-too-large",
            "non-finite-input" => "non-finite-input",
            "self-check-failed" => "self-check-failed",
            "slow-convergence" => "slow-convergence",
            other => {
                debug_assert!(false, "unmapped error kind {other}");
                "internal-error"
            }
        };
        CliError::new(leaked, arg)
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Eval(args) => match run_eval(&args) {
            Ok(line) => {
                println!("{line}");
                0
            }
            Err(e) => {
                println!("error kind={} arg={}", e.kind, e.arg);
                2
            }
        },
        Command::Verify(args) => match run_verify(&args) {
            Ok((report, pass)) => {
                print!("{report}");
                if pass {
                    0
                } else {
                    1
                }
            }
            Err(e) => {
                println!("error kind={} arg={}", e.kind, e.arg);
                2
            }
        },
    };
    std::process::exit(code);
}

fn run_eval(args: &EvalArgs) -> Result<String, CliError> {
    let (omega1, omega2) =
        parse_lattice(&args.lattice).map_err(|_| CliError::new("invalid-literal", "--lattice"))?;
    let u = parse_complex(&args.u).map_err(|_| CliError::new("invalid-literal", "--u"))?;
    let lattice = Lattice::new(omega1, omega2).map_err(|e| CliError::from_core(e, "--lattice"))?;
    let eval = Weierstrass::new(lattice).map_err(|e| CliError::from_core(e, "--lattice"))?;
    let value: Complex64 = match args.function {
        EvalFn::Sigma => eval.sigma(u),
        EvalFn::Zeta => eval.zeta(u),
        EvalFn::Pe => eval.pe(u),
        EvalFn::PeK => {
            let k = args
                .k
                .ok_or_else(|| CliError::new("invalid-config", "--k"))?;
            eval.pe_derivative(u, k)
        }
    }
    .map_err(|e| CliError::from_core(e, "--u"))?;
    Ok(format_complex(value))
}

fn run_verify(args: &VerifyArgs) -> Result<(String, bool), CliError> {
    let (omega1, omega2) =
        parse_lattice(&args.lattice).map_err(|_| CliError::new("invalid-literal", "--lattice"))?;
    let seed = match args.seed {
        Some(seed) => seed,
        None => match std::env::var("SIGMADET_SEED") {
            Ok(text) => text
                .parse::<u64>()
                .map_err(|_| CliError::new("invalid-config", "SIGMADET_SEED"))?,
            Err(_) => 0,
        },
    };
    let config = CampaignConfig {
        identity: args.identity.into(),
        lattice: (omega1, omega2),
        n_or_m: args.n,
        trials: args.trials,
        seed,
        tolerance: args.tol,
    };
    let result = run_campaign(&config).map_err(|e| {
        let arg = match &e {
            Error::DegenerateLattice { .. } | Error::SelfCheckFailed { .. } => "--lattice",
            Error::InvalidConfig { detail } if detail.contains("trials") => "--trials",
            Error::InvalidConfig { detail } if detail.contains("tolerance") => "--tol",
            _ => "--n",
        };
        CliError::from_core(e, arg)
    })?;
    let pass = result.summary.pass;
    Ok((output::render(&config, &result, args.format.into()), pass))
}
