use std::io::{self, IsTerminal};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fermat_cli::{lexer::parse_decimal, run_suite, CliError, DisplayOptions, Session, SuiteConfig};
use fermat_core::{parse_rational, Precision, Rational};

#[derive(Parser)]
#[command(name = "fermat", version, about = "Exact arithmetic with nilpotent infinitesimals")]
struct Cli {
    /// Print Fermat reals as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Working precision in bits for irrational intermediate values.
    #[arg(long, global = true, env = "FERMAT_PRECISION", default_value_t = Precision::DEFAULT_BITS)]
    precision: u32,
    /// Relative tolerance for rational display of approximate values.
    #[arg(long, global = true, value_parser = parse_tolerance, default_value = "1e-9")]
    rats_tol: Rational,
    /// Print approximate values as decimals instead of fractions.
    #[arg(long, global = true)]
    no_rats: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Interactive session reading statements from stdin.
    Repl,
    /// Evaluate statements and print the last value.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Run a randomized law suite: core, metrics, powers, ideals, fractional or all.
    Check {
        suite: String,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn parse_tolerance(s: &str) -> Result<Rational, String> {
    let r = parse_decimal(s).or_else(|| parse_rational(s)).ok_or_else(|| format!("invalid tolerance `{s}`"))?;
    if r <= Rational::default() {
        return Err("the tolerance must be positive".into());
    }
    Ok(r)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let display = DisplayOptions {
        rats: !cli.no_rats,
        rats_tol: cli.rats_tol.clone(),
    };
    let precision = Precision(cli.precision);
    let mut session = Session::new(precision, display, cli.json);
    match cli.command {
        Command::Repl => {
            let stdin = io::stdin();
            let prompt = stdin.is_terminal();
            if let Err(e) = fermat_cli::repl::run(&mut session, stdin.lock(), &mut io::stdout(), &mut io::stderr(), prompt) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Command::Eval { expr } => match session.eval_str(&expr) {
            Ok(v) => {
                println!("{}", session.format_value(&v));
                ExitCode::SUCCESS
            }
            Err(e) => fail(&e),
        },
        Command::Check { suite, cases, seed } => {
            let mut cfg = SuiteConfig {
                cases,
                precision,
                ..SuiteConfig::default()
            };
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            match run_suite(&suite, &cfg) {
                Ok(report) => {
                    println!("{report}");
                    if report.ok() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(3)
                    }
                }
                Err(e) => fail(&e),
            }
        }
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}
