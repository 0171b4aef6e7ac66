use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use umbral_cli::table::{self, Format};
use umbral_cli::verify::{self, Suite};
use umbral_cli::{configure_threads, eval, ExitStatus};

/// Exact q-series tables and numeric checks for the E8³ umbral moonshine module.
#[derive(Parser)]
#[command(name = "umbral", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Exact,
    Numeric,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficient table of component 1 or 7 for the classes 1A, 2A, 3A.
    Table {
        #[arg(long)]
        component: i64,
        /// Last row label (exponent numerator over 120).
        #[arg(long, allow_hyphen_values = true)]
        max_row: i64,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Run the exact and/or numeric verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 25)]
        order: i64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Perturbs one identity so the exact suite must fail.
        #[arg(long, hide = true)]
        inject_corruption: bool,
    },
    /// Evaluate H_{g,r}(τ), optionally completed.
    Eval {
        #[arg(long)]
        class: String,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        /// Point in the upper half-plane, written x+yi.
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long)]
        completion: bool,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(ExitStatus::Usage as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        return usage(e);
    }
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Table { component, max_row, format } => {
            let format = match format {
                FormatArg::Csv => Format::Csv,
                FormatArg::Json => Format::Json,
            };
            match table::render(component, max_row, format) {
                Ok(s) => {
                    let _ = out.write_all(s.as_bytes());
                    ExitCode::SUCCESS
                }
                Err(e) => usage(e),
            }
        }
        Command::Verify { suite, order, tol, inject_corruption } => {
            let suite = match suite {
                SuiteArg::Exact => Suite::Exact,
                SuiteArg::Numeric => Suite::Numeric,
                SuiteArg::All => Suite::All,
            };
            match verify::run(suite, order, tol, inject_corruption) {
                Ok(lines) => {
                    let mut ok = true;
                    for line in &lines {
                        ok &= line.passed;
                        let _ = writeln!(out, "{line}");
                    }
                    let failed = lines.iter().filter(|l| !l.passed).count();
                    let _ = writeln!(out, "{} checks, {failed} failed", lines.len());
                    if ok {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(ExitStatus::VerificationFailed as u8)
                    }
                }
                Err(e) => usage(e),
            }
        }
        Command::Eval { class, r, tau, completion, tol } => match eval::evaluate(&class, r, &tau, completion, tol) {
            Ok(Ok(v)) => {
                let _ = out.write_all(eval::format_output(&v).as_bytes());
                ExitCode::SUCCESS
            }
            Ok(Err(e)) => {
                eprintln!("error: {e}");
                ExitCode::from(ExitStatus::VerificationFailed as u8)
            }
            Err(e) => usage(e),
        },
    }
}
