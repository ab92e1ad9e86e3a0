use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use krasner::report::Report;
use krasner_cli::commands::{self, IdealTarget};
use krasner_cli::suite::SuiteConfig;
use krasner_cli::CliError;

/// Krasner hyperrings: axioms, hyperideals, integral closure, valuations.
#[derive(Parser)]
#[command(name = "krasner", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the hyperring axioms of a fixture.
    Verify { fixture: String },
    /// Hyperfield and hyperdomain flags.
    Classify { fixture: String },
    /// Enumerate the hyperideals.
    Ideals { fixture: String },
    /// Integral closure of an ideal, with dependence witnesses.
    Closure {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        max_degree: Option<usize>,
        /// Radius of the definitional search on the value backend.
        #[arg(long, default_value_t = 3)]
        window: i64,
    },
    /// Radical of an ideal.
    Radical {
        #[command(flatten)]
        target: Target,
    },
    /// Quotient by a normal hyperideal.
    Quotient {
        fixture: String,
        #[arg(long)]
        ideal: String,
    },
    /// Run the acceptance battery.
    Suite {
        /// Run every criterion (the default when --only is absent).
        #[arg(long)]
        all: bool,
        /// Comma-separated criterion ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Randomly generated structures to add.
        #[arg(long, default_value_t = 0)]
        random: usize,
        /// Window radius for the value-backend oracle.
        #[arg(long, default_value_t = krasner::valuefield::window::DEFAULT_WINDOW)]
        window: i64,
        /// Restrict the finite criteria to these fixtures.
        #[arg(long)]
        fixture: Vec<String>,
    },
}

#[derive(Args)]
struct Target {
    /// Fixture name or path (omit with --value-rank).
    fixture: Option<String>,
    /// Comma-separated labels, or `cut:j=<level>,p=<...>`, `zero`, `unit`.
    #[arg(long)]
    ideal: String,
    /// Use the value hyperfield over ℤᵏ instead of a fixture.
    #[arg(long)]
    value_rank: Option<usize>,
    /// Prefix ring on the value backend: V, V1, …, T.
    #[arg(long, default_value = "V")]
    ring: String,
}

impl From<Target> for IdealTarget {
    fn from(t: Target) -> Self {
        IdealTarget {
            fixture: t.fixture,
            ideal: t.ideal,
            value_rank: t.value_rank,
            ring: t.ring,
        }
    }
}

fn run(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Verify { fixture } => commands::verify(&fixture),
        Command::Classify { fixture } => commands::classify_cmd(&fixture),
        Command::Ideals { fixture } => commands::ideals(&fixture),
        Command::Closure {
            target,
            max_degree,
            window,
        } => commands::closure(&target.into(), max_degree, window),
        Command::Radical { target } => commands::radical_cmd(&target.into()),
        Command::Quotient { fixture, ideal } => commands::quotient(&fixture, &ideal),
        Command::Suite {
            all,
            only,
            seed,
            random,
            window,
            fixture,
        } => {
            let only = if all { Vec::new() } else { only };
            let cfg = SuiteConfig {
                seed,
                random,
                window,
                fixtures: fixture,
                ..SuiteConfig::default()
            };
            commands::suite(&only, &cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            let text = match cli.format {
                Format::Text => report.to_string(),
                Format::Json => serde_json::to_string_pretty(&report).expect("reports serialize"),
            };
            // a closed pipe (`| head`) is not an error worth a panic
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
