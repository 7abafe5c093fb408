//! `obsplit` — exact observer splits of electromagnetic fields on a flat
//! chart, plus identity suites and connection inspection.
//!
//! Exit codes: 0 = PASS, 1 = a residual or identity failed, 2 = input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use obsplit_cli::{build_report, bundle, run_check, CliError, ScenarioFile};

#[derive(Parser)]
#[command(
    name = "obsplit",
    version,
    about = "Exact observer splitting of electromagnetic fields on a flat chart"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// Human-readable text.
    Text,
    /// JSON with canonically rendered expressions.
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Split a scenario into observer fields and verify the field equations.
    Split {
        /// Scenario file (JSON).
        file: PathBuf,
    },
    /// Run an identity suite against the scenario's observer.
    Check {
        /// Scenario file (JSON); only `chart` and `observer` are used.
        file: PathBuf,
        /// decomposition | temperley-lieb | prop21 | prop47 | lemma42 | all
        #[arg(long)]
        suite: String,
    },
    /// Inspect a connection on a product bundle chart.
    Ehresmann {
        /// Built-in demo: product | u1-like | non-principal.
        #[arg(long, conflicts_with = "spec")]
        demo: Option<String>,
        /// Connection spec file (JSON with base, fiber, A).
        #[arg(long, value_name = "PATH")]
        spec: Option<PathBuf>,
    },
}

/// Warn when the declared time direction has constant negative norm.
fn warn_if_spacelike(built: &obsplit_cli::BuiltScenario) {
    let obs = built.scenario.observer();
    if let Some(norm) = built.minkowski.norm_squared(obs.t()).as_rational() {
        if norm < obsplit_core::rat_int(0) {
            eprintln!(
                "warning: the observer direction is spacelike (g(T,T) = {norm}); \
                 the split is still exact, but T is not a time direction"
            );
        }
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let (text, pass) = match &cli.command {
        Command::Split { file } => {
            let scenario = ScenarioFile::load(file)?;
            let built = scenario.build()?;
            warn_if_spacelike(&built);
            let (report, pass) = build_report(&built);
            let text = match cli.format {
                Format::Text => report.to_text(),
                Format::Structured => report.to_json(),
            };
            (text, pass)
        }
        Command::Check { file, suite } => {
            let scenario = ScenarioFile::load(file)?;
            let report = run_check(&scenario, suite)?;
            let text = match cli.format {
                Format::Text => report.to_text(),
                Format::Structured => report.to_json(),
            };
            (text, report.pass())
        }
        Command::Ehresmann { demo, spec } => {
            let report = match (demo, spec) {
                (Some(name), None) => bundle::run_demo(name)?,
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                        path: path.display().to_string(),
                        source,
                    })?;
                    let file: bundle::BundleSpecFile = serde_json::from_str(&text)?;
                    bundle::run_spec(&file)?
                }
                _ => {
                    return Err(CliError::Field {
                        path: "ehresmann".to_string(),
                        message: "provide exactly one of --demo <name> or --spec <file>"
                            .to_string(),
                    })
                }
            };
            let text = match cli.format {
                Format::Text => report.to_text(),
                Format::Structured => report.to_json(),
            };
            (text, report.pass())
        }
    };

    match &cli.output {
        Some(path) => std::fs::write(path, &text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => print!("{text}"),
    }
    Ok(pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
