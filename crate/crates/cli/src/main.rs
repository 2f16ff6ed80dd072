use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kgcavity_cli::commands::{self, Report};
use kgcavity_cli::config::{Format, RunConfig};
use kgcavity_cli::output::{render, Meta};
use kgcavity_cli::CliError;

/// Bogoliubov coefficients of a scalar field in a cavity with moving walls.
#[derive(Debug, Parser)]
#[command(name = "kgcavity", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML run configuration; defaults are used for absent keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file (overrides `output` in the config; stdout by default).
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Output format (overrides `format` in the config).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Reserved: the engine is deterministic; the value is recorded in the
    /// JSON metadata only.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Log progress and diagnostics to stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Static mode spectrum of the cavity.
    Spectrum,
    /// Mode pairs resonant with the drive frequency.
    Resonances,
    /// First-order Bogoliubov coefficients as a time series.
    Evolve,
    /// Non-perturbative transformation U(t, t0) (one-dimensional cavities).
    EvolveExact,
    /// Closed-form, cross-method and invariant checks.
    Validate,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Resonances => "resonances",
            Command::Evolve => "evolve",
            Command::EvolveExact => "evolve-exact",
            Command::Validate => "validate",
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(format) = cli.format {
        cfg.format = format;
    }
    if let Some(path) = &cli.output {
        cfg.output = Some(path.clone());
    }
    let report: Report = match cli.command {
        Command::Spectrum => commands::spectrum(&cfg),
        Command::Resonances => commands::resonances(&cfg),
        Command::Evolve => commands::evolve(&cfg),
        Command::EvolveExact => commands::evolve_exact(&cfg),
        Command::Validate => commands::validate(&cfg),
    }?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let meta = Meta {
        command: cli.command.name().to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: cli.seed,
        config: cfg.clone(),
        warnings: report.warnings.clone(),
    };
    let text = render(cfg.format, meta, &report.table);
    match &cfg.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Config(format!("cannot write output {}: {e}", path.display())))?,
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Config(format!("cannot write to stdout: {e}")))?,
    }
    match report.failure {
        Some(msg) => Err(CliError::Validation(msg)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.verbose { "debug" } else { "error" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
