use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use ncdef_cli::{load_workspace, render, run, to_json, CliError, Command, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};
use ncdef_core::linalg::SearchConfig;
use serde_json::json;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Exact computations with quiver algebras, their modules and deformations.
#[derive(Debug, Parser)]
#[command(name = "ncdef", version)]
struct Cli {
    /// Workspace file (JSON).
    #[arg(long, short, global = true)]
    input: Option<String>,
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Seed for randomized searches.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

fn emit(format: Format, value: &serde_json::Value) {
    match format {
        Format::Json => print!("{}", to_json(value)),
        Format::Text => print!("{}", render::to_text(value)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = SearchConfig::from_env();
    if let Some(seed) = cli.seed {
        cfg = cfg.with_seed(seed);
    }
    let result = (|| -> Result<_, CliError> {
        let ws = match &cli.input {
            Some(path) => Some(load_workspace(path)?),
            None => None,
        };
        if cli.command.needs_workspace() && ws.is_none() {
            return Err(CliError::input("--input", "this command needs a workspace file"));
        }
        run(ws.as_ref(), &cli.command, &cfg)
    })();
    match result {
        Ok(outcome) => {
            emit(cli.format, &outcome.report);
            ExitCode::from(if outcome.passed { EXIT_PASS } else { EXIT_FAIL } as u8)
        }
        Err(e) => {
            let path = match &e {
                CliError::Input { path, .. } => Some(path.clone()),
                _ => None,
            };
            eprintln!("error: {e}");
            if let Format::Json = cli.format {
                emit(cli.format, &json!({"error": e.to_string(), "path": path}));
            }
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
