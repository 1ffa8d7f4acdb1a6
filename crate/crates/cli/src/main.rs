use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use evfusion_cli::{render_json, render_table, run_path, Mode, Options};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Table,
    Json,
}

/// Combine belief assignments described in a scenario file.
#[derive(Debug, Parser)]
#[command(name = "evfusion", version)]
struct Args {
    /// Scenario file (JSON).
    scenario: PathBuf,
    /// Comma-separated rule ids; overrides the scenario's list.
    #[arg(long, value_delimiter = ',')]
    rules: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Overrides the scenario's mode.
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Allowed distance of a mass sum from one.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Print ∩ and ∪ instead of & and | in tables.
    #[arg(long)]
    unicode: bool,
    /// Report wall-clock time per rule.
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let options = Options { rules: args.rules, mode: args.mode, tolerance: args.tolerance, timing: args.timing };
    match run_path(&args.scenario, &options) {
        Ok(report) => {
            match args.format {
                Format::Table => print!("{}", render_table(&report, args.unicode)),
                Format::Json => print!("{}", render_json(&report)),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
