//! Scenario runner for the evfusion combination rules.

pub mod render;
pub mod report;
pub mod run;
pub mod scenario;

use std::path::PathBuf;

pub use render::{render_json, render_table};
pub use report::{Report, RuleReport, REPORT_SCHEMA};
pub use run::{load_scenario, run_path, run_scenario, Options};
pub use scenario::{Mode, RuleId, Scenario, SCENARIO_SCHEMA};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid scenario: {0}")]
    Schema(String),
    #[error("invalid input: {0}")]
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 2,
            CliError::Schema(_) => 3,
            CliError::Validation(_) => 4,
        }
    }
}
