//! Command line front end: workspace files, subcommands and report output.

pub mod commands;
pub mod encode;
pub mod error;
pub mod render;
pub mod workspace;

pub use commands::{run, Command, Outcome};
pub use error::{CliError, CliResult};
pub use workspace::Workspace;

/// Exit status for a passing check.
pub const EXIT_PASS: i32 = 0;
/// Exit status when the mathematics says no; the report carries a witness.
pub const EXIT_FAIL: i32 = 1;
/// Exit status for unreadable or inconsistent input.
pub const EXIT_INPUT: i32 = 2;

pub fn load_workspace(path: &str) -> CliResult<Workspace> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })?;
    Workspace::parse(&text)
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
