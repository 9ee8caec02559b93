//! Session scripts for `oigb-core`: a small language modelled on interactive
//! sessions, its parser, and a runner with text and JSON output.

pub mod exec;
pub mod script;

pub use exec::{run, Flags, OutputFormat, Report};
pub use script::{parse, Script, ScriptError};

/// Parses and runs `source`; parse errors become the report's error.
pub fn run_source(source: &str, flags: &Flags) -> Report {
    match parse(source) {
        Ok(script) => run(&script, flags),
        Err(e) => Report {
            outputs: Vec::new(),
            error: Some(e),
        },
    }
}
