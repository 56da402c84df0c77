//! Command-line front end for `ngr-core`: argument parsing, JSON inputs and
//! deterministic reports.

pub mod args;
pub mod commands;
pub mod config;
pub mod report;

use args::{Cli, Format};

/// Exit status for a completed run: 0 if every certificate passed, 2 otherwise.
pub fn exit_code(report: &report::Report) -> i32 {
    if report.passed() {
        0
    } else {
        2
    }
}

pub fn render(cli: &Cli, report: &report::Report) -> String {
    match cli.common.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    }
}
