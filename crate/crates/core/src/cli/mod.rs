//! The command-line front end: configuration, the analysis pipeline and rendering.

pub mod config;
pub mod render;
pub mod report;

pub use config::{parse_outputs, parse_weights, Format, Output, RunConfig};
pub use render::{render, render_dot, render_text};
pub use report::{default_n_max, run, Check, Report, Status, SCHEMA_VERSION};

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

/// Exit code for an error raised before a report exists.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Invalid(_) | Error::ArityMismatch { .. } => EXIT_PARSE,
        Error::Invariant(_) | Error::NotStabilized { .. } => EXIT_INVARIANT,
    }
}
