//! Batch front end for `calkit-core`: configuration, check suites and
//! deterministic reports.

pub mod config;
pub mod output;
pub mod suites;

use calkit_core::Error;

pub use config::{Command, ConfigError, Format, RawConfig, RunConfig};
pub use output::{render, ReportEnvelope};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Exit status for an error raised while running a suite: problems traceable
/// to the inputs map to the configuration code.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Configuration(_)
        | Error::InvalidParams(_)
        | Error::Parse(_)
        | Error::Proximity { .. }
        | Error::TruncationTooShort { .. }
        | Error::Domain { .. }
        | Error::SingularRepresentation(_) => EXIT_CONFIG,
        _ => EXIT_INTERNAL,
    }
}

pub fn run(cfg: RunConfig) -> calkit_core::Result<ReportEnvelope> {
    let checks = suites::run_suite(&cfg)?;
    Ok(ReportEnvelope::new(cfg, checks))
}
