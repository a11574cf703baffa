//! Library side of the `avote` binary: config parsing, output formatting,
//! and the five subcommand implementations, kept out of main so integration
//! tests can drive them directly.

pub mod commands;
pub mod config;
pub mod output;

use avote_core::error::Error;

/// Process exit code per error class: 1 for anything the user can fix in the
/// config or arguments, 3 when an enumeration exceeds its budget.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit { .. } => 3,
        _ => 1,
    }
}

/// Extra guidance appended to error output where a rerun fix exists.
pub fn hint_for(e: &Error) -> Option<&'static str> {
    match e {
        Error::ResourceLimit { .. } => Some(
            "raise \"budget\" in the config, lower n, or set \"delta_mode\": \"monte-carlo\" for welfare runs",
        ),
        _ => None,
    }
}
