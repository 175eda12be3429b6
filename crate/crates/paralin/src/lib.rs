//! Command-line companion to `paralin-core`: grid evaluation, PPM/CSV
//! output, and the experiment subcommands.

pub mod commands;
pub mod csvio;
pub mod grid;
pub mod ppm;
pub mod render;

use core::fmt;

/// Bad flag values or malformed inputs; mapped to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

/// Exit code convention: 0 success, 2 domain/usage violation, 3 criteria
/// failure, 1 anything else (IO etc).
pub fn exit_code_for(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<UsageError>().is_some()
        || err.downcast_ref::<paralin_core::Error>().is_some()
    {
        2
    } else {
        1
    }
}
