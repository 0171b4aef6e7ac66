//! Table generation, verification suites and point evaluation behind the
//! `umbral` binary.

pub mod eval;
pub mod table;
pub mod verify;

use std::fmt;

/// Exit status contract of the binary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    VerificationFailed = 1,
    Usage = 2,
}

/// An error that maps to the usage exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Environment variable holding the worker-thread count.
pub const THREADS_ENV: &str = "UMBRAL_THREADS";

/// Sizes the global rayon pool from [`THREADS_ENV`] if it is set.
pub fn configure_threads() -> Result<(), UsageError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| UsageError(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    if n == 0 {
        return Err(UsageError(format!("{THREADS_ENV} must be positive")));
    }
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}
