//! Error type shared by every module in the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Failure classes surfaced by library operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Evaluation was requested at a pole of the function.
    #[error("pole error: {0}")]
    Pole(String),
    /// A hard limit (recursion depth, order cap, table size) was exceeded.
    #[error("limit error: {0}")]
    Limit(String),
    /// An adaptive routine could not reach its target accuracy.
    #[error("accuracy error: {0}")]
    Accuracy(String),
    /// Invalid configuration data (files, species sets, CLI-facing inputs).
    #[error("config error: {0}")]
    Config(String),
}
