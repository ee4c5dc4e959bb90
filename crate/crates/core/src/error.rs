use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A value that must be prime is not.
    #[error("{0} is not prime")]
    CompositeInput(u64),
    /// p outside the fast path's window [3, 2^32): p = 2 is excluded by design
    /// and larger p must go through the arbitrary-precision routines.
    #[error("p = {0} is outside the supported range [3, 2^32)")]
    OutOfRange(u64),
    /// An argument outside a function's mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A bounded search finished without finding its witness.
    #[error("no witness found below {limit} for p = {p}")]
    SearchExhausted { p: u64, limit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
