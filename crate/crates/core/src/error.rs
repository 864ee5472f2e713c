//! Error type shared by the whole engine.

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A caller violated a precondition: mismatched variable registries,
    /// unknown variable, non-monic input, and the like.
    Usage(String),
    /// Expression or problem text failed to parse. `pos` is a byte offset
    /// into the parsed string.
    Parse { pos: usize, msg: String },
    /// A resource budget (pair queue, term count) was exceeded while
    /// computing a Gröbner basis.
    Budget(String),
    /// An eigenpair failed residual verification.
    Verify(String),
    /// Internal consistency failure; indicates a bug, not bad input.
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::Usage(msg) => write!(f, "usage error: {msg}"),
            Error::Parse { pos, msg } => write!(f, "parse error at offset {pos}: {msg}"),
            Error::Budget(msg) => write!(f, "budget exceeded: {msg}"),
            Error::Verify(msg) => write!(f, "verification failure: {msg}"),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
