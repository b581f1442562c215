use alloc::string::String;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An argument is out of range or inconsistent with the object it refers to.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A game (or part of one) violates a structural invariant.
    #[error("validation failed: {0}")]
    Validation(String),
    /// A sequence of games is not a nested family.
    #[error("games are not nested: {0}")]
    NotNested(String),
    /// An exact count does not fit in 128 bits.
    #[error("partition count overflows u128 for n = {n}, K = {k}")]
    Overflow {
        /// Number of players.
        n: usize,
        /// Maximum block size.
        k: usize,
    },
}

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
