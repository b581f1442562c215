//! Non-cooperative games of coalition-structure formation.
//!
//! A game `Γ(K)` lets every player pick a *desired* coalition structure (a
//! partition of the player set whose blocks have at most `K` members) together
//! with an action. A formation mechanism maps the joint choice to the coalition
//! structure that actually forms, and payoffs are specific to that structure.
//!
//! The crate is organised bottom-up:
//!
//! * [`partition`] enumerates and counts set partitions with capped block size.
//! * [`game`] holds strategies, mechanisms, payoff tables and the game itself.
//! * [`solver`] computes expected utilities and pure / mixed Nash equilibria.
//! * [`analysis`] evaluates cooperation, stochastic-game and stability criteria.
//! * [`catalog`] builds the reference example games.
//!
//! Everything here is `no_std` (with `alloc`); file formats and the command
//! line live in the companion `coalition-forge` crate.
#![cfg_attr(not(test), no_std)]
#![warn(missing_docs)]

extern crate alloc;

pub mod analysis;
pub mod catalog;
mod error;
pub mod game;
mod linalg;
pub mod partition;
mod scalar;
pub mod solver;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};

/// Parses an exact rational from `"p/q"` or integer text.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    let value: Rational =
        trimmed.parse().map_err(|_| Error::InvalidArgument(alloc::format!("not a rational number: {text:?}")))?;
    Ok(value)
}

/// Formats a rational as `"p/q"`, always including the denominator.
pub fn format_rational(value: &Rational) -> alloc::string::String {
    alloc::format!("{}/{}", value.numer(), value.denom())
}

/// Shorthand for an integer-valued rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(value.into())
}

/// Shorthand for `numer / denom`.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}
