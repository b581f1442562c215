//! Command-line front end for coalition-structure formation games: JSON game files,
//! JSON reports, and text rendering.

pub mod commands;
pub mod error;
pub mod gamefile;
pub mod render;
pub mod report;

pub use commands::{execute, Cli};
pub use error::{CliError, Result};
