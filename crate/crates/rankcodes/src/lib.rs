//! File formats, persistent caches and the command-line front end for
//! constant-rank and constant-dimension codes.

pub use rankcodes_core as core;

pub mod cache;
pub mod cli;
pub mod codefile;
pub mod error;

pub use error::{CliError, CliResult};
