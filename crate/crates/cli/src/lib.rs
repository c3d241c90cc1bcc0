//! File formats, threshold scanning and the `entrosep` command line.
//!
//! Exit codes: 0 when no criterion is violated, 3 when entanglement is
//! certified, 1 for bad input or failed validation, 2 for usage errors.

pub mod cli;
pub mod commands;
pub mod error;
pub mod formats;
pub mod report;
pub mod reproduce;
pub mod scan;
pub mod setup;

pub use error::CliError;
