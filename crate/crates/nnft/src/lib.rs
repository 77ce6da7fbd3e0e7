//! Command-line front end for the nearest-neighbor fault-tolerance toolkit.
//!
//! - [`format`]: circuit JSON files
//! - [`montecarlo`]: multi-threaded failure counting
//! - [`report`]: text, JSON and CSV rendering
//! - [`cli`]: argument parsing and subcommands

pub mod cli;
pub mod format;
pub mod montecarlo;
pub mod report;
