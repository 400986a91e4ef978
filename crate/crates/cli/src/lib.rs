//! Command-line front end: map-expression parsing, subcommand
//! orchestration, and deterministic machine-readable reports.

pub mod commands;
pub mod expr;
pub mod report;

pub use commands::run;
pub use expr::{parse_map, ParseError};
