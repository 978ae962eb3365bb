//! Command-line surface and the file formats it reads and writes.

mod commands;
pub mod formats;
pub mod report;

pub use commands::{exit, run, BUDGET_ENV};
