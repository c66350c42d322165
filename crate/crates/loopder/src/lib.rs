//! Command-line front end and file formats for `loopder-core`.

pub mod cli;
pub mod format;
pub mod report;

pub use cli::{run, Outcome};
