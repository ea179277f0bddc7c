//! Command-line driver for `orbihom`: reads JSON problem files, runs the
//! computations and prints deterministic JSON reports.

pub mod commands;
pub mod problem;
pub mod report;

pub use commands::{run, Cli, Command, Outcome};
pub use problem::{LoadError, ProblemFile};
