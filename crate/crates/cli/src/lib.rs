//! Input and report documents and the `ellsurf` subcommands.

pub mod commands;
pub mod document;
pub mod report;
