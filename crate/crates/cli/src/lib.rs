//! Command machinery for the `gslie` binary, exposed as a library so the
//! integration suite can build reports in-process.

pub mod commands;
pub mod config;
pub mod report;
pub mod tables;
