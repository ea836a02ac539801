//! Definition files, report emission and the command surface of the `triality` binary.

pub mod commands;
pub mod file;
pub mod report;
