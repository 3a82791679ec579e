//! File formats, reports and command implementations for the `ssetkit` binary.

pub mod commands;
pub mod format;
pub mod report;
