//! Report types and command implementations behind the `hoplift` binary.

pub mod commands;
pub mod report;
pub mod selftest;
