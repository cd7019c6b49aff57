//! Front end for `superbrauer`: the diagram expression language, run
//! configuration, and the subcommands behind the `superbrauer` binary.

pub mod commands;
pub mod config;
pub mod elaborate;
pub mod expr;
