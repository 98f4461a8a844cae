//! Sweep drivers, output writers and validation suites for the `convhelm`
//! command-line tool.

pub mod commands;
pub mod config;
pub mod csv;
pub mod svg;
pub mod sweeps;
pub mod validate;
