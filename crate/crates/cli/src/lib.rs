//! Command-line front end for walkforge: `convert`, `run` and `tune`.

pub mod args;
pub mod commands;
pub mod writer;
