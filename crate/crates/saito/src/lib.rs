//! File formats, reports and the command-line front end for `saito-core`.

pub mod cli;
pub mod commands;
pub mod error;
pub mod parse;
pub mod report;
pub mod specfile;

pub use error::{Error, Result};
pub use saito_core as core;
