//! File formats, text parsing and the command-line front end for
//! `valgen-core`.

pub mod cli;
pub mod formats;
pub mod parse;
pub mod report;
