//! File formats and command-line front end for the `connective` library.

pub mod commands;
pub mod document;

pub use commands::{run, Cli, Outcome};
pub use document::{Diagnostic, Document, Entry, Item, Kind};
