//! JSON documents and the command-line front end over `parmod-core`.

pub mod cli;
pub mod document;
pub mod report;
pub mod text;

pub use cli::run;
