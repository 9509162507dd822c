//! Front end for `lagrep-core`: flag parsing, JSON formats, a shared
//! object cache and the verification suites behind the `lagrep` binary.

pub mod cache;
pub mod cli;
pub mod corpus;
mod error;
pub mod json;
pub mod parse;
pub mod verify;

pub use cli::{run, Outcome};
pub use error::{CliError, CliResult};
