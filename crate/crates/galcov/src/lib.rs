//! Standard-library companion of `galcov-core`: presentation exports,
//! complex serialization, invariant tables, shipped schemas and fixtures,
//! and the `galcov` command line.

pub mod cli;
pub mod complex_io;
pub mod error;
pub mod export;
pub mod fixtures;
pub mod reports;
pub mod schema;
pub mod tables;

pub use cli::{run, RunConfig};
pub use error::{CliError, Result};
