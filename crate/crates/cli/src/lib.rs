//! Fixture I/O, command implementations and the acceptance battery behind
//! the `krasner` binary.

pub mod commands;
pub mod fixture;
pub mod generator;
pub mod suite;

pub use fixture::FixtureDocument;

/// Input problems; the binary maps all of them to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("fixture is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read {0}")]
    Io(String),
    #[error(transparent)]
    Structure(#[from] krasner::Error),
    #[error("{0}")]
    Input(String),
}
