//! File formats, verification suites and command-line plumbing on top of
//! `vinberg-core`.

pub mod expr;
pub mod formats;
pub mod suites;

use vinberg_core::cluster::DEFAULT_MAX_SEEDS;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] vinberg_core::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// Enumeration cap from `CLUSTER_MAX_SEEDS`, falling back to the default.
pub fn max_seeds_from_env() -> usize {
    std::env::var("CLUSTER_MAX_SEEDS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_SEEDS)
}
