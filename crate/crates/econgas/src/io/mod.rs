//! Configuration, CSV interchange, and run manifests.
//!
//! Everything the command-line front end needs to turn text into validated
//! run descriptions and results back into reproducible artifacts. The
//! pieces are independent of the binary so library users can reuse the
//! same formats.

pub mod config;
pub mod csvio;
pub mod manifest;

pub use config::{
    AnalyzeJob, ConfigError, FitKind, MarketJob, MaxentJob, Origin, RawConfig, SimulateJob,
    TheoryCurve, TheoryJob,
};
pub use csvio::{ingest_sample, CsvError};
pub use manifest::{sha256_hex, RunManifest, RNG_ID};
