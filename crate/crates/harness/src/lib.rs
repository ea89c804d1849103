//! Experiment harness for the gbpa crates: UCI dataset ingestion, seeded
//! stratified splits, open-world and robustness studies, and report emission.
//!
//! Everything randomized runs off one documented generator ([`rng::SplitMix64`])
//! keyed by explicit 64-bit seeds, so every split, fold and experiment is
//! bit-reproducible from (seed, plan).

pub mod dataset;
pub mod error;
pub mod experiment;
pub mod report;
pub mod rng;
pub mod split;

pub use dataset::{load_dataset, parse_dataset, Dataset, Row, Schema};
pub use error::{Error, Result};
pub use experiment::{corrected_accuracy, run_cross_validation, run_open_world, run_robustness};
pub use report::{CrossValidationReport, ExperimentReport, ReportRow, RobustnessReport};
pub use rng::{substream, SplitMix64};
pub use split::{split_leave_out, stratified_kfold, Split, SplitKind, SplitPlan};
