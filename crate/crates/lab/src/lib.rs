//! Experiment harness and command-line support for the distant-pattern library.

pub mod cache_admin;
pub mod catalog;
pub mod error;
pub mod experiments;
pub mod oeis;
pub mod range;
pub mod report;
pub mod sw;

pub use error::{LabError, Result};
pub use experiments::{run_experiment, Params, CATALOG};
pub use range::SizeRange;
pub use report::{ExperimentReport, Format};
