//! File formats and command plumbing around `lbnes-core`.
//!
//! Scenarios are JSON, trajectories and sweeps are CSV, reports are JSON.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod error;
pub mod export;
pub mod scenario;
pub mod sweep;

pub use error::CliError;
pub use scenario::{parse_scenario, Scenario, ScenarioFile};
