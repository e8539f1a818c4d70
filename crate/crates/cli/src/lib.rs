//! Config-driven batch front-end for `gapseries`: parameter sweeps with
//! exceptional-set detection, convergence-condition tables, the extremal
//! construction and the separation-margin grid, all written as CSV.

// `!(a <= b)` is used on purpose so that NaN fails argument checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
mod error;
pub mod report;
pub mod source;

pub use config::RunConfig;
pub use error::CliError;
