// Copyright 2026 The corrnoise Authors
// SPDX-License-Identifier: Apache-2.0

//! Front end for the `corrnoise` binary: configuration loading, the
//! `analyze`, `verify` and `sweep` commands, and report rendering.
//!
//! Exit codes: 0 success, 1 verified bound violation, 2 configuration error,
//! 3 numerical or resource failure.

pub mod commands;
pub mod config;
pub mod report;

use thiserror::Error;

pub use commands::{analyze, sweep, verify, Outcome};
pub use config::{canonical_hash, load_config, parse_config, Config, Loaded};
pub use report::RunReport;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_FAILURE: u8 = 3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Failure(_) => EXIT_FAILURE,
        }
    }

    /// Input problems are configuration errors; caps and divergences are failures.
    pub fn from_core(context: &str, err: corrnoise::Error) -> Self {
        match err {
            corrnoise::Error::Input(_) => CliError::Config(format!("{context}: {err}")),
            _ => CliError::Failure(format!("{context}: {err}")),
        }
    }
}
