// Copyright 2026 The corrnoise Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("invalid input: {0}")]
    Input(String),

    /// An enumeration or simulation cap was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// A series or geometric factor does not converge for the given inputs.
    #[error("divergence: {0}")]
    Divergence(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn divergence(msg: impl Into<String>) -> Self {
        Error::Divergence(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
