// Copyright 2026 The corrnoise Authors
// SPDX-License-Identifier: Apache-2.0

//! Scalability analysis for fault-tolerant quantum computing under correlated
//! Hamiltonian noise.
//!
//! * [`noise_model`] declares k-body coupling-norm bounds and reduces them to
//!   per-qubit noise sums.
//! * [`bound`] turns those sums into an effective noise strength bound and a
//!   verdict against the threshold.
//! * [`contraction`] holds the partition-sum combinatorics the bound rests on.
//! * [`verifier`] computes fault-path operators exactly for small explicit
//!   system + bath models and checks the bound against them.
//!
//! The analytic layers are generic over [`Scalar`] (`f32`, `f64`); the
//! partition sums also run over exact rationals. The verifier works in `f64`.

// `!(x > 0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bound;
pub mod contraction;
pub mod error;
pub mod noise_model;
pub mod scalar;
pub mod verifier;

pub use bound::{BoundMethod, BoundReport, Envelope, SeriesBound, Thresholds, Verdict};
pub use contraction::ContractionStrengths;
pub use error::{Error, Result};
pub use noise_model::{CouplingSpec, DecayKernel, Diagnostic, EtaProfile, Metric, NoiseModel, QubitLayout, QubitSet};
pub use scalar::Scalar;

pub type NoiseModel64 = NoiseModel<f64>;
pub type NoiseModel32 = NoiseModel<f32>;
pub type EtaProfile64 = EtaProfile<f64>;
pub type EtaProfile32 = EtaProfile<f32>;
pub type Envelope64 = Envelope<f64>;
pub type Envelope32 = Envelope<f32>;
pub type BoundReport64 = BoundReport<f64>;
pub type BoundReport32 = BoundReport<f32>;
pub type SeriesBound64 = SeriesBound<f64>;
pub type ContractionStrengths64 = ContractionStrengths<f64>;
