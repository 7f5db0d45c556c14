// Copyright 2026 The corrnoise Authors
// SPDX-License-Identifier: Apache-2.0

//! Declarative run configuration (TOML).

use std::fs;
use std::path::Path;

use corrnoise::bound::{DEFAULT_ALPHA0, DEFAULT_EPSILON0};
use corrnoise::verifier::{BathTerm, CouplingTerm, SimInstance, Step, DEFAULT_MAX_R};
use corrnoise::{CouplingSpec, DecayKernel, Envelope, Metric, NoiseModel, QubitLayout, Thresholds};
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default = "default_t0")]
    pub t0: f64,
    #[serde(default = "default_m")]
    pub m: usize,
    #[serde(default = "default_epsilon0")]
    pub epsilon0: f64,
    #[serde(default = "default_alpha0")]
    pub alpha0: f64,
    /// Largest term size included in the profile; defaults to the coupling's.
    pub k_max: Option<usize>,
    /// Cap on enumerated subsets for parametric couplings.
    pub budget: Option<u64>,
    pub layout: Option<LayoutConfig>,
    pub coupling: Option<CouplingConfig>,
    #[serde(default)]
    pub envelope: EnvelopeConfig,
    pub verify: Option<VerifyConfig>,
    pub sweep: Option<SweepConfig>,
}

fn default_t0() -> f64 {
    1.0
}

fn default_m() -> usize {
    2
}

fn default_epsilon0() -> f64 {
    DEFAULT_EPSILON0
}

fn default_alpha0() -> f64 {
    DEFAULT_ALPHA0
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayoutConfig {
    pub count: Option<usize>,
    pub positions: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub metric: Metric,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CouplingConfig {
    Table {
        k_max: Option<usize>,
        #[serde(default)]
        terms: Vec<TableTerm>,
    },
    Parametric {
        k_max: usize,
        amplitudes: Vec<f64>,
        kernel: KernelConfig,
    },
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableTerm {
    pub qubits: Vec<usize>,
    pub norm: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum KernelConfig {
    Exponential { rate: f64 },
    PowerLaw { exponent: f64 },
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum EnvelopeConfig {
    #[default]
    ConstantOne,
    FactorialPower {
        p: f64,
    },
    Explicit {
        values: Vec<f64>,
    },
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    pub n_sys: usize,
    #[serde(default)]
    pub n_bath: usize,
    #[serde(default)]
    pub bath_h: Vec<BathTerm>,
    #[serde(default)]
    pub sb_terms: Vec<CouplingTerm>,
    pub steps: Vec<Step>,
    #[serde(default = "default_max_r")]
    pub max_r: usize,
}

fn default_max_r() -> usize {
    DEFAULT_MAX_R
}

impl VerifyConfig {
    pub fn instance(&self) -> SimInstance {
        SimInstance {
            n_sys: self.n_sys,
            n_bath: self.n_bath,
            bath_h: self.bath_h.clone(),
            sb_terms: self.sb_terms.clone(),
            steps: self.steps.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    /// Multiplies every coupling norm.
    LambdaScale,
    /// Replaces the step duration.
    T0,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::LambdaScale => "lambda_scale",
            SweepParameter::T0 => "t0",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

/// A parsed and validated configuration with its canonical hash.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub config: Config,
    pub hash: String,
    /// Noise model from the layout and coupling sections, or else from the
    /// verify instance's own coupling norms.
    pub model: NoiseModel<f64>,
}

impl Loaded {
    pub fn thresholds(&self) -> Thresholds<f64> {
        Thresholds { epsilon0: self.config.epsilon0, alpha0: self.config.alpha0 }
    }

    pub fn envelope(&self) -> Envelope<f64> {
        match &self.config.envelope {
            EnvelopeConfig::ConstantOne => Envelope::ConstantOne,
            EnvelopeConfig::FactorialPower { p } => Envelope::FactorialPower { p: *p },
            EnvelopeConfig::Explicit { values } => Envelope::Explicit { values: values.clone() },
        }
    }

    pub fn k_max(&self) -> usize {
        self.config.k_max.unwrap_or_else(|| self.model.coupling.k_max())
    }
}

/// SHA-256 of the document re-serialized as JSON with sorted keys, so
/// formatting, comments and key order do not affect it.
pub fn canonical_hash(text: &str) -> Result<String, CliError> {
    let value: toml::Value = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    let json = serde_json::to_value(&value).map_err(|e| CliError::Config(e.to_string()))?;
    let canonical = serde_json::to_string(&json).map_err(|e| CliError::Config(e.to_string()))?;
    Ok(hex::encode(Sha256::digest(canonical.as_bytes())))
}

pub fn load_config(path: &Path) -> Result<Loaded, CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<Loaded, CliError> {
    let config: Config = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    let hash = canonical_hash(text)?;
    check_scalars(&config)?;
    if let Some(v) = &config.verify {
        v.instance().validate().map_err(|e| CliError::from_core("verify", e))?;
    }
    if let Some(s) = &config.sweep {
        if let Some(bad) = s.values.iter().position(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(CliError::Config(format!("sweep.values[{bad}]: must be finite and nonnegative")));
        }
    }
    let model = build_model(&config)?;
    let diagnostics = model.validate();
    if !diagnostics.is_empty() {
        let lines: Vec<String> = diagnostics.iter().map(|d| format!("{}: {}", d.field, d.message)).collect();
        return Err(CliError::Config(lines.join("; ")));
    }
    let loaded = Loaded { config, hash, model };
    loaded.envelope().validate().map_err(|e| CliError::Config(format!("envelope: {e}")))?;
    if loaded.k_max() == 0 {
        return Err(CliError::Config("k_max: must be positive".into()));
    }
    Ok(loaded)
}

fn check_scalars(c: &Config) -> Result<(), CliError> {
    let positive = |name: &str, v: f64| {
        if v > 0.0 && v.is_finite() {
            Ok(())
        } else {
            Err(CliError::Config(format!("{name}: must be positive and finite, got {v}")))
        }
    };
    positive("t0", c.t0)?;
    positive("epsilon0", c.epsilon0)?;
    positive("alpha0", c.alpha0)?;
    if c.m == 0 {
        return Err(CliError::Config("m: must be at least 1".into()));
    }
    Ok(())
}

fn build_model(c: &Config) -> Result<NoiseModel<f64>, CliError> {
    let (layout, coupling) = match (&c.layout, &c.coupling) {
        (Some(l), Some(cp)) => (l, cp),
        (None, None) if c.verify.is_some() => {
            let inst = c.verify.as_ref().map(VerifyConfig::instance).expect("checked above");
            return inst.noise_model().map_err(|e| CliError::from_core("verify", e));
        }
        (None, _) => return Err(CliError::Config("missing section `layout`".into())),
        (_, None) => return Err(CliError::Config("missing section `coupling`".into())),
    };

    let layout = match (&layout.positions, layout.count) {
        (Some(p), Some(n)) if p.len() != n => {
            return Err(CliError::Config(format!("layout.positions: {} entries for count = {n}", p.len())))
        }
        (Some(p), _) => QubitLayout::with_positions(p.clone(), layout.metric),
        (None, Some(n)) => QubitLayout::abstract_qubits(n),
        (None, None) => return Err(CliError::Config("layout.count: required when positions are absent".into())),
    };

    let coupling = match coupling {
        CouplingConfig::Table { k_max, terms } => {
            let spec = CouplingSpec::table(terms.iter().map(|t| (t.qubits.clone(), t.norm)))
                .map_err(|e| CliError::Config(format!("coupling.terms: {e}")))?;
            match (spec, k_max) {
                (CouplingSpec::Table { norms, k_max: found }, Some(k)) => {
                    if let Some(set) = norms.keys().find(|s| s.len() > *k) {
                        return Err(CliError::Config(format!(
                            "coupling.k_max: {k} is smaller than the term on {set} (largest is {found})"
                        )));
                    }
                    CouplingSpec::Table { k_max: *k, norms }
                }
                (spec, _) => spec,
            }
        }
        CouplingConfig::Parametric { k_max, amplitudes, kernel } => CouplingSpec::Parametric {
            k_max: *k_max,
            amplitudes: amplitudes.clone(),
            kernel: match *kernel {
                KernelConfig::Exponential { rate } => DecayKernel::Exponential { rate },
                KernelConfig::PowerLaw { exponent } => DecayKernel::PowerLaw { exponent },
            },
        },
    };
    Ok(NoiseModel::new(layout, coupling, c.t0))
}
