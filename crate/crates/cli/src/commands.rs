// Copyright 2026 The corrnoise Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;

use corrnoise::bound::evaluate;
use corrnoise::noise_model::DEFAULT_ENUMERATION_BUDGET;
use corrnoise::verifier::verify_instance;
use corrnoise::{BoundReport, Error, EtaProfile, NoiseModel, Verdict};

use crate::config::{Loaded, SweepParameter};
use crate::report::{
    render_bound, render_verification, sweep_csv, RunReport, SweepRow, SweepTable, VerificationTable, TOOL_VERSION,
};
use crate::{CliError, EXIT_FAILURE, EXIT_OK, EXIT_VIOLATION};

/// Result of a command that ran to completion, possibly with a nonzero exit.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: RunReport,
    /// Human-readable summary.
    pub text: String,
    /// Sweep table, for `sweep` only.
    pub csv: Option<String>,
    pub exit: u8,
}

fn empty_report(loaded: &Loaded, command: &str) -> RunReport {
    RunReport {
        tool_version: TOOL_VERSION.to_string(),
        config_hash: loaded.hash.clone(),
        command: command.to_string(),
        k_max: loaded.k_max(),
        profile: None,
        bound: None,
        error: None,
        verification: None,
        sweep: None,
    }
}

/// Profile (when computable) and bound, or the reason the bound is missing.
type Evaluated = (Option<EtaProfile<f64>>, Result<BoundReport<f64>, String>);

/// Profile and bound for one model. Input errors are returned; numerical and
/// resource problems become `Ok` with the error text.
fn bound_for(loaded: &Loaded, model: &NoiseModel<f64>) -> Result<Evaluated, CliError> {
    let budget = loaded.config.budget.unwrap_or(DEFAULT_ENUMERATION_BUDGET);
    let profile = match model.eta_profile_with_budget(loaded.k_max(), budget) {
        Ok(p) => p,
        Err(e @ Error::Input(_)) => return Err(CliError::from_core("profile", e)),
        Err(e) => return Ok((None, Err(e.to_string()))),
    };
    let bound = match evaluate(&profile, loaded.envelope(), loaded.config.m, loaded.thresholds()) {
        Ok(b) if b.numerical_failure() => {
            let why = b.caveats.first().cloned().unwrap_or_else(|| "epsilon not computable".into());
            let msg = format!("numerical precondition failed: {why}");
            return Ok((Some(profile), Err(msg)));
        }
        Ok(b) => Ok(b),
        Err(e @ Error::Input(_)) => return Err(CliError::from_core("bound", e)),
        Err(e) => Err(e.to_string()),
    };
    Ok((Some(profile), bound))
}

pub fn analyze(loaded: &Loaded) -> Result<Outcome, CliError> {
    let mut report = empty_report(loaded, "analyze");
    let (profile, bound) = bound_for(loaded, &loaded.model)?;
    report.profile = profile;
    let exit = match bound {
        Ok(b) => {
            report.bound = Some(b);
            EXIT_OK
        }
        Err(msg) => {
            // keep the inconclusive report when there is one
            if let Some(p) = &report.profile {
                report.bound = evaluate(p, loaded.envelope(), loaded.config.m, loaded.thresholds()).ok();
            }
            report.error = Some(msg);
            EXIT_FAILURE
        }
    };
    let mut text = String::new();
    render_bound(&mut text, report.profile.as_ref(), report.bound.as_ref());
    if let Some(e) = &report.error {
        let _ = writeln!(text, "error: {e}");
    }
    Ok(Outcome { report, text, csv: None, exit })
}

pub fn verify(loaded: &Loaded) -> Result<Outcome, CliError> {
    let section = loaded.config.verify.as_ref().ok_or_else(|| CliError::Config("missing section `verify`".into()))?;
    let mut report = empty_report(loaded, "verify");
    let instance = section.instance();
    report.k_max = instance.noise_model().map(|m| m.coupling.k_max()).unwrap_or(report.k_max);
    let mut text = String::new();
    let v = match verify_instance(&instance, section.max_r, loaded.thresholds()) {
        Ok(v) => v,
        Err(e @ Error::Input(_)) => return Err(CliError::from_core("verify", e)),
        Err(e) => {
            report.error = Some(format!("verify: {e}"));
            let _ = writeln!(text, "error: verify: {e}");
            return Ok(Outcome { report, text, csv: None, exit: EXIT_FAILURE });
        }
    };
    let table = VerificationTable {
        max_r: section.max_r,
        epsilon: v.bound.epsilon,
        violations: v.violations().count(),
        results: v.results.clone(),
    };
    render_bound(&mut text, Some(&v.profile), Some(&v.bound));
    render_verification(&mut text, &table);
    let exit = verification_exit(&table);
    report.profile = Some(v.profile);
    report.bound = Some(v.bound);
    report.verification = Some(table);
    Ok(Outcome { report, text, csv: None, exit })
}

pub fn sweep(loaded: &Loaded) -> Result<Outcome, CliError> {
    let section = loaded.config.sweep.as_ref().ok_or_else(|| CliError::Config("missing section `sweep`".into()))?;
    let mut report = empty_report(loaded, "sweep");
    let (profile, bound) = bound_for(loaded, &loaded.model)?;
    report.profile = profile;
    match bound {
        Ok(b) => report.bound = Some(b),
        Err(msg) => report.error = Some(msg),
    }

    let mut rows = Vec::with_capacity(section.values.len());
    for &value in &section.values {
        let model = match section.parameter {
            SweepParameter::LambdaScale => loaded.model.scaled_couplings(value),
            SweepParameter::T0 => loaded.model.with_t0(value),
        };
        let row = match bound_for(loaded, &model) {
            Ok((_, Ok(b))) => {
                SweepRow { value, alpha: Some(b.alpha), epsilon: b.epsilon, verdict: b.verdict, note: None }
            }
            Ok((_, Err(msg))) => {
                SweepRow { value, alpha: None, epsilon: None, verdict: Verdict::Inconclusive, note: Some(msg) }
            }
            Err(e) => SweepRow {
                value,
                alpha: None,
                epsilon: None,
                verdict: Verdict::Inconclusive,
                note: Some(e.to_string()),
            },
        };
        rows.push(row);
    }
    let table = SweepTable { parameter: section.parameter.name().to_string(), rows };
    let csv = sweep_csv(&table)?;
    report.sweep = Some(table);
    Ok(Outcome { report, text: csv.clone(), csv: Some(csv), exit: EXIT_OK })
}

/// Exit status for a completed verification: any conclusive violation is a finding.
pub fn verification_exit(table: &VerificationTable) -> u8 {
    if table.results.iter().any(|r| r.violated) {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use corrnoise::verifier::{FaultOperatorResult, LocationId};

    fn row(norm: f64, bound: f64) -> FaultOperatorResult {
        let conclusive = bound < 1.0;
        FaultOperatorResult {
            locations: vec![LocationId { step: 0, index: 0 }],
            r: 1,
            norm,
            epsilon_r: Some(bound),
            margin: Some(bound - norm),
            conclusive,
            violated: conclusive && norm > bound,
        }
    }

    #[test]
    fn violation_maps_to_exit_one() {
        let mut table =
            VerificationTable { max_r: 1, epsilon: Some(0.1), violations: 0, results: vec![row(0.01, 0.1)] };
        assert_eq!(verification_exit(&table), EXIT_OK);
        table.results.push(row(0.2, 0.1));
        assert_eq!(verification_exit(&table), EXIT_VIOLATION);
        table.results = vec![row(2.0, 1.5)];
        assert_eq!(verification_exit(&table), EXIT_OK);
    }
}
