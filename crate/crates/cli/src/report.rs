// Copyright 2026 The corrnoise Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;

use corrnoise::verifier::FaultOperatorResult;
use corrnoise::{BoundReport, EtaProfile, Verdict};
use serde::Serialize;

use crate::CliError;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Structured output of one run. Contains no timestamps or paths, so equal
/// configurations give byte-identical reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub tool_version: String,
    pub config_hash: String,
    pub command: String,
    pub k_max: usize,
    pub profile: Option<EtaProfile<f64>>,
    pub bound: Option<BoundReport<f64>>,
    /// Why the profile or bound is missing.
    pub error: Option<String>,
    pub verification: Option<VerificationTable>,
    pub sweep: Option<SweepTable>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationTable {
    pub max_r: usize,
    pub epsilon: Option<f64>,
    pub violations: usize,
    pub results: Vec<FaultOperatorResult>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepTable {
    pub parameter: String,
    pub rows: Vec<SweepRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub value: f64,
    pub alpha: Option<f64>,
    pub epsilon: Option<f64>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl RunReport {
    pub fn to_json(&self) -> Result<String, CliError> {
        serde_json::to_string_pretty(self)
            .map(|mut s| {
                s.push('\n');
                s
            })
            .map_err(|e| CliError::Failure(format!("cannot serialize report: {e}")))
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.6e}"))
}

pub fn render_bound(out: &mut String, profile: Option<&EtaProfile<f64>>, bound: Option<&BoundReport<f64>>) {
    if let Some(p) = profile {
        for (i, v) in p.eta_tilde_values().iter().enumerate() {
            let _ = writeln!(out, "eta_tilde[{}] = {v:.6e}", i + 1);
        }
    }
    let Some(b) = bound else { return };
    let _ = writeln!(out, "method        = {:?}", b.method);
    let _ = writeln!(out, "alpha         = {:.6e}", b.alpha);
    let _ = writeln!(out, "m             = {}", b.m);
    let _ = writeln!(out, "epsilon       = {}", opt(b.epsilon));
    if b.series_epsilon != b.epsilon {
        let _ = writeln!(out, "series eps    = {}", opt(b.series_epsilon));
    }
    let _ = writeln!(
        out,
        "thresholds    = epsilon0 {:e}, alpha0 {:e} (alpha below alpha0: {})",
        b.thresholds.epsilon0, b.thresholds.alpha0, b.alpha_below_alpha0
    );
    let _ = writeln!(out, "verdict       = {}", b.verdict);
    for c in &b.caveats {
        let _ = writeln!(out, "note: {c}");
    }
}

pub fn render_verification(out: &mut String, table: &VerificationTable) {
    let _ = writeln!(out, "{:>2}  {:<24} {:>13} {:>13} {:>13}  status", "r", "locations", "norm", "eps^r", "margin");
    for res in &table.results {
        let locs: Vec<String> = res.locations.iter().map(ToString::to_string).collect();
        let status = if res.violated {
            "VIOLATION"
        } else if res.conclusive {
            "ok"
        } else {
            "inconclusive"
        };
        let _ = writeln!(
            out,
            "{:>2}  {:<24} {:>13.6e} {:>13} {:>13}  {status}",
            res.r,
            locs.join(","),
            res.norm,
            opt(res.epsilon_r),
            opt(res.margin)
        );
    }
    let _ = writeln!(out, "{} queries, {} violations", table.results.len(), table.violations);
}

/// Comma-separated `value,alpha,epsilon,verdict`; missing numbers are empty.
pub fn sweep_csv(table: &SweepTable) -> Result<String, CliError> {
    #[derive(Serialize)]
    struct Row {
        value: f64,
        alpha: Option<f64>,
        epsilon: Option<f64>,
        verdict: Verdict,
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &table.rows {
        w.serialize(Row { value: r.value, alpha: r.alpha, epsilon: r.epsilon, verdict: r.verdict })
            .map_err(|e| CliError::Failure(e.to_string()))?;
    }
    if table.rows.is_empty() {
        w.write_record(["value", "alpha", "epsilon", "verdict"]).map_err(|e| CliError::Failure(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Failure(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Failure(e.to_string()))
}
