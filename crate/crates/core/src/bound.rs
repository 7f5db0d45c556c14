// Copyright 2026 The corrnoise Authors
// SPDX-License-Identifier: Apache-2.0

//! Effective noise strength bound for k-body correlated Hamiltonian noise.
//!
//! Given per-qubit noise sums `eta_tilde[k]` satisfying the envelope hypothesis
//! `eta_tilde[k] <= f_k * alpha^k`, the effective noise strength obeys
//!
//! ```text
//! eps <= 2 m alpha exp( sum_k g_k / (2 k!) )
//! g_k  = sum_{l >= 0} (k-1)! f_{k+l} (2 alpha)^l / (k+l-1)!
//! ```
//!
//! Every infinite sum here is reported as a [`SeriesBound`]: a computed partial
//! value together with a certified bound on the neglected remainder, so that
//! `value + tail` is an upper bound and the inequality direction is preserved.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::noise_model::EtaProfile;
use crate::scalar::{factorial, inv_factorial, Scalar};

pub const DEFAULT_EPSILON0: f64 = 1e-4;
pub const DEFAULT_ALPHA0: f64 = 1e-5;
/// Relative tolerance at which series over `l` are cut.
pub const DEFAULT_REL_TOL: f64 = 1e-12;
/// Number of exponent terms evaluated past the profile's `k_max` before the
/// envelope ceiling takes over.
pub const EXPONENT_EXTRA_TERMS: usize = 40;

const MAX_SERIES_TERMS: usize = 10_000_000;

/// The `f_k` family of the envelope hypothesis.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Envelope<T> {
    /// `f_k = 1`
    ConstantOne,
    /// `f_k = k! / k^p`, `p >= 1`
    FactorialPower { p: T },
    /// `f_k = values[k-1]`. The model has no terms past the list, so the
    /// envelope is zero there.
    Explicit { values: Vec<T> },
}

impl<T: Scalar> Envelope<T> {
    pub fn validate(&self) -> Result<()> {
        match self {
            Envelope::ConstantOne => Ok(()),
            Envelope::FactorialPower { p } => {
                if *p >= T::one() && p.is_finite() {
                    Ok(())
                } else {
                    Err(Error::input(format!("factorial_power envelope needs p >= 1, got {p}")))
                }
            }
            Envelope::Explicit { values } => {
                if values.is_empty() {
                    return Err(Error::input("explicit envelope is empty"));
                }
                match values.iter().position(|v| !(*v > T::zero()) || !v.is_finite()) {
                    Some(i) => Err(Error::input(format!(
                        "explicit envelope value f_{} = {} must be positive and finite",
                        i + 1,
                        values[i]
                    ))),
                    None => Ok(()),
                }
            }
        }
    }

    /// `f_k` for `k >= 1`.
    pub fn f(&self, k: usize) -> Result<T> {
        if k == 0 {
            return Err(Error::input("envelope index starts at k = 1"));
        }
        match self {
            Envelope::ConstantOne => Ok(T::one()),
            Envelope::FactorialPower { p } => Ok(factorial::<T>(k) / T::of_usize(k).powf(*p)),
            Envelope::Explicit { values } => values.get(k - 1).copied().ok_or_else(|| {
                Error::input(format!("explicit envelope defines {} values, f_{k} requested", values.len()))
            }),
        }
    }

    /// Closed-form ceiling on `g_k`, where one exists.
    pub fn g_ceiling(&self, k: usize, alpha: T) -> Result<Option<T>> {
        let c = geometric_constant(alpha)?;
        Ok(match self {
            Envelope::ConstantOne => Some(c),
            Envelope::FactorialPower { p } => Some(factorial::<T>(k) / T::of_usize(k).powf(*p) * c),
            Envelope::Explicit { .. } => None,
        })
    }

    fn label(&self) -> String {
        match self {
            Envelope::ConstantOne => "constant_one".into(),
            Envelope::FactorialPower { p } => format!("factorial_power(p = {p})"),
            Envelope::Explicit { values } => format!("explicit({} values)", values.len()),
        }
    }
}

/// Partial sum plus a certified bound on the remainder.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesBound<T> {
    pub value: T,
    pub tail: T,
}

impl<T: Scalar> SeriesBound<T> {
    pub fn exact(value: T) -> Self {
        SeriesBound { value, tail: T::zero() }
    }

    /// Certified upper bound on the full sum.
    pub fn upper(&self) -> T {
        self.value + self.tail
    }

    fn scale(self, c: T) -> Self {
        SeriesBound { value: self.value * c, tail: self.tail * c }
    }
}

/// `C(alpha) = 1 / (1 - 2 alpha)`, defined for `0 <= 2 alpha < 1`.
pub fn geometric_constant<T: Scalar>(alpha: T) -> Result<T> {
    if !(alpha >= T::zero()) || !alpha.is_finite() {
        return Err(Error::input(format!("alpha must be finite and nonnegative, got {alpha}")));
    }
    let x = alpha + alpha;
    if x >= T::one() {
        return Err(Error::divergence(format!("2*alpha = {x} >= 1: C(alpha) undefined")));
    }
    Ok(T::one() / (T::one() - x))
}

/// Smallest `alpha` with `eta_tilde[k] <= f_k alpha^k` for every `k` in the profile.
pub fn fit_alpha<T: Scalar>(profile: &EtaProfile<T>, envelope: &Envelope<T>) -> Result<T> {
    envelope.validate()?;
    if let Envelope::Explicit { values } = envelope {
        if values.len() < profile.k_max() {
            return Err(Error::input(format!(
                "explicit envelope has {} values but the profile reaches k = {}",
                values.len(),
                profile.k_max()
            )));
        }
    }
    let mut alpha = T::zero();
    for k in 1..=profile.k_max() {
        let eta = profile.eta_tilde(k);
        if eta > T::zero() {
            let root = (eta / envelope.f(k)?).powf(T::one() / T::of_usize(k));
            alpha = alpha.max(root);
        }
    }
    Ok(alpha)
}

#[derive(Clone, Copy)]
enum Scaling {
    /// `g_k` itself.
    Plain,
    /// `g_k / (2 k!)`, the exponent contribution.
    HalfOverFactorial,
}

#[derive(Clone, Copy)]
enum Stop<T> {
    RelTol(T),
    Depth(usize),
}

/// Sums `g_k` (optionally pre-divided by `2 k!`) as `lead * sum_l b_l`.
fn resummed<T: Scalar>(
    k: usize,
    envelope: &Envelope<T>,
    alpha: T,
    scaling: Scaling,
    stop: Stop<T>,
) -> Result<SeriesBound<T>> {
    if k == 0 {
        return Err(Error::input("g_k is defined for k >= 1"));
    }
    envelope.validate()?;
    geometric_constant(alpha)?;
    let x = alpha + alpha;
    let kf = T::of_usize(k);
    let half = T::of(0.5);

    if let Envelope::Explicit { values } = envelope {
        // finite: f_{k+l} = 0 once k + l exceeds the list
        let lead = match scaling {
            Scaling::Plain => T::one(),
            Scaling::HalfOverFactorial => half * inv_factorial::<T>(k),
        };
        let mut sum = T::zero();
        let mut weight = T::one(); // (k-1)!/(k+l-1)! * x^l
        for (l, &f) in values.iter().enumerate().skip(k - 1) {
            let l = l + 1 - k;
            if l > 0 {
                weight = weight * x / T::of_usize(k + l - 1);
            }
            sum = sum + weight * f;
        }
        return Ok(SeriesBound::exact(lead * sum));
    }

    let (lead, ratio_cap) = match (envelope, scaling) {
        (Envelope::ConstantOne, Scaling::Plain) => (T::one(), None),
        (Envelope::ConstantOne, Scaling::HalfOverFactorial) => (half * inv_factorial::<T>(k), None),
        (Envelope::FactorialPower { .. }, Scaling::Plain) => (factorial::<T>(k - 1), Some(x)),
        (Envelope::FactorialPower { .. }, Scaling::HalfOverFactorial) => (half / kf, Some(x)),
        (Envelope::Explicit { .. }, _) => unreachable!(),
    };
    // b_l for l >= 0:
    //   constant_one:    (k-1)!/(k+l-1)! x^l,   b_{l+1}/b_l = x/(k+l)
    //   factorial_power: (k+l)^(1-p) x^l,       b_{l+1}/b_l <= x
    let term = |l: usize, prev: T| -> T {
        match envelope {
            Envelope::ConstantOne => {
                if l == 0 {
                    T::one()
                } else {
                    prev * x / T::of_usize(k + l - 1)
                }
            }
            Envelope::FactorialPower { p } => T::of_usize(k + l).powf(T::one() - *p) * x.powi(l as i32),
            Envelope::Explicit { .. } => unreachable!(),
        }
    };
    let four = T::of(4.0);
    let tail_after = |l: usize, next: T| -> T {
        // bound on sum_{j > l} b_j given b_{l+1} = next; the factor 4 absorbs
        // rounding in `next` and keeps deeper truncations from raising the ceiling
        let rho = match ratio_cap {
            Some(r) => r,
            None => x / T::of_usize(k + l + 1),
        };
        four * next / (T::one() - rho)
    };
    let lead_exact = matches!(scaling, Scaling::Plain) && lead < T::one() / T::eps();

    let floor = T::of(4.0) * T::eps();
    let eps = T::eps();
    let mut sum = T::zero();
    // rounding in the additions (each at most min(eps * sum, b)) and in the
    // terms themselves (relative 2 l eps)
    let mut rounding = T::zero();
    let mut b = term(0, T::zero());
    let mut l = 0usize;
    loop {
        sum = sum + b;
        if l > 0 {
            rounding = rounding + (eps * sum).min(b) + T::of_usize(2 * l) * eps * b;
        }
        let next = term(l + 1, b);
        let tail = tail_after(l, next);
        let done = match stop {
            Stop::Depth(d) => l >= d,
            Stop::RelTol(tol) => tail <= tol.max(floor) * sum,
        };
        if done || tail == T::zero() {
            let value = lead * sum;
            let lead_rounding = if lead_exact { T::zero() } else { T::of_usize(2 * (k + 1)) * eps * value };
            return Ok(SeriesBound { value, tail: lead * (tail + rounding) + lead_rounding });
        }
        if l >= MAX_SERIES_TERMS {
            return Err(Error::divergence(format!(
                "g_{k} series did not reach tolerance within {MAX_SERIES_TERMS} terms (2*alpha = {x})"
            )));
        }
        b = next;
        l += 1;
    }
}

/// `g_k` summed until the certified tail is below `rel_tol * value`.
pub fn g_coefficient<T: Scalar>(k: usize, envelope: &Envelope<T>, alpha: T, rel_tol: T) -> Result<SeriesBound<T>> {
    if !(rel_tol > T::zero()) {
        return Err(Error::input("rel_tol must be positive"));
    }
    resummed(k, envelope, alpha, Scaling::Plain, Stop::RelTol(rel_tol))
}

/// `g_k` using exactly the terms `l = 0..=depth`, with the tail bounding the rest.
pub fn g_coefficient_at_depth<T: Scalar>(
    k: usize,
    envelope: &Envelope<T>,
    alpha: T,
    depth: usize,
) -> Result<SeriesBound<T>> {
    resummed(k, envelope, alpha, Scaling::Plain, Stop::Depth(depth))
}

/// Certified bound on `sum_k 1/(2 k^p)` for `p > 1`.
///
/// The remainder past `K` lies between `int_{K+1}^inf x^-p dx` (added to the
/// value) and `int_{K+1/2}^inf x^-p dx` (convexity of `x^-p`).
pub fn zeta_half_sum<T: Scalar>(p: T, rel_tol: T) -> Result<SeriesBound<T>> {
    if !(p > T::one()) || !p.is_finite() {
        return Err(Error::divergence(format!("sum of 1/k^p diverges for p = {p} <= 1")));
    }
    let one = T::one();
    let pm1 = p - one;
    let integral_from = |a: T| a.powf(-pm1) / pm1;
    let floor = T::of(4.0) * T::eps();
    // compensated summation keeps the rounding error near 2 eps |sum|
    let mut partial = T::zero();
    let mut carry = T::zero();
    let mut k = 0usize;
    loop {
        k += 1;
        let y = T::of_usize(k).powf(-p) - carry;
        let t = partial + y;
        carry = (t - partial) - y;
        partial = t;
        let kf = T::of_usize(k);
        let lower = integral_from(kf + one);
        let upper = integral_from(kf + T::of(0.5));
        let value = partial + lower;
        let tail = (upper - lower).max(T::zero()) + T::of(4.0) * T::eps() * value;
        if tail <= rel_tol.max(floor) * value || k >= MAX_SERIES_TERMS {
            return Ok(SeriesBound { value, tail }.scale(T::of(0.5)));
        }
    }
}

/// `sum_k g_k / (2 k!)` with certified tail. Terms are evaluated through
/// `k_max + 40`; the envelope ceiling on `g_k` bounds everything after.
pub fn exponent_sum<T: Scalar>(envelope: &Envelope<T>, alpha: T, k_max: usize, rel_tol: T) -> Result<SeriesBound<T>> {
    envelope.validate()?;
    let c = geometric_constant(alpha)?;
    let last = match envelope {
        Envelope::Explicit { values } => values.len(),
        _ => k_max.max(1) + EXPONENT_EXTRA_TERMS,
    };
    let mut total = SeriesBound::exact(T::zero());
    for k in 1..=last {
        let h = resummed(k, envelope, alpha, Scaling::HalfOverFactorial, Stop::RelTol(rel_tol))?;
        total.value = total.value + h.value;
        total.tail = total.tail + h.tail;
    }
    total.tail = total.tail + ceiling_tail(envelope, c, last)?;
    if !total.upper().is_finite() {
        return Err(Error::divergence("exponent sum is not finite"));
    }
    Ok(total)
}

/// Bound on `sum_{k > last} ceiling(g_k) / (2 k!)`.
fn ceiling_tail<T: Scalar>(envelope: &Envelope<T>, c: T, last: usize) -> Result<T> {
    let half = T::of(0.5);
    Ok(match envelope {
        Envelope::ConstantOne => {
            // sum_{k > K} 1/k! <= 1/(K+1)! * (K+2)/(K+1)
            let ratio = T::of_usize(last + 2) / T::of_usize(last + 1);
            half * c * inv_factorial::<T>(last + 1) * ratio
        }
        Envelope::FactorialPower { p } => {
            if *p <= T::one() {
                return Err(Error::divergence(format!(
                    "exponent sum diverges for factorial_power p = {p}; need p > 1"
                )));
            }
            let pm1 = *p - T::one();
            half * c * (T::of_usize(last) + half).powf(-pm1) / pm1
        }
        Envelope::Explicit { .. } => T::zero(),
    })
}

/// `2 m alpha exp(exponent)`, using the certified upper end of the exponent.
pub fn epsilon_from_exponent<T: Scalar>(alpha: T, exponent: SeriesBound<T>, m: usize) -> Result<T> {
    if m == 0 {
        return Err(Error::input("gate arity m must be at least 1"));
    }
    geometric_constant(alpha)?;
    let eps = T::of(2.0) * T::of_usize(m) * alpha * exponent.upper().exp();
    if !eps.is_finite() {
        return Err(Error::divergence("epsilon overflowed"));
    }
    Ok(eps)
}

/// `2 m alpha exp(sum_k g_k / (2 k!))` for a list `g[k-1]`. Past the list the
/// envelope ceiling bounds the remaining terms.
pub fn epsilon_bound<T: Scalar>(alpha: T, g: &[SeriesBound<T>], m: usize, envelope: &Envelope<T>) -> Result<T> {
    let c = geometric_constant(alpha)?;
    if let Envelope::Explicit { values } = envelope {
        if g.len() < values.len() {
            return Err(Error::input(format!(
                "g list has {} entries but the explicit envelope reaches k = {}",
                g.len(),
                values.len()
            )));
        }
    }
    let half = T::of(0.5);
    let mut exponent = SeriesBound::exact(T::zero());
    for (i, gk) in g.iter().enumerate() {
        let w = half * inv_factorial::<T>(i + 1);
        exponent.value = exponent.value + gk.value * w;
        exponent.tail = exponent.tail + gk.tail * w;
    }
    exponent.tail = exponent.tail + ceiling_tail(envelope, c, g.len())?;
    epsilon_from_exponent(alpha, exponent, m)
}

/// `eps / (m alpha)` in the closed form with `f_k = 1`: `2 exp(C (e - 1) / 2)`.
pub fn corollary1_factor<T: Scalar>(c: T) -> T {
    T::of(2.0) * (c * (T::E() - T::one()) * T::of(0.5)).exp()
}

/// `eps / (m alpha)` in the closed form with `f_k = k!/k^p`: `2 exp(C sum_k 1/(2k^p))`.
pub fn corollary2_factor<T: Scalar>(p: T, c: T) -> Result<T> {
    let z = zeta_half_sum(p, T::of(DEFAULT_REL_TOL))?;
    Ok(T::of(2.0) * (c * z.upper()).exp())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Scalable,
    NotScalable,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Scalable => "scalable",
            Verdict::NotScalable => "not_scalable",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Scalable iff `epsilon < epsilon0`; inconclusive when no epsilon exists.
pub fn verdict<T: Scalar>(epsilon: Option<T>, epsilon0: T) -> Verdict {
    match epsilon {
        Some(e) if e < epsilon0 => Verdict::Scalable,
        Some(_) => Verdict::NotScalable,
        None => Verdict::Inconclusive,
    }
}

/// Externally supplied threshold constants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Thresholds<T> {
    pub epsilon0: T,
    pub alpha0: T,
}

impl<T: Scalar> Default for Thresholds<T> {
    fn default() -> Self {
        Thresholds { epsilon0: T::of(DEFAULT_EPSILON0), alpha0: T::of(DEFAULT_ALPHA0) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    /// Generic evaluation with truncated, tail-certified series.
    Theorem,
    /// Closed form for `f_k = 1`.
    Corollary1,
    /// Closed form for `f_k = k!/k^p`.
    Corollary2,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport<T> {
    pub method: BoundMethod,
    pub envelope: Envelope<T>,
    pub alpha: T,
    pub m: usize,
    /// `g_k` for `k = 1..=k_max` of the profile.
    pub g: Vec<SeriesBound<T>>,
    /// Exponent behind `epsilon`: `epsilon = 2 m alpha exp(exponent_sum.upper())`.
    pub exponent_sum: Option<SeriesBound<T>>,
    pub epsilon: Option<T>,
    /// Generic series evaluation, kept alongside the closed forms for comparison.
    pub series_epsilon: Option<T>,
    pub thresholds: Thresholds<T>,
    pub alpha_below_alpha0: bool,
    pub verdict: Verdict,
    pub caveats: Vec<String>,
}

impl<T: Scalar> BoundReport<T> {
    /// True when the bound could not be evaluated for numerical reasons.
    pub fn numerical_failure(&self) -> bool {
        self.epsilon.is_none()
    }
}

struct SeriesEval<T> {
    g: Vec<SeriesBound<T>>,
    exponent: SeriesBound<T>,
    epsilon: T,
}

fn series_evaluation<T: Scalar>(envelope: &Envelope<T>, alpha: T, k_max: usize, m: usize) -> Result<SeriesEval<T>> {
    let tol = T::of(DEFAULT_REL_TOL);
    let g = (1..=k_max).map(|k| g_coefficient(k, envelope, alpha, tol)).collect::<Result<Vec<_>>>()?;
    let exponent = exponent_sum(envelope, alpha, k_max, tol)?;
    let epsilon = epsilon_from_exponent(alpha, exponent, m)?;
    Ok(SeriesEval { g, exponent, epsilon })
}

fn base_report<T: Scalar>(
    method: BoundMethod,
    envelope: Envelope<T>,
    alpha: T,
    m: usize,
    k_max: usize,
    thresholds: Thresholds<T>,
) -> BoundReport<T> {
    let mut caveats = Vec::new();
    if !matches!(envelope, Envelope::Explicit { .. }) {
        caveats.push(format!("envelope {} asserted, not computed, for k > {k_max}", envelope.label()));
    }
    BoundReport {
        method,
        envelope,
        alpha,
        m,
        g: Vec::new(),
        exponent_sum: None,
        epsilon: None,
        series_epsilon: None,
        thresholds,
        alpha_below_alpha0: alpha < thresholds.alpha0,
        verdict: Verdict::Inconclusive,
        caveats,
    }
}

fn check_m(m: usize) -> Result<()> {
    if m == 0 {
        Err(Error::input("gate arity m must be at least 1"))
    } else {
        Ok(())
    }
}

fn finish<T: Scalar>(mut report: BoundReport<T>, exponent: Result<SeriesBound<T>>) -> BoundReport<T> {
    match exponent.and_then(|e| epsilon_from_exponent(report.alpha, e, report.m).map(|eps| (e, eps))) {
        Ok((e, eps)) => {
            report.exponent_sum = Some(e);
            report.epsilon = Some(eps);
        }
        Err(err) => report.caveats.push(err.to_string()),
    }
    report.verdict = verdict(report.epsilon, report.thresholds.epsilon0);
    report
}

fn attach_series<T: Scalar>(report: &mut BoundReport<T>, k_max: usize) {
    match series_evaluation(&report.envelope, report.alpha, k_max, report.m) {
        Ok(s) => {
            report.g = s.g;
            report.series_epsilon = Some(s.epsilon);
        }
        Err(err) => report.caveats.push(format!("series evaluation: {err}")),
    }
}

/// Generic evaluation for any envelope.
pub fn theorem1<T: Scalar>(
    profile: &EtaProfile<T>,
    envelope: Envelope<T>,
    m: usize,
    thresholds: Thresholds<T>,
) -> Result<BoundReport<T>> {
    check_m(m)?;
    let alpha = fit_alpha(profile, &envelope)?;
    let k_max = profile.k_max();
    let mut report = base_report(BoundMethod::Theorem, envelope, alpha, m, k_max, thresholds);
    let eval = series_evaluation(&report.envelope, alpha, k_max, m);
    let exponent = match eval {
        Ok(s) => {
            report.g = s.g;
            report.series_epsilon = Some(s.epsilon);
            Ok(s.exponent)
        }
        Err(e) => Err(e),
    };
    Ok(finish(report, exponent))
}

/// Closed form for `f_k = 1`: `eps = 2 m alpha (e^{(e-1)/2})^{C(alpha)}`.
pub fn corollary1<T: Scalar>(profile: &EtaProfile<T>, m: usize, thresholds: Thresholds<T>) -> Result<BoundReport<T>> {
    check_m(m)?;
    let envelope = Envelope::ConstantOne;
    let alpha = fit_alpha(profile, &envelope)?;
    let k_max = profile.k_max();
    let mut report = base_report(BoundMethod::Corollary1, envelope, alpha, m, k_max, thresholds);
    let exponent = geometric_constant(alpha).map(|c| SeriesBound::exact(c * (T::E() - T::one()) * T::of(0.5)));
    if exponent.is_ok() {
        attach_series(&mut report, k_max);
    }
    Ok(finish(report, exponent))
}

/// Closed form for `f_k = k!/k^p`, `p > 1`:
/// `eps = 2 m alpha_p exp(C(alpha_p) sum_k 1/(2 k^p))`.
pub fn corollary2<T: Scalar>(
    profile: &EtaProfile<T>,
    p: T,
    m: usize,
    thresholds: Thresholds<T>,
) -> Result<BoundReport<T>> {
    check_m(m)?;
    if !(p > T::one()) {
        return Err(Error::input(format!("corollary 2 requires p > 1, got {p}")));
    }
    let envelope = Envelope::FactorialPower { p };
    let alpha = fit_alpha(profile, &envelope)?;
    let k_max = profile.k_max();
    let mut report = base_report(BoundMethod::Corollary2, envelope, alpha, m, k_max, thresholds);
    let exponent = geometric_constant(alpha).and_then(|c| {
        let z = zeta_half_sum(p, T::of(DEFAULT_REL_TOL))?;
        Ok(z.scale(c))
    });
    if exponent.is_ok() {
        attach_series(&mut report, k_max);
    }
    Ok(finish(report, exponent))
}

/// Picks the closed form matching the envelope, falling back to the generic
/// evaluation for explicit envelopes.
pub fn evaluate<T: Scalar>(
    profile: &EtaProfile<T>,
    envelope: Envelope<T>,
    m: usize,
    thresholds: Thresholds<T>,
) -> Result<BoundReport<T>> {
    match envelope {
        Envelope::ConstantOne => corollary1(profile, m, thresholds),
        Envelope::FactorialPower { p } if p > T::one() => corollary2(profile, p, m, thresholds),
        other => theorem1(profile, other, m, thresholds),
    }
}
