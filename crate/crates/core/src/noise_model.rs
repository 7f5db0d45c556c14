// Copyright 2026 The corrnoise Authors
// SPDX-License-Identifier: Apache-2.0

//! k-body coupling-norm structure of a system-bath Hamiltonian over a finite
//! qubit layout, and the per-qubit noise sums derived from it.
//!
//! A coupling term `H^(k)` acts on an unordered set of `k` distinct system
//! qubits (and arbitrarily on the bath). The model only stores an upper bound
//! on the operator norm of each term. From those bounds [`NoiseModel::eta_profile`]
//! computes, for every `k`,
//!
//! ```text
//! eta_set[k]   = max_i  sum_{S : |S| = k-1, i not in S}  ||H({i} + S)|| * t0
//! eta_tilde[k] = (k-1)! * eta_set[k]
//! ```
//!
//! `eta_tilde` is the same quantity written as a sum over ordered tuples of
//! distinct qubits, which is the form the bound engine consumes.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{factorial, Scalar};

/// Default cap on the number of coupling-term evaluations performed while
/// enumerating subsets for a parametric model.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

/// Sorted set of distinct system-qubit indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct QubitSet(Vec<usize>);

impl QubitSet {
    /// Canonicalizes the indices. Repeated indices are rejected, since a term
    /// with coincident qubits does not exist.
    pub fn new<I: IntoIterator<Item = usize>>(qubits: I) -> Result<Self> {
        let mut v: Vec<usize> = qubits.into_iter().collect();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input(format!("repeated qubit index in {v:?}")));
        }
        Ok(QubitSet(v))
    }

    pub fn singleton(q: usize) -> Self {
        QubitSet(vec![q])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, q: usize) -> bool {
        self.0.binary_search(&q).is_ok()
    }

    pub fn intersects(&self, other: &QubitSet) -> bool {
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        while let (Some(&&x), Some(&&y)) = (a.peek(), b.peek()) {
            match x.cmp(&y) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    /// Largest index, if any.
    pub fn max_index(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Applies a relabeling of qubits and re-canonicalizes.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        QubitSet::new(self.0.iter().map(|&q| perm[q]))
    }
}

impl TryFrom<Vec<usize>> for QubitSet {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        QubitSet::new(v)
    }
}

impl From<QubitSet> for Vec<usize> {
    fn from(s: QubitSet) -> Self {
        s.0
    }
}

impl fmt::Display for QubitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    #[default]
    Euclidean,
    Manhattan,
}

/// Finite arrangement of system qubits, optionally embedded in space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QubitLayout<T> {
    pub count: usize,
    pub positions: Option<Vec<Vec<T>>>,
    pub metric: Metric,
}

impl<T: Scalar> QubitLayout<T> {
    /// Layout without coordinates.
    pub fn abstract_qubits(count: usize) -> Self {
        QubitLayout { count, positions: None, metric: Metric::Euclidean }
    }

    pub fn with_positions(positions: Vec<Vec<T>>, metric: Metric) -> Self {
        QubitLayout { count: positions.len(), positions: Some(positions), metric }
    }

    /// Evenly spaced chain with unit spacing.
    pub fn chain(count: usize) -> Self {
        Self::with_positions((0..count).map(|i| vec![T::of_usize(i)]).collect(), Metric::Euclidean)
    }

    pub fn distance(&self, i: usize, j: usize) -> Result<T> {
        if i >= self.count || j >= self.count {
            return Err(Error::input(format!("qubit index out of range: ({i}, {j}) with {} qubits", self.count)));
        }
        if i == j {
            return Ok(T::zero());
        }
        let pos = self.positions.as_ref().ok_or_else(|| Error::input("positions required to evaluate distances"))?;
        let (a, b) = (&pos[i], &pos[j]);
        if a.len() != b.len() {
            return Err(Error::input("positions have inconsistent dimensions"));
        }
        let d = match self.metric {
            Metric::Euclidean => a.iter().zip(b).map(|(&x, &y)| (x - y) * (x - y)).sum::<T>().sqrt(),
            Metric::Manhattan => a.iter().zip(b).map(|(&x, &y)| (x - y).abs()).sum::<T>(),
        };
        Ok(d)
    }

    /// Largest pairwise distance within the set; zero for a singleton.
    pub fn diameter(&self, qubits: &QubitSet) -> Result<T> {
        let mut d = T::zero();
        for (a, b) in qubits.as_slice().iter().copied().tuple_combinations() {
            d = d.max(self.distance(a, b)?);
        }
        Ok(d)
    }
}

/// Spatial decay applied to the diameter of a coupling set. `kernel(0) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecayKernel<T> {
    /// `exp(-rate * d)`
    Exponential { rate: T },
    /// `(1 + d)^(-exponent)`
    PowerLaw { exponent: T },
}

impl<T: Scalar> DecayKernel<T> {
    pub fn eval(&self, d: T) -> T {
        match *self {
            DecayKernel::Exponential { rate } => (-rate * d).exp(),
            DecayKernel::PowerLaw { exponent } => (T::one() + d).powf(-exponent),
        }
    }
}

/// Declared norm bounds for every coupling term.
#[derive(Clone, Debug, PartialEq)]
pub enum CouplingSpec<T> {
    /// Explicit bound per qubit set; absent sets have norm zero.
    Table { k_max: usize, norms: BTreeMap<QubitSet, T> },
    /// `||H(S)|| <= amplitudes[|S|-1] * kernel(diameter(S))`.
    Parametric { k_max: usize, amplitudes: Vec<T>, kernel: DecayKernel<T> },
}

impl<T: Scalar> CouplingSpec<T> {
    /// Table spec whose `k_max` is the largest declared set size.
    pub fn table<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, T)>,
    {
        let mut norms = BTreeMap::new();
        for (qubits, norm) in entries {
            let set = QubitSet::new(qubits)?;
            if set.is_empty() {
                return Err(Error::input("coupling term on an empty qubit set"));
            }
            norms.insert(set, norm);
        }
        let k_max = norms.keys().map(QubitSet::len).max().unwrap_or(1);
        Ok(CouplingSpec::Table { k_max, norms })
    }

    pub fn k_max(&self) -> usize {
        match self {
            CouplingSpec::Table { k_max, .. } | CouplingSpec::Parametric { k_max, .. } => *k_max,
        }
    }

    /// Every norm multiplied by `c`.
    pub fn scaled(&self, c: T) -> Self {
        match self {
            CouplingSpec::Table { k_max, norms } => {
                CouplingSpec::Table { k_max: *k_max, norms: norms.iter().map(|(s, &v)| (s.clone(), v * c)).collect() }
            }
            CouplingSpec::Parametric { k_max, amplitudes, kernel } => CouplingSpec::Parametric {
                k_max: *k_max,
                amplitudes: amplitudes.iter().map(|&a| a * c).collect(),
                kernel: *kernel,
            },
        }
    }
}

/// A validation finding; `field` locates the offending input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub field: String,
    pub message: String,
}

impl Diagnostic {
    fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic { field: field.into(), message: message.into() }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NoiseModel<T> {
    pub layout: QubitLayout<T>,
    pub coupling: CouplingSpec<T>,
    /// Maximal duration of any circuit location.
    pub t0: T,
}

impl<T: Scalar> NoiseModel<T> {
    pub fn new(layout: QubitLayout<T>, coupling: CouplingSpec<T>, t0: T) -> Self {
        NoiseModel { layout, coupling, t0 }
    }

    /// Declared bound on `||H^(k)||` for this qubit set.
    pub fn term_norm(&self, qubits: &QubitSet) -> Result<T> {
        if qubits.is_empty() {
            return Err(Error::input("term_norm requires a nonempty qubit set"));
        }
        if let Some(q) = qubits.max_index() {
            if q >= self.layout.count {
                return Err(Error::input(format!("qubit index {q} out of range for {} qubits", self.layout.count)));
            }
        }
        let k = qubits.len();
        if k > self.coupling.k_max() {
            return Ok(T::zero());
        }
        match &self.coupling {
            CouplingSpec::Table { norms, .. } => Ok(norms.get(qubits).copied().unwrap_or_else(T::zero)),
            CouplingSpec::Parametric { amplitudes, kernel, .. } => {
                let amp = amplitudes.get(k - 1).copied().unwrap_or_else(T::zero);
                if amp == T::zero() {
                    return Ok(T::zero());
                }
                Ok(amp * kernel.eval(self.layout.diameter(qubits)?))
            }
        }
    }

    pub fn eta_profile(&self, k_max: usize) -> Result<EtaProfile<T>> {
        self.eta_profile_with_budget(k_max, DEFAULT_ENUMERATION_BUDGET)
    }

    /// Per-qubit noise sums for `k = 1..=k_max`. `budget` caps the number of
    /// term evaluations when subsets must be enumerated.
    pub fn eta_profile_with_budget(&self, k_max: usize, budget: u64) -> Result<EtaProfile<T>> {
        if k_max == 0 {
            return Err(Error::input("k_max must be positive"));
        }
        if k_max > self.coupling.k_max() {
            return Err(Error::input(format!(
                "requested k_max {k_max} exceeds the coupling's k_max {}",
                self.coupling.k_max()
            )));
        }
        let n = self.layout.count;
        if n == 0 {
            return Err(Error::input("layout has no qubits"));
        }
        // anchor_sums[k-1][i] = sum of norms of k-sets containing qubit i
        let mut anchor_sums = vec![vec![T::zero(); n]; k_max];
        match &self.coupling {
            CouplingSpec::Table { norms, .. } => {
                for (set, &norm) in norms {
                    let k = set.len();
                    if k == 0 || k > k_max {
                        continue;
                    }
                    for q in set.iter() {
                        let slot = anchor_sums[k - 1]
                            .get_mut(q)
                            .ok_or_else(|| Error::input(format!("table entry {set} out of range")))?;
                        *slot = *slot + norm;
                    }
                }
            }
            CouplingSpec::Parametric { .. } => {
                let mut spent: u64 = 0;
                for k in 1..=k_max {
                    spent = spent.saturating_add(binomial_u64(n as u64, k as u64));
                    if spent > budget {
                        return Err(Error::resource(format!(
                            "subset enumeration for k = {k} exceeds the budget of {budget} term evaluations"
                        )));
                    }
                    for combo in (0..n).combinations(k) {
                        let set = QubitSet(combo);
                        let norm = self.term_norm(&set)?;
                        for q in set.iter() {
                            anchor_sums[k - 1][q] = anchor_sums[k - 1][q] + norm;
                        }
                    }
                }
            }
        }
        let eta_set: Vec<T> =
            anchor_sums.iter().map(|sums| sums.iter().fold(T::zero(), |m, &s| m.max(s)) * self.t0).collect();
        EtaProfile::from_eta_set(eta_set)
    }

    /// Structural checks; an empty list means the model is usable.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if !(self.t0 > T::zero()) || !self.t0.is_finite() {
            out.push(Diagnostic::new("t0", "must be positive and finite"));
        }
        let n = self.layout.count;
        if n == 0 {
            out.push(Diagnostic::new("layout.count", "must be positive"));
        }
        if let Some(pos) = &self.layout.positions {
            if pos.len() != n {
                out.push(Diagnostic::new("layout.positions", format!("has {} entries for {n} qubits", pos.len())));
            }
            if let Some(first) = pos.first() {
                if pos.iter().any(|p| p.len() != first.len()) {
                    out.push(Diagnostic::new("layout.positions", "coordinates have inconsistent dimensions"));
                }
            }
            if pos.iter().flatten().any(|x| !x.is_finite()) {
                out.push(Diagnostic::new("layout.positions", "coordinates must be finite"));
            }
        }
        let k_max = self.coupling.k_max();
        if k_max == 0 {
            out.push(Diagnostic::new("coupling.k_max", "must be positive"));
        }
        match &self.coupling {
            CouplingSpec::Table { norms, .. } => {
                for (set, &norm) in norms {
                    let field = format!("coupling.terms{set}");
                    if set.is_empty() {
                        out.push(Diagnostic::new(field.clone(), "empty qubit set"));
                    }
                    if let Some(q) = set.max_index() {
                        if q >= n {
                            out.push(Diagnostic::new(
                                field.clone(),
                                format!("qubit index {q} out of range for {n} qubits"),
                            ));
                        }
                    }
                    if set.len() > k_max {
                        out.push(Diagnostic::new(field.clone(), format!("set size exceeds k_max = {k_max}")));
                    }
                    if !(norm >= T::zero()) || !norm.is_finite() {
                        out.push(Diagnostic::new(field, "norm must be nonnegative and finite"));
                    }
                }
            }
            CouplingSpec::Parametric { amplitudes, kernel, .. } => {
                if amplitudes.len() != k_max {
                    out.push(Diagnostic::new(
                        "coupling.amplitudes",
                        format!("expected {k_max} amplitudes (one per k), found {}", amplitudes.len()),
                    ));
                }
                for (i, &a) in amplitudes.iter().enumerate() {
                    if !(a >= T::zero()) || !a.is_finite() {
                        out.push(Diagnostic::new(
                            format!("coupling.amplitudes[{i}]"),
                            "must be nonnegative and finite",
                        ));
                    }
                }
                let param = match *kernel {
                    DecayKernel::Exponential { rate } => ("coupling.kernel.rate", rate),
                    DecayKernel::PowerLaw { exponent } => ("coupling.kernel.exponent", exponent),
                };
                if !(param.1 >= T::zero()) || !param.1.is_finite() {
                    out.push(Diagnostic::new(param.0, "must be nonnegative and finite"));
                }
                if k_max >= 2 && self.layout.positions.is_none() {
                    out.push(Diagnostic::new("layout.positions", "positions required"));
                }
            }
        }
        out
    }

    /// Same model with every coupling norm multiplied by `c`.
    pub fn scaled_couplings(&self, c: T) -> Self {
        NoiseModel { layout: self.layout.clone(), coupling: self.coupling.scaled(c), t0: self.t0 }
    }

    pub fn with_t0(&self, t0: T) -> Self {
        NoiseModel { layout: self.layout.clone(), coupling: self.coupling.clone(), t0 }
    }
}

fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Per-qubit noise sums indexed by `k = 1..=k_max`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EtaProfile<T> {
    eta_tilde: Vec<T>,
    eta_set: Vec<T>,
}

impl<T: Scalar> EtaProfile<T> {
    /// Builds the profile from the ordered-tuple sums `eta_tilde[k-1]`.
    pub fn from_eta_tilde(eta_tilde: Vec<T>) -> Result<Self> {
        check_entries(&eta_tilde)?;
        let eta_set = eta_tilde.iter().enumerate().map(|(i, &v)| v / factorial::<T>(i)).collect();
        Ok(EtaProfile { eta_tilde, eta_set })
    }

    /// Builds the profile from the unordered-set sums `eta_set[k-1]`.
    pub fn from_eta_set(eta_set: Vec<T>) -> Result<Self> {
        check_entries(&eta_set)?;
        let eta_tilde = eta_set.iter().enumerate().map(|(i, &v)| v * factorial::<T>(i)).collect();
        Ok(EtaProfile { eta_tilde, eta_set })
    }

    pub fn k_max(&self) -> usize {
        self.eta_tilde.len()
    }

    /// Ordered-tuple sum for `k` (1-based).
    pub fn eta_tilde(&self, k: usize) -> T {
        self.eta_tilde[k - 1]
    }

    /// Unordered-set sum for `k` (1-based).
    pub fn eta_set(&self, k: usize) -> T {
        self.eta_set[k - 1]
    }

    pub fn eta_tilde_values(&self) -> &[T] {
        &self.eta_tilde
    }

    pub fn eta_set_values(&self) -> &[T] {
        &self.eta_set
    }
}

fn check_entries<T: Scalar>(v: &[T]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::input("profile must cover at least k = 1"));
    }
    if let Some((i, x)) = v.iter().enumerate().find(|(_, x)| !(**x >= T::zero()) || !x.is_finite()) {
        return Err(Error::input(format!("profile entry k = {} is {x}, expected finite and >= 0", i + 1)));
    }
    Ok(())
}
