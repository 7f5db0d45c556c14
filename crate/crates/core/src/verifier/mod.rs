// Copyright 2026 The corrnoise Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact fault-path operators for small explicit system + bath models.
//!
//! # Masked evolution
//!
//! The circuit runs as a sequence of steps. Step `s` first applies its ideal
//! gates and then evolves for its duration under
//! `H_step = H_B + sum(active coupling terms)`. A coupling term is inactive in
//! step `s` when its qubit set meets a masked location of that step. Each step
//! is exponentiated exactly, so there is no time discretization error.
//!
//! # Fault operator by inclusion-exclusion
//!
//! Expand every masked evolution `U_S` as a Dyson series in the coupling. A
//! single fault path (a time-ordered sequence of coupling insertions) appears
//! in `U_S` iff it avoids every location in `S`, with the same amplitude in
//! every `U_S` where it appears. Write `A(path)` for the set of marked
//! locations the path touches. Then
//!
//! ```text
//! sum_{S ⊆ I} (-1)^|S| U_S  =  sum_paths amp(path) * sum_{S ⊆ I \ A(path)} (-1)^|S|
//! ```
//!
//! and the inner sum vanishes unless `A(path) = I`. The alternating sum
//! therefore keeps exactly the paths that strike every marked location during
//! its step, which is `E(I)`. Masking whole steps is enough: a path touches a
//! location iff at least one of its insertions during that step acts on one of
//! the location's qubits, and such insertions are precisely those of the
//! disabled terms.
//!
//! Because masks factorize over steps, the same operator also equals the
//! ordered product of per-step alternating sums; [`Simulator::fault_operator_factorized`]
//! computes it that way as an independent route.

mod instance;
mod linalg;
mod pauli;

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use serde::Serialize;

pub use instance::{
    BathTerm, CouplingTerm, GateKind, GateOp, LocationId, SimInstance, Step, MAX_BATH_QUBITS, MAX_COUPLING_TERMS,
    MAX_DIMENSION, MAX_SYSTEM_QUBITS,
};
pub use linalg::{spectral_norm, unitarity_defect, unitary_propagator, CMatrix};
pub use pauli::{Pauli, PauliString};

use crate::bound::{corollary1, BoundReport, Thresholds};
use crate::error::{Error, Result};
use crate::noise_model::EtaProfile;

/// Default largest `|I_r|` enumerated by [`verify_instance`].
pub const DEFAULT_MAX_R: usize = 3;
/// Inclusion-exclusion costs `2^r` evolutions; `r` is never allowed above this.
pub const HARD_MAX_R: usize = 12;
/// Absolute slack for floating-point noise when comparing `||E||` to `eps^r`.
pub const NORM_SLACK: f64 = 1e-12;

/// Set of marked locations `I_r`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FaultQuery {
    pub locations: BTreeSet<LocationId>,
}

impl FaultQuery {
    pub fn new<I: IntoIterator<Item = LocationId>>(locations: I) -> Self {
        FaultQuery { locations: locations.into_iter().collect() }
    }

    pub fn r(&self) -> usize {
        self.locations.len()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaultOperatorResult {
    pub locations: Vec<LocationId>,
    pub r: usize,
    pub norm: f64,
    /// `eps^r`; absent when no bound could be computed.
    pub epsilon_r: Option<f64>,
    pub margin: Option<f64>,
    /// False when the bound is vacuous (`eps >= 1`) or missing.
    pub conclusive: bool,
    pub violated: bool,
}

/// Outcome of checking every `I_r` up to a size limit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verification {
    pub profile: EtaProfile<f64>,
    pub bound: BoundReport<f64>,
    pub results: Vec<FaultOperatorResult>,
}

impl Verification {
    pub fn violations(&self) -> impl Iterator<Item = &FaultOperatorResult> {
        self.results.iter().filter(|r| r.violated)
    }

    pub fn has_violation(&self) -> bool {
        self.violations().next().is_some()
    }
}

/// Precomputed operators for one instance plus a cache of step propagators
/// keyed by the set of active coupling terms.
pub struct Simulator<'a> {
    instance: &'a SimInstance,
    bath: CMatrix,
    terms: Vec<CMatrix>,
    gates: Vec<Option<CMatrix>>,
    cache: RefCell<HashMap<(usize, u64), CMatrix>>,
}

impl<'a> Simulator<'a> {
    pub fn new(instance: &'a SimInstance) -> Result<Self> {
        instance.validate()?;
        Ok(Simulator {
            instance,
            bath: instance.bath_hamiltonian(),
            terms: (0..instance.sb_terms.len()).map(|i| instance.term_operator(i)).collect(),
            gates: (0..instance.steps.len()).map(|s| instance.gate_unitary(s)).collect(),
            cache: RefCell::new(HashMap::new()),
        })
    }

    pub fn instance(&self) -> &SimInstance {
        self.instance
    }

    fn check_locations<'b, I: IntoIterator<Item = &'b LocationId>>(&self, ids: I) -> Result<()> {
        ids.into_iter().try_for_each(|&id| self.instance.location(id).map(|_| ()))
    }

    /// Bitset of coupling terms left on in `step` when the given locations of
    /// that step are masked.
    fn active_terms<'b, I>(&self, step: usize, masked: I) -> u64
    where
        I: IntoIterator<Item = &'b LocationId>,
    {
        let locs = &self.instance.steps[step].locations;
        let blocked: Vec<_> = masked.into_iter().filter(|id| id.step == step).map(|id| &locs[id.index]).collect();
        self.instance
            .sb_terms
            .iter()
            .enumerate()
            .filter(|(_, t)| !blocked.iter().any(|loc| loc.intersects(&t.qubits)))
            .fold(0u64, |acc, (i, _)| acc | (1u64 << i))
    }

    /// Noisy evolution over one step, gates included.
    fn step_operator(&self, step: usize, active: u64) -> CMatrix {
        if let Some(u) = self.cache.borrow().get(&(step, active)) {
            return u.clone();
        }
        let mut h = self.bath.clone();
        for (i, term) in self.terms.iter().enumerate() {
            if active & (1u64 << i) != 0 {
                h += term;
            }
        }
        let mut u = unitary_propagator(&h, self.instance.steps[step].duration);
        if let Some(g) = &self.gates[step] {
            u *= g;
        }
        self.cache.borrow_mut().insert((step, active), u.clone());
        u
    }

    /// Full evolution with couplings touching the masked locations switched
    /// off for the steps those locations occupy.
    pub fn evolve_masked(&self, masked: &BTreeSet<LocationId>) -> Result<CMatrix> {
        self.check_locations(masked)?;
        let dim = self.instance.dim();
        let mut u = CMatrix::identity(dim, dim);
        for step in 0..self.instance.steps.len() {
            let active = self.active_terms(step, masked);
            u = self.step_operator(step, active) * u;
        }
        Ok(u)
    }

    fn check_query(&self, query: &FaultQuery) -> Result<()> {
        if query.r() > HARD_MAX_R {
            return Err(Error::resource(format!(
                "fault query with r = {} exceeds the cap r <= {HARD_MAX_R}",
                query.r()
            )));
        }
        self.check_locations(&query.locations)
    }

    /// `E(I_r) = sum_{S ⊆ I_r} (-1)^|S| U_S`.
    pub fn fault_operator(&self, query: &FaultQuery) -> Result<CMatrix> {
        self.check_query(query)?;
        let marked: Vec<LocationId> = query.locations.iter().copied().collect();
        let dim = self.instance.dim();
        let mut e = CMatrix::zeros(dim, dim);
        for subset in marked.iter().copied().powerset() {
            let odd = subset.len() % 2 == 1;
            let u = self.evolve_masked(&subset.into_iter().collect())?;
            if odd {
                e -= u;
            } else {
                e += u;
            }
        }
        Ok(e)
    }

    /// `E(I_r)` as the ordered product over steps of per-step alternating sums.
    pub fn fault_operator_factorized(&self, query: &FaultQuery) -> Result<CMatrix> {
        self.check_query(query)?;
        let dim = self.instance.dim();
        let mut e = CMatrix::identity(dim, dim);
        for step in 0..self.instance.steps.len() {
            let here: Vec<LocationId> = query.locations.iter().filter(|id| id.step == step).copied().collect();
            let mut d = CMatrix::zeros(dim, dim);
            for subset in here.iter().powerset() {
                let u = self.step_operator(step, self.active_terms(step, subset.iter().copied()));
                if subset.len() % 2 == 1 {
                    d -= u;
                } else {
                    d += u;
                }
            }
            e = d * e;
        }
        Ok(e)
    }
}

pub fn evolve_masked(instance: &SimInstance, masked: &BTreeSet<LocationId>) -> Result<CMatrix> {
    Simulator::new(instance)?.evolve_masked(masked)
}

pub fn fault_operator(instance: &SimInstance, query: &FaultQuery) -> Result<CMatrix> {
    Simulator::new(instance)?.fault_operator(query)
}

/// Checks `||E(I_r)|| <= eps^r` for every set of at most `max_r` locations,
/// with `eps` from the closed-form bound applied to the instance's own norms.
pub fn verify_instance(instance: &SimInstance, max_r: usize, thresholds: Thresholds<f64>) -> Result<Verification> {
    if max_r > HARD_MAX_R {
        return Err(Error::resource(format!("max_r = {max_r} exceeds the cap of {HARD_MAX_R}")));
    }
    let sim = Simulator::new(instance)?;
    let model = instance.noise_model()?;
    let profile = model.eta_profile(model.coupling.k_max())?;
    let bound = corollary1(&profile, instance.max_location_size(), thresholds)?;
    let eps = bound.epsilon;
    let conclusive = eps.is_some_and(|e| e < 1.0);

    let all = instance.locations();
    let mut results = Vec::new();
    for r in 1..=max_r.min(all.len()) {
        for combo in all.iter().copied().combinations(r) {
            let query = FaultQuery::new(combo.iter().copied());
            let norm = spectral_norm(&sim.fault_operator(&query)?)?;
            let epsilon_r = eps.map(|e| e.powi(r as i32));
            let margin = epsilon_r.map(|b| b - norm);
            let violated = conclusive && epsilon_r.is_some_and(|b| norm > b + NORM_SLACK);
            results.push(FaultOperatorResult { locations: combo, r, norm, epsilon_r, margin, conclusive, violated });
        }
    }
    Ok(Verification { profile, bound, results })
}
