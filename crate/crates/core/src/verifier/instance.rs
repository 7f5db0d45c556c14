// Copyright 2026 The corrnoise Authors
// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::linalg::{spectral_norm, CMatrix};
use super::pauli::PauliString;
use crate::error::{Error, Result};
use crate::noise_model::{CouplingSpec, NoiseModel, QubitLayout, QubitSet};

pub const MAX_SYSTEM_QUBITS: usize = 6;
pub const MAX_BATH_QUBITS: usize = 4;
pub const MAX_DIMENSION: usize = 1024;
/// Masks are stored as bitsets over coupling terms.
pub const MAX_COUPLING_TERMS: usize = 64;

/// Term of the bath Hamiltonian.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BathTerm {
    pub coeff: f64,
    /// One factor per bath qubit.
    pub pauli: PauliString,
}

/// `coeff * system ⊗ bath`, acting on the system qubits in `qubits`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingTerm {
    pub coeff: f64,
    pub qubits: QubitSet,
    /// One factor per entry of `qubits`, in ascending qubit order.
    pub system: PauliString,
    /// One factor per bath qubit; empty means identity on the bath.
    #[serde(default)]
    pub bath: PauliString,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GateKind {
    I,
    H,
    X,
    Y,
    Z,
    S,
    T,
    #[serde(rename = "CNOT")]
    Cnot,
    #[serde(rename = "CZ")]
    Cz,
    #[serde(rename = "SWAP")]
    Swap,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot | GateKind::Cz | GateKind::Swap => 2,
            _ => 1,
        }
    }

    pub fn matrix(self) -> CMatrix {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        match self {
            GateKind::I => DMatrix::identity(2, 2),
            GateKind::H => DMatrix::from_row_slice(2, 2, &[h, h, h, -h]),
            GateKind::X => DMatrix::from_row_slice(2, 2, &[o, l, l, o]),
            GateKind::Y => DMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
            GateKind::Z => DMatrix::from_row_slice(2, 2, &[l, o, o, -l]),
            GateKind::S => DMatrix::from_row_slice(2, 2, &[l, o, o, i]),
            GateKind::T => {
                DMatrix::from_row_slice(2, 2, &[l, o, o, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)])
            }
            GateKind::Cnot => DMatrix::from_row_slice(4, 4, &[l, o, o, o, o, l, o, o, o, o, o, l, o, o, l, o]),
            GateKind::Cz => DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![l, l, l, -l])),
            GateKind::Swap => DMatrix::from_row_slice(4, 4, &[l, o, o, o, o, o, l, o, o, l, o, o, o, o, o, l]),
        }
    }
}

/// Ideal gate applied at the start of a step. The first listed qubit is the
/// most significant index of the gate matrix (the control for CNOT).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateOp {
    pub name: GateKind,
    pub qubits: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Step {
    pub duration: f64,
    /// Disjoint system-qubit sets, one per circuit location in this step.
    pub locations: Vec<QubitSet>,
    #[serde(default)]
    pub gates: Vec<GateOp>,
}

/// Circuit location addressed by step and position within the step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LocationId {
    pub step: usize,
    pub index: usize,
}

impl fmt::Display for LocationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}.l{}", self.step, self.index)
    }
}

/// Explicit system + bath model on a handful of qubits.
///
/// Register layout: system qubits `0..n_sys` followed by bath qubits, qubit 0
/// being the most significant bit of a basis index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimInstance {
    pub n_sys: usize,
    #[serde(default)]
    pub n_bath: usize,
    #[serde(default)]
    pub bath_h: Vec<BathTerm>,
    #[serde(default)]
    pub sb_terms: Vec<CouplingTerm>,
    pub steps: Vec<Step>,
}

impl SimInstance {
    pub fn n_total(&self) -> usize {
        self.n_sys + self.n_bath
    }

    pub fn dim(&self) -> usize {
        1usize << self.n_total()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sys == 0 {
            return Err(Error::input("n_sys must be at least 1"));
        }
        if self.n_sys > MAX_SYSTEM_QUBITS || self.n_bath > MAX_BATH_QUBITS {
            return Err(Error::resource(format!(
                "instance has {} system and {} bath qubits; limits are {MAX_SYSTEM_QUBITS} and {MAX_BATH_QUBITS}",
                self.n_sys, self.n_bath
            )));
        }
        if self.dim() > MAX_DIMENSION {
            return Err(Error::resource(format!("Hilbert dimension {} exceeds {MAX_DIMENSION}", self.dim())));
        }
        if self.sb_terms.len() > MAX_COUPLING_TERMS {
            return Err(Error::resource(format!(
                "{} coupling terms exceed the limit of {MAX_COUPLING_TERMS}",
                self.sb_terms.len()
            )));
        }
        for (i, t) in self.bath_h.iter().enumerate() {
            if !t.coeff.is_finite() {
                return Err(Error::input(format!("bath_h[{i}].coeff is not finite")));
            }
            if t.pauli.len() != self.n_bath {
                return Err(Error::input(format!(
                    "bath_h[{i}].pauli has {} factors for {} bath qubits",
                    t.pauli.len(),
                    self.n_bath
                )));
            }
        }
        for (i, t) in self.sb_terms.iter().enumerate() {
            if !t.coeff.is_finite() {
                return Err(Error::input(format!("sb_terms[{i}].coeff is not finite")));
            }
            if t.qubits.is_empty() {
                return Err(Error::input(format!("sb_terms[{i}].qubits is empty")));
            }
            if t.qubits.max_index().is_some_and(|q| q >= self.n_sys) {
                return Err(Error::input(format!("sb_terms[{i}].qubits {} out of range", t.qubits)));
            }
            if t.system.len() != t.qubits.len() {
                return Err(Error::input(format!(
                    "sb_terms[{i}].system has {} factors for {} qubits",
                    t.system.len(),
                    t.qubits.len()
                )));
            }
            if !t.bath.is_empty() && t.bath.len() != self.n_bath {
                return Err(Error::input(format!(
                    "sb_terms[{i}].bath has {} factors for {} bath qubits",
                    t.bath.len(),
                    self.n_bath
                )));
            }
        }
        if self.steps.is_empty() {
            return Err(Error::input("instance has no steps"));
        }
        for (s, step) in self.steps.iter().enumerate() {
            if !(step.duration > 0.0) || !step.duration.is_finite() {
                return Err(Error::input(format!("steps[{s}].duration must be positive")));
            }
            let mut seen = BTreeSet::new();
            for (j, loc) in step.locations.iter().enumerate() {
                if loc.is_empty() {
                    return Err(Error::input(format!("steps[{s}].locations[{j}] is empty")));
                }
                for q in loc.iter() {
                    if q >= self.n_sys {
                        return Err(Error::input(format!("steps[{s}].locations[{j}] qubit {q} out of range")));
                    }
                    if !seen.insert(q) {
                        return Err(Error::input(format!("steps[{s}] locations overlap on qubit {q}")));
                    }
                }
            }
            for (j, g) in step.gates.iter().enumerate() {
                if g.qubits.len() != g.name.arity() {
                    return Err(Error::input(format!(
                        "steps[{s}].gates[{j}] {:?} acts on {} qubits, got {}",
                        g.name,
                        g.name.arity(),
                        g.qubits.len()
                    )));
                }
                if g.qubits.iter().any(|&q| q >= self.n_sys) {
                    return Err(Error::input(format!("steps[{s}].gates[{j}] qubit out of range")));
                }
                if QubitSet::new(g.qubits.iter().copied()).is_err() {
                    return Err(Error::input(format!("steps[{s}].gates[{j}] repeats a qubit")));
                }
            }
        }
        Ok(())
    }

    /// Longest step duration.
    pub fn t0(&self) -> f64 {
        self.steps.iter().map(|s| s.duration).fold(0.0, f64::max)
    }

    /// Largest location, i.e. the maximal gate arity `m` (at least 1).
    pub fn max_location_size(&self) -> usize {
        self.steps.iter().flat_map(|s| s.locations.iter().map(QubitSet::len)).max().unwrap_or(1).max(1)
    }

    pub fn locations(&self) -> Vec<LocationId> {
        self.steps
            .iter()
            .enumerate()
            .flat_map(|(step, s)| (0..s.locations.len()).map(move |index| LocationId { step, index }))
            .collect()
    }

    pub fn location(&self, id: LocationId) -> Result<&QubitSet> {
        self.steps
            .get(id.step)
            .and_then(|s| s.locations.get(id.index))
            .ok_or_else(|| Error::input(format!("location {id} does not exist")))
    }

    /// `H_B` on the full register.
    pub fn bath_hamiltonian(&self) -> CMatrix {
        let n = self.n_total();
        let targets: Vec<usize> = (self.n_sys..n).collect();
        let mut h = CMatrix::zeros(self.dim(), self.dim());
        for t in &self.bath_h {
            h += t.pauli.embed(&targets, n) * Complex64::new(t.coeff, 0.0);
        }
        h
    }

    /// Coupling term `i` on the full register, coefficient included.
    pub fn term_operator(&self, i: usize) -> CMatrix {
        let t = &self.sb_terms[i];
        let n = self.n_total();
        let sys = t.system.embed(t.qubits.as_slice(), n);
        let op = if t.bath.is_empty() {
            sys
        } else {
            let targets: Vec<usize> = (self.n_sys..n).collect();
            sys * t.bath.embed(&targets, n)
        };
        op * Complex64::new(t.coeff, 0.0)
    }

    /// Unitary for the gates of one step, on the full register.
    pub fn gate_unitary(&self, step: usize) -> Option<CMatrix> {
        let gates = &self.steps[step].gates;
        if gates.is_empty() {
            return None;
        }
        let n = self.n_total();
        let mut u = CMatrix::identity(self.dim(), self.dim());
        for g in gates {
            u = embed_gate(&g.name.matrix(), &g.qubits, n) * u;
        }
        Some(u)
    }

    /// Declared norm of each k-body term, keyed by qubit set. Terms sharing a
    /// set are combined into one operator before taking the norm.
    pub fn term_norms(&self) -> Result<BTreeMap<QubitSet, f64>> {
        let mut groups: BTreeMap<QubitSet, Vec<usize>> = BTreeMap::new();
        for (i, t) in self.sb_terms.iter().enumerate() {
            groups.entry(t.qubits.clone()).or_default().push(i);
        }
        let mut out = BTreeMap::new();
        for (set, idx) in groups {
            let norm = if let [single] = idx[..] {
                // Pauli strings have unit norm
                self.sb_terms[single].coeff.abs()
            } else {
                let mut sum = CMatrix::zeros(self.dim(), self.dim());
                for i in idx {
                    sum += self.term_operator(i);
                }
                spectral_norm(&sum)?
            };
            out.insert(set, norm);
        }
        Ok(out)
    }

    /// Table noise model induced by this instance's own coupling norms.
    pub fn noise_model(&self) -> Result<NoiseModel<f64>> {
        let norms = self.term_norms()?;
        let k_max = norms.keys().map(QubitSet::len).max().unwrap_or(1);
        Ok(NoiseModel::new(QubitLayout::abstract_qubits(self.n_sys), CouplingSpec::Table { k_max, norms }, self.t0()))
    }

    /// Same instance with every coupling coefficient multiplied by `c`.
    pub fn scaled_couplings(&self, c: f64) -> SimInstance {
        let mut out = self.clone();
        for t in &mut out.sb_terms {
            t.coeff *= c;
        }
        out
    }

    /// Relabels system qubit `q` as `perm[q]` everywhere.
    pub fn relabeled(&self, perm: &[usize]) -> Result<SimInstance> {
        let valid = perm.len() == self.n_sys
            && QubitSet::new(perm.iter().copied()).is_ok()
            && perm.iter().all(|&q| q < self.n_sys);
        if !valid {
            return Err(Error::input("relabeling must be a permutation of the system qubits"));
        }
        let mut out = self.clone();
        for t in &mut out.sb_terms {
            let mut pairs: Vec<(usize, _)> =
                t.qubits.iter().map(|q| perm[q]).zip(t.system.ops().iter().copied()).collect();
            pairs.sort_by_key(|&(q, _)| q);
            t.qubits = QubitSet::new(pairs.iter().map(|&(q, _)| q))?;
            t.system = PauliString::new(pairs.into_iter().map(|(_, p)| p).collect());
        }
        for step in &mut out.steps {
            for loc in &mut step.locations {
                *loc = loc.relabel(perm)?;
            }
            for g in &mut step.gates {
                for q in &mut g.qubits {
                    *q = perm[*q];
                }
            }
        }
        Ok(out)
    }
}

/// Embeds a `2^k`-dimensional gate acting on `targets` into an `n`-qubit register.
fn embed_gate(gate: &CMatrix, targets: &[usize], n: usize) -> CMatrix {
    let dim = 1usize << n;
    let k = targets.len();
    let bits: Vec<usize> = targets.iter().map(|&q| 1usize << (n - 1 - q)).collect();
    let sub_index = |b: usize| bits.iter().fold(0usize, |acc, &bit| (acc << 1) | usize::from(b & bit != 0));
    let with_sub = |b: usize, s: usize| {
        bits.iter().enumerate().fold(
            b,
            |acc, (j, &bit)| {
                if (s >> (k - 1 - j)) & 1 == 1 {
                    acc | bit
                } else {
                    acc & !bit
                }
            },
        )
    };
    let mut m = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let s_in = sub_index(col);
        for s_out in 0..(1usize << k) {
            let amp = gate[(s_out, s_in)];
            if amp != Complex64::new(0.0, 0.0) {
                m[(with_sub(col, s_out), col)] += amp;
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_qubit_instance(lambda: f64) -> SimInstance {
        SimInstance {
            n_sys: 1,
            n_bath: 1,
            bath_h: vec![],
            sb_terms: vec![CouplingTerm {
                coeff: lambda,
                qubits: QubitSet::singleton(0),
                system: "X".parse().unwrap(),
                bath: "X".parse().unwrap(),
            }],
            steps: vec![Step { duration: 1.0, locations: vec![QubitSet::singleton(0)], gates: vec![] }],
        }
    }

    #[test]
    fn gates_are_unitary_and_embed_correctly() {
        for g in [GateKind::H, GateKind::S, GateKind::T, GateKind::Cnot, GateKind::Cz, GateKind::Swap] {
            let m = g.matrix();
            assert!(super::super::linalg::unitarity_defect(&m) < 1e-14, "{g:?}");
        }
        // CNOT with control 1, target 0 on two qubits: |01> -> |11>
        let u = embed_gate(&GateKind::Cnot.matrix(), &[1, 0], 2);
        assert_eq!(u[(0b11, 0b01)], Complex64::new(1.0, 0.0));
        assert_eq!(u[(0b10, 0b10)], Complex64::new(1.0, 0.0));
        // X on qubit 1 of 2 equals I ⊗ X
        let x1 = embed_gate(&GateKind::X.matrix(), &[1], 2);
        let want = GateKind::I.matrix().kronecker(&GateKind::X.matrix());
        assert!((x1 - want).norm() < 1e-15);
    }

    #[test]
    fn validation_catches_structure_errors() {
        let mut inst = one_qubit_instance(0.1);
        assert!(inst.validate().is_ok());
        inst.sb_terms[0].bath = "XX".parse().unwrap();
        assert!(matches!(inst.validate(), Err(Error::Input(_))));

        let mut overlap = one_qubit_instance(0.1);
        overlap.n_sys = 2;
        overlap.steps[0].locations = vec![QubitSet::new([0, 1]).unwrap(), QubitSet::singleton(1)];
        assert!(overlap.validate().is_err());

        let mut big = one_qubit_instance(0.1);
        big.n_sys = 7;
        assert!(matches!(big.validate(), Err(Error::Resource(_))));
    }

    #[test]
    fn induced_noise_model() {
        let mut inst = one_qubit_instance(-0.25);
        inst.steps.push(Step { duration: 2.0, locations: vec![QubitSet::singleton(0)], gates: vec![] });
        let model = inst.noise_model().unwrap();
        assert_eq!(model.t0, 2.0);
        let p = model.eta_profile(1).unwrap();
        assert!((p.eta_tilde(1) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn grouped_terms_use_operator_norm() {
        // 0.3 X⊗X + 0.4 Z⊗X on the same qubit: (0.3 X + 0.4 Z) ⊗ X has norm 0.5
        let mut inst = one_qubit_instance(0.3);
        inst.sb_terms.push(CouplingTerm {
            coeff: 0.4,
            qubits: QubitSet::singleton(0),
            system: "Z".parse().unwrap(),
            bath: "X".parse().unwrap(),
        });
        let norms = inst.term_norms().unwrap();
        assert!((norms[&QubitSet::singleton(0)] - 0.5).abs() < 1e-12);
    }
}
