// Copyright 2026 The corrnoise Authors
// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use corrnoise::bound::{corollary1, Thresholds};
use corrnoise::verifier::{BathTerm, CouplingTerm, GateKind, GateOp, Pauli, PauliString, SimInstance, Step};
use corrnoise::QubitSet;
use nalgebra::SymmetricEigen;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

use corrnoise::verifier::CMatrix;

fn random_pauli<R: Rng>(rng: &mut R, allow_identity: bool) -> Pauli {
    let choices: &[Pauli] =
        if allow_identity { &[Pauli::I, Pauli::X, Pauli::Y, Pauli::Z] } else { &[Pauli::X, Pauli::Y, Pauli::Z] };
    *choices.choose(rng).unwrap()
}

fn random_string<R: Rng>(rng: &mut R, n: usize) -> PauliString {
    PauliString::new((0..n).map(|_| random_pauli(rng, false)).collect())
}

fn random_bath_string<R: Rng>(rng: &mut R, n: usize) -> PauliString {
    PauliString::new((0..n).map(|_| random_pauli(rng, true)).collect())
}

/// Random instance with O(1) coupling coefficients: `n_sys` in 2..=3, `n_bath`
/// in 1..=2, 2 to 4 steps, one-body and two-body Pauli couplings.
pub fn random_instance<R: Rng>(rng: &mut R) -> SimInstance {
    let n_sys = rng.gen_range(2..=3);
    let n_bath = rng.gen_range(1..=2);
    let bath_h = (0..rng.gen_range(1..=3))
        .map(|_| BathTerm { coeff: rng.gen_range(-1.0..1.0), pauli: random_string(rng, n_bath) })
        .collect();

    let mut sb_terms = Vec::new();
    let signed = |rng: &mut R| {
        let v: f64 = rng.gen_range(0.2..1.0);
        if rng.gen_bool(0.5) {
            v
        } else {
            -v
        }
    };
    for q in 0..n_sys {
        sb_terms.push(CouplingTerm {
            coeff: signed(rng),
            qubits: QubitSet::singleton(q),
            system: random_string(rng, 1),
            bath: random_bath_string(rng, n_bath),
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n_sys).flat_map(|a| ((a + 1)..n_sys).map(move |b| (a, b))).collect();
    for _ in 0..rng.gen_range(1..=3) {
        let &(a, b) = pairs.choose(rng).unwrap();
        sb_terms.push(CouplingTerm {
            coeff: signed(rng),
            qubits: QubitSet::new([a, b]).unwrap(),
            system: random_string(rng, 2),
            bath: random_bath_string(rng, n_bath),
        });
    }

    let steps = (0..rng.gen_range(2..=4))
        .map(|_| {
            let mut qubits: Vec<usize> = (0..n_sys).collect();
            qubits.shuffle(rng);
            let mut locations = Vec::new();
            let mut gates = Vec::new();
            let mut i = 0;
            while i < qubits.len() {
                if i + 1 < qubits.len() && rng.gen_bool(0.4) {
                    let (a, b) = (qubits[i], qubits[i + 1]);
                    locations.push(QubitSet::new([a, b]).unwrap());
                    gates.push(GateOp { name: GateKind::Cnot, qubits: vec![a, b] });
                    i += 2;
                } else {
                    let q = qubits[i];
                    locations.push(QubitSet::singleton(q));
                    let g = *[GateKind::I, GateKind::H, GateKind::S, GateKind::T, GateKind::X].choose(rng).unwrap();
                    if g != GateKind::I {
                        gates.push(GateOp { name: g, qubits: vec![q] });
                    }
                    i += 1;
                }
            }
            Step { duration: rng.gen_range(0.5..1.0), locations, gates }
        })
        .collect();

    SimInstance { n_sys, n_bath, bath_h, sb_terms, steps }
}

/// Closed-form epsilon for the instance's own coupling norms.
pub fn instance_epsilon(inst: &SimInstance) -> Option<f64> {
    let model = inst.noise_model().ok()?;
    let profile = model.eta_profile(model.coupling.k_max()).ok()?;
    corollary1(&profile, inst.max_location_size(), Thresholds::default()).ok()?.epsilon
}

/// Rescales the couplings so the instance's epsilon hits `target`.
pub fn scale_to_epsilon(inst: &SimInstance, target: f64) -> SimInstance {
    let (mut lo, mut hi) = (1e-8f64, 1.0f64);
    while instance_epsilon(&inst.scaled_couplings(hi)).is_some_and(|e| e < target) {
        hi *= 2.0;
    }
    for _ in 0..100 {
        let mid = (lo * hi).sqrt();
        match instance_epsilon(&inst.scaled_couplings(mid)) {
            Some(e) if e < target => lo = mid,
            _ => hi = mid,
        }
    }
    inst.scaled_couplings(lo)
}

/// First-order Dyson term of `E(I_1)` for a single marked location, computed
/// in the eigenbasis of `H_B` from the instance's raw operators.
pub fn first_order_fault_term(inst: &SimInstance, step: usize, index: usize) -> CMatrix {
    let dim = inst.dim();
    let hb = inst.bath_hamiltonian();
    let eig = SymmetricEigen::new(hb.clone());
    let w = eig.eigenvectors.clone();
    let b = eig.eigenvalues.clone();
    let free = |d: f64| {
        let mut vd = w.clone();
        for (j, mut col) in vd.column_iter_mut().enumerate() {
            col *= Complex64::from_polar(1.0, -b[j] * d);
        }
        vd * w.adjoint()
    };
    let with_gates = |s: usize, u: CMatrix| match inst.gate_unitary(s) {
        Some(g) => u * g,
        None => u,
    };

    let loc = &inst.steps[step].locations[index];
    let mut v = CMatrix::zeros(dim, dim);
    for (i, t) in inst.sb_terms.iter().enumerate() {
        if t.qubits.intersects(loc) {
            v += inst.term_operator(i);
        }
    }
    let d = inst.steps[step].duration;
    let vt = w.adjoint() * v * &w;
    let mut integral = CMatrix::zeros(dim, dim);
    for a in 0..dim {
        for c in 0..dim {
            let delta = b[a] - b[c];
            let phi = if delta.abs() < 1e-12 {
                Complex64::new(d, 0.0)
            } else {
                (Complex64::new(0.0, delta * d).exp() - 1.0) / Complex64::new(0.0, delta)
            };
            integral[(a, c)] = vt[(a, c)] * Complex64::from_polar(1.0, -b[a] * d) * phi;
        }
    }
    let middle = (&w * integral * w.adjoint()) * Complex64::new(0.0, -1.0);

    let mut e = CMatrix::identity(dim, dim);
    for s in 0..inst.steps.len() {
        let u = if s == step { with_gates(s, middle.clone()) } else { with_gates(s, free(inst.steps[s].duration)) };
        e = u * e;
    }
    e
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

pub fn geometric_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
}

pub fn fact(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// `[x^r] prod_k exp(eta_k x^k)` by multiplying truncated power series.
pub fn series_product_f64(r: usize, eta: &[f64]) -> f64 {
    let mut acc = vec![0.0; r + 1];
    acc[0] = 1.0;
    for (i, &e) in eta.iter().enumerate().take(r) {
        let k = i + 1;
        let mut factor = vec![0.0; r + 1];
        let mut power = 1.0;
        for j in 0..=(r / k) {
            factor[j * k] = power / fact(j);
            power *= e;
        }
        let mut next = vec![0.0; r + 1];
        for a in 0..=r {
            for b in 0..=(r - a) {
                next[a + b] += acc[a] * factor[b];
            }
        }
        acc = next;
    }
    acc[r]
}
