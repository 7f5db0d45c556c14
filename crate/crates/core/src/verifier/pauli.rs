// Copyright 2026 The corrnoise Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_char(c: char) -> Result<Self> {
        match c {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(Error::input(format!("invalid Pauli character {other:?}; expected I, X, Y or Z"))),
        }
    }

    fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn matrix(self) -> DMatrix<Complex64> {
        let (o, l, i) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0));
        let entries = match self {
            Pauli::I => [l, o, o, l],
            Pauli::X => [o, l, l, o],
            Pauli::Y => [o, -i, i, o],
            Pauli::Z => [l, o, o, -l],
        };
        DMatrix::from_row_slice(2, 2, &entries)
    }
}

/// Tensor product of single-qubit Paulis, written left to right as a string
/// over `{I, X, Y, Z}`; the first character acts on the first listed qubit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(ops: Vec<Pauli>) -> Self {
        PauliString(ops)
    }

    pub fn identity(n: usize) -> Self {
        PauliString(vec![Pauli::I; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ops(&self) -> &[Pauli] {
        &self.0
    }

    /// Dense operator on an `n_total`-qubit register, acting with `self[j]` on
    /// register qubit `targets[j]` and as identity elsewhere. Qubit 0 is the
    /// most significant bit of the basis index.
    pub fn embed(&self, targets: &[usize], n_total: usize) -> DMatrix<Complex64> {
        assert_eq!(targets.len(), self.len(), "one target per Pauli factor");
        let dim = 1usize << n_total;
        let mut flip = 0usize;
        let mut sign = 0usize;
        let mut n_y = 0u32;
        for (&op, &q) in self.0.iter().zip(targets) {
            let bit = 1usize << (n_total - 1 - q);
            match op {
                Pauli::I => {}
                Pauli::X => flip |= bit,
                Pauli::Y => {
                    flip |= bit;
                    sign |= bit;
                    n_y += 1;
                }
                Pauli::Z => sign |= bit,
            }
        }
        // Y = i X Z: Y|b> = i (-1)^b |1-b>
        let global = Complex64::new(0.0, 1.0).powu(n_y);
        let mut m = DMatrix::zeros(dim, dim);
        for col in 0..dim {
            let phase = if (col & sign).count_ones() % 2 == 1 { -global } else { global };
            m[(col ^ flip, col)] = phase;
        }
        m
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars().map(Pauli::from_char).collect::<Result<Vec<_>>>().map(PauliString)
    }
}

impl TryFrom<String> for PauliString {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<PauliString> for String {
    fn from(p: PauliString) -> String {
        p.to_string()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|p| write!(f, "{}", p.as_char()))
    }
}
