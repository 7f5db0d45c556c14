// Copyright 2026 The corrnoise Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Largest singular value.
pub fn spectral_norm(m: &CMatrix) -> Result<f64> {
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::input("matrix has non-finite entries"));
    }
    if m.is_empty() {
        return Ok(0.0);
    }
    Ok(m.clone().singular_values().iter().fold(0.0f64, |a, &s| a.max(s)))
}

/// `exp(-i h t)` for Hermitian `h`, through its eigendecomposition.
pub fn unitary_propagator(h: &CMatrix, t: f64) -> CMatrix {
    let eig = SymmetricEigen::new(h.clone());
    let v = &eig.eigenvectors;
    let phases = eig.eigenvalues.map(|e| Complex64::from_polar(1.0, -e * t));
    let mut vd = v.clone();
    for (j, mut col) in vd.column_iter_mut().enumerate() {
        col *= phases[j];
    }
    vd * v.adjoint()
}

/// `||U^dagger U - I||`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.nrows();
    let d = u.adjoint() * u - CMatrix::identity(n, n);
    spectral_norm(&d).unwrap_or(f64::INFINITY)
}
