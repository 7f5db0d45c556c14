// Copyright 2026 The corrnoise Authors
// SPDX-License-Identifier: Apache-2.0

//! Scalar abstraction shared by the bound arithmetic.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating-point scalar used by the noise model, the bound engine and
/// the contraction oracle. Implemented for `f32` and `f64`.
pub trait Scalar: Float + FloatConst + FromPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static {
    /// Lossless-enough conversion of small constants.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("constant representable in scalar type")
    }

    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("integer representable in scalar type")
    }

    /// Unit roundoff scaled for comparisons in tests and sanity checks.
    fn eps() -> Self {
        Self::epsilon()
    }
}

impl<T> Scalar for T where
    T: Float + FloatConst + FromPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
}

/// `n!` in the scalar type. Overflows to infinity past the type's range.
pub fn factorial<T: Scalar>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, i| acc * T::of_usize(i))
}

/// `1/n!` computed as a running product so it underflows gracefully instead
/// of passing through an infinite `n!`.
pub fn inv_factorial<T: Scalar>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, i| acc / T::of_usize(i))
}
