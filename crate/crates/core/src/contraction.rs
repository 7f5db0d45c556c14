// Copyright 2026 The corrnoise Authors
// SPDX-License-Identifier: Apache-2.0

//! Combinatorics behind the fault-path bound.
//!
//! The first insertions at `r` marked locations are grouped into contractions:
//! a single coupling term hitting `k` marked locations at once is a
//! `k`-contraction of strength `eta_k`. Summing over all ways of covering the
//! `r` locations gives the partition sum
//!
//! ```text
//! sum_{r_1 + 2 r_2 + ... = r}  prod_k eta_k^{r_k} / r_k!
//! ```
//!
//! which is the `x^r` coefficient of `exp(sum_k eta_k x^k)`. Dropping the
//! constraint on the multiplicities gives the product bound of
//! [`relaxed_product_bound`].

use num_traits::{FromPrimitive, Num};
use serde::Serialize;

use crate::bound::geometric_constant;
use crate::error::{Error, Result};
use crate::scalar::{inv_factorial, Scalar};

/// Largest `r` the partition enumeration accepts by default.
pub const DEFAULT_MAX_PARTITION_R: usize = 20;

/// Upper bounds on contraction strengths for `r` marked locations.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContractionStrengths<T> {
    pub r: usize,
    /// `eta[k-1]` bounds the strength of a `k`-contraction, `k = 1..=r`.
    pub eta: Vec<T>,
}

/// Builds contraction strengths from the single-location components
/// `components[j-1] = eta_1^(j)`.
///
/// `eta_1 = sum_j eta_1^(j)` does not depend on `r`; for `k > 1`,
/// `eta_k = r/(2k) * sum_{l >= 0} 2^(k+l) eta_1^(k+l)`.
pub fn contraction_strengths<T: Scalar>(r: usize, components: &[T]) -> Result<ContractionStrengths<T>> {
    if r == 0 {
        return Err(Error::input("r must be at least 1"));
    }
    if let Some(bad) = components.iter().find(|c| !(**c >= T::zero()) || !c.is_finite()) {
        return Err(Error::input(format!("contraction component {bad} must be finite and >= 0")));
    }
    let two = T::of(2.0);
    let rf = T::of_usize(r);
    let eta = (1..=r)
        .map(|k| {
            if k == 1 {
                return components.iter().copied().sum();
            }
            let s: T = components.iter().enumerate().skip(k - 1).map(|(i, &c)| two.powi((i + 1) as i32) * c).sum();
            rf / (two * T::of_usize(k)) * s
        })
        .collect();
    Ok(ContractionStrengths { r, eta })
}

/// Exact sum over multiplicity vectors `(r_1, r_2, ...)` with
/// `sum_k k r_k = r` of `prod_k eta_k^{r_k} / r_k!`.
///
/// Generic over any field-like scalar, so it runs in `f64` and exactly over
/// rationals alike.
pub fn exact_partition_sum<T>(r: usize, eta: &[T]) -> Result<T>
where
    T: Clone + Num + FromPrimitive,
{
    exact_partition_sum_capped(r, eta, DEFAULT_MAX_PARTITION_R)
}

pub fn exact_partition_sum_capped<T>(r: usize, eta: &[T], max_r: usize) -> Result<T>
where
    T: Clone + Num + FromPrimitive,
{
    if r == 0 {
        return Err(Error::input("r must be at least 1"));
    }
    if r > max_r {
        return Err(Error::resource(format!("partition enumeration for r = {r} exceeds the cap r <= {max_r}")));
    }
    if eta.len() < r {
        return Err(Error::input(format!("need eta_1..eta_{r}, got {} values", eta.len())));
    }
    Ok(descend(r, r, eta))
}

/// Sum over partitions of `remaining` into parts no larger than `largest`.
fn descend<T>(remaining: usize, largest: usize, eta: &[T]) -> T
where
    T: Clone + Num + FromPrimitive,
{
    if remaining == 0 {
        return T::one();
    }
    let mut total = T::zero();
    for k in (1..=largest.min(remaining)).rev() {
        // parts of size k appear `count` times: eta_k^count / count!
        let mut weight = T::one();
        let mut count = 1;
        while count * k <= remaining {
            weight = weight * eta[k - 1].clone() / T::from_usize(count).expect("small integer");
            total = total + weight.clone() * descend(remaining - count * k, k - 1, eta);
            count += 1;
        }
    }
    total
}

/// `x^r` coefficient of `exp(sum_k eta_k x^k)` from the recurrence
/// `n a_n = sum_{k=1}^n k eta_k a_{n-k}`.
pub fn exp_series_coefficient<T>(r: usize, eta: &[T]) -> T
where
    T: Clone + Num + FromPrimitive,
{
    let mut a: Vec<T> = Vec::with_capacity(r + 1);
    a.push(T::one());
    for n in 1..=r {
        let mut acc = T::zero();
        for k in 1..=n.min(eta.len()) {
            let kk = T::from_usize(k).expect("small integer");
            acc = acc + kk * eta[k - 1].clone() * a[n - k].clone();
        }
        a.push(acc / T::from_usize(n).expect("small integer"));
    }
    a.swap_remove(r)
}

/// `(2 alpha exp(sum_k g_k / (2 k!)))^r` for `g[k-1] = g_k`.
pub fn relaxed_product_bound<T: Scalar>(r: usize, alpha: T, g: &[T]) -> Result<T> {
    geometric_constant(alpha)?;
    if let Some(bad) = g.iter().find(|v| !v.is_finite()) {
        return Err(Error::input(format!("g entry {bad} is not finite")));
    }
    let exponent: T = g.iter().enumerate().map(|(i, &gk)| gk * T::of(0.5) * inv_factorial::<T>(i + 1)).sum();
    let base = T::of(2.0) * alpha * exponent.exp();
    if !base.is_finite() {
        return Err(Error::divergence("relaxed product bound overflowed"));
    }
    Ok(base.powi(r as i32))
}

/// `C(n, k)` in exact integer arithmetic; `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i + 1) as u128;
    }
    Some(acc)
}

/// Pairs `(k, l)` with `k >= 1`, `k + l <= max_total` for which
/// `C(k+l-1, l) > 2^(k+l-1)`. Empty when the domination holds throughout.
pub fn binomial_domination_violations(max_total: u64) -> Vec<(u64, u64)> {
    let mut bad = Vec::new();
    for k in 1..=max_total {
        for l in 0..=(max_total - k) {
            let n = k + l - 1;
            let lhs = binomial(n, l).expect("fits in u128");
            let rhs = 1u128 << n;
            if lhs > rhs {
                bad.push((k, l));
            }
        }
    }
    bad
}
