//! Sample-size calculators for VC-bounded ranges and compression maps.

use super::compression::binomial;
use crate::error::{invalid, Error, Result};
use serde::{Deserialize, Serialize};

/// Largest sample size considered when inverting the compression bound.
pub const MAX_SAMPLE_SIZE: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundQuery {
    pub epsilon: f64,
    pub beta: f64,
    /// VC dimension or compression capacity.
    pub d: u64,
    pub n: Option<u64>,
}

impl BoundQuery {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(invalid(format!(
                "epsilon must lie in (0,1), got {}",
                self.epsilon
            )));
        }
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(invalid(format!(
                "beta must lie in (0,1), got {}",
                self.beta
            )));
        }
        Ok(())
    }
}

/// `N = ceil((4/eps) (d ln(12/eps) + ln(2/beta)))`.
pub fn vc_sample_bound(q: &BoundQuery) -> Result<u64> {
    q.validate()?;
    if q.d == 0 {
        return Err(invalid("VC dimension must be at least 1"));
    }
    let eps = q.epsilon;
    let raw = (4.0 / eps) * (q.d as f64 * (12.0 / eps).ln() + (2.0 / q.beta).ln());
    if !(raw < u64::MAX as f64) {
        return Err(Error::NumericalDegeneracy(format!(
            "sample bound {raw} overflows"
        )));
    }
    Ok(raw.ceil() as u64)
}

/// `C(N, d) (1 - eps)^(N - d)`, exactly when the coefficient fits and in log
/// space otherwise.
pub fn compression_bound_beta(n: u64, d: u64, epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(invalid(format!("epsilon must lie in (0,1), got {epsilon}")));
    }
    if d >= n {
        return Err(invalid(format!("capacity d = {d} must be below N = {n}")));
    }
    let q = 1.0 - epsilon;
    let exp = n - d;
    if let (Some(c), Ok(e)) = (binomial(n, d), i32::try_from(exp)) {
        let v = c as f64 * q.powi(e);
        if v.is_finite() && v > 0.0 {
            return Ok(v);
        }
    }
    let ln_c: f64 = (0..d.min(n - d))
        .map(|j| ((n - j) as f64).ln() - ((j + 1) as f64).ln())
        .sum();
    Ok((ln_c + exp as f64 * q.ln()).exp())
}

/// Smallest `N > d` with `C(N, d) (1 - eps)^(N - d) <= beta`.
///
/// The bound decreases strictly once `N + 1 > d / eps`; below that point a
/// linear scan is used, beyond it an exponential then binary search.
pub fn compression_min_n(d: u64, epsilon: f64, beta: f64) -> Result<u64> {
    BoundQuery {
        epsilon,
        beta,
        d,
        n: None,
    }
    .validate()?;
    let below = |n: u64| compression_bound_beta(n, d, epsilon).map(|b| b <= beta);
    let turn = ((d as f64 / epsilon).ceil() as u64)
        .max(d + 1)
        .min(MAX_SAMPLE_SIZE);
    for n in d + 1..=turn {
        if below(n)? {
            return Ok(n);
        }
    }
    let mut lo = turn;
    let mut step = 1u64;
    let hi = loop {
        let cand = lo.saturating_add(step).min(MAX_SAMPLE_SIZE);
        if below(cand)? {
            break cand;
        }
        if cand == MAX_SAMPLE_SIZE {
            return Err(Error::NonConvergence(format!(
                "no N <= {MAX_SAMPLE_SIZE} reaches beta = {beta}"
            )));
        }
        lo = cand;
        step = step.saturating_mul(2);
    };
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if below(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompressionBound {
    Beta(f64),
    MinimalN(u64),
}

/// The bound value at `q.n` when given, otherwise the minimal `N` for `q.beta`.
pub fn compression_bound(q: &BoundQuery) -> Result<CompressionBound> {
    match q.n {
        Some(n) => compression_bound_beta(n, q.d, q.epsilon).map(CompressionBound::Beta),
        None => compression_min_n(q.d, q.epsilon, q.beta).map(CompressionBound::MinimalN),
    }
}
