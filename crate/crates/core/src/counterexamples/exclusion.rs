//! Systems over the natural numbers with exclusion constraints
//! `U(a) = N \ {a}`.
//!
//! [`SumSystem`] returns `1 + sum a_i`: PAC (its range has VC dimension 1)
//! but without any compression scheme. [`MinSystem`] returns the least
//! natural number not excluded: stable and PAC but without a compression map.

use crate::framework::{ConstraintDistribution, ScenarioSystem};
use crate::rng::TrialRng;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// `U(a)`: every natural number except `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Exclusion {
    pub exclude: u64,
}

impl Exclusion {
    pub const fn new(a: u64) -> Self {
        Self { exclude: a }
    }
}

pub fn excl(values: &[u64]) -> Vec<Exclusion> {
    values.iter().map(|&a| Exclusion::new(a)).collect()
}

/// `1 + sum a_i`. Saturates at `u64::MAX`, far beyond any sampled input.
pub fn alg_sum(constraints: &[Exclusion]) -> u64 {
    constraints
        .iter()
        .fold(1u64, |acc, z| acc.saturating_add(z.exclude))
}

/// `min (N \ {a_1, ..., a_N})`.
pub fn alg_min(constraints: &[Exclusion]) -> u64 {
    let excluded: HashSet<u64> = constraints.iter().map(|z| z.exclude).collect();
    (0..)
        .find(|x| !excluded.contains(x))
        .expect("finite exclusion set")
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SumSystem;

#[derive(Debug, Clone, Copy, Default)]
pub struct MinSystem;

impl ScenarioSystem for SumSystem {
    type Constraint = Exclusion;
    type Decision = u64;

    fn name(&self) -> &str {
        "sum-no-scheme"
    }
    fn decide(&self, constraints: &[Exclusion]) -> u64 {
        alg_sum(constraints)
    }
    fn satisfies(&self, x: &u64, z: &Exclusion) -> bool {
        *x != z.exclude
    }
    fn same_decision(&self, a: &u64, b: &u64) -> bool {
        a == b
    }
}

impl ScenarioSystem for MinSystem {
    type Constraint = Exclusion;
    type Decision = u64;

    fn name(&self) -> &str {
        "min-no-map"
    }
    fn decide(&self, constraints: &[Exclusion]) -> u64 {
        alg_min(constraints)
    }
    fn satisfies(&self, x: &u64, z: &Exclusion) -> bool {
        *x != z.exclude
    }
    fn same_decision(&self, a: &u64, b: &u64) -> bool {
        a == b
    }
}

/// Geometric law on the naturals, `p(a) = 2^-(a+1)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct GeometricExclusion;

impl GeometricExclusion {
    pub fn mass(&self, a: u64) -> f64 {
        if a >= 1074 {
            0.0
        } else {
            0.5f64.powi(a as i32 + 1)
        }
    }

    pub fn draw(&self, rng: &mut TrialRng) -> Exclusion {
        // Number of failures before the first success of a fair coin.
        let mut a = 0u64;
        loop {
            let bits: u64 = rng.random();
            if bits != 0 {
                return Exclusion::new(a + u64::from(bits.trailing_zeros()));
            }
            a += 64;
        }
    }
}

/// Risk of decision `x` under exclusion constraints: the mass of `U(x)`,
/// the only constraint `x` violates.
pub fn analytic_risk_sum_min(x: u64, mass: impl Fn(u64) -> f64) -> f64 {
    mass(x)
}

impl ConstraintDistribution<SumSystem> for GeometricExclusion {
    fn sample(&self, rng: &mut TrialRng) -> Exclusion {
        self.draw(rng)
    }
    fn analytic_violation(&self, _: &SumSystem, x: &u64) -> Option<f64> {
        Some(analytic_risk_sum_min(*x, |a| self.mass(a)))
    }
}

impl ConstraintDistribution<MinSystem> for GeometricExclusion {
    fn sample(&self, rng: &mut TrialRng) -> Exclusion {
        self.draw(rng)
    }
    fn analytic_violation(&self, _: &MinSystem, x: &u64) -> Option<f64> {
        Some(analytic_risk_sum_min(*x, |a| self.mass(a)))
    }
}
