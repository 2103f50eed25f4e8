//! Stable, consistent, non-PAC system with finite dVC dimension.
//!
//! Decisions are subsets of `[0, 1]`; the constraint `U(a)` requires `a` to be
//! in the decision. The algorithm returns the sampled points when `0` was
//! sampled and the half-open interval `(0, 1]` otherwise.

use crate::error::{invalid, Error, Result};
use crate::framework::{ConstraintDistribution, ScenarioSystem};
use crate::rng::TrialRng;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::hash::{Hash, Hasher};

/// `U(a) = { x : a in x }`. Compared bitwise.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(try_from = "RawMember")]
pub struct Membership {
    pub member: f64,
}

#[derive(Deserialize)]
struct RawMember {
    member: f64,
}

impl TryFrom<RawMember> for Membership {
    type Error = Error;
    fn try_from(raw: RawMember) -> Result<Self> {
        Membership::new(raw.member)
    }
}

impl Membership {
    pub fn new(a: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a) {
            return Err(invalid(format!(
                "membership point must lie in [0,1], got {a}"
            )));
        }
        Ok(Self { member: a + 0.0 })
    }
}

pub fn member(a: f64) -> Membership {
    Membership::new(a).expect("point in [0,1]")
}

impl PartialEq for Membership {
    fn eq(&self, other: &Self) -> bool {
        self.member.to_bits() == other.member.to_bits()
    }
}

impl Eq for Membership {}

impl Hash for Membership {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.member.to_bits().hash(state);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntervalDecision {
    /// Sorted, distinct points of `[0, 1]`.
    FiniteSet(Vec<f64>),
    /// The set `(0, 1]`.
    OpenUnitInterval,
}

impl IntervalDecision {
    pub fn contains(&self, a: f64) -> bool {
        match self {
            Self::FiniteSet(v) => v.iter().any(|p| p.to_bits() == a.to_bits()),
            Self::OpenUnitInterval => a > 0.0 && a <= 1.0,
        }
    }
}

pub fn alg_interval(constraints: &[Membership]) -> IntervalDecision {
    if constraints.iter().any(|z| z.member == 0.0) {
        let mut pts: Vec<f64> = constraints.iter().map(|z| z.member).collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup_by(|a, b| a.to_bits() == b.to_bits());
        IntervalDecision::FiniteSet(pts)
    } else {
        IntervalDecision::OpenUnitInterval
    }
}

/// Risk under the atom-plus-uniform measure. Both reachable decision kinds
/// violate a set of mass exactly 1/2: a finite set containing 0 misses the
/// whole continuous part, and `(0, 1]` misses only the atom.
pub fn analytic_risk_interval(x: &IntervalDecision) -> Result<f64> {
    match x {
        IntervalDecision::OpenUnitInterval => Ok(0.5),
        IntervalDecision::FiniteSet(v) if v.contains(&0.0) => Ok(0.5),
        IntervalDecision::FiniteSet(_) => Err(Error::UnreachableDecision(
            "finite decision sets always contain 0".into(),
        )),
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct IntervalSystem;

impl ScenarioSystem for IntervalSystem {
    type Constraint = Membership;
    type Decision = IntervalDecision;

    fn name(&self) -> &str {
        "interval-not-pac"
    }
    fn decide(&self, constraints: &[Membership]) -> IntervalDecision {
        alg_interval(constraints)
    }
    fn satisfies(&self, x: &IntervalDecision, z: &Membership) -> bool {
        x.contains(z.member)
    }
    fn same_decision(&self, a: &IntervalDecision, b: &IntervalDecision) -> bool {
        a == b
    }
}

/// Mass 1/2 on the point 0 and mass `a/2` on every `(0, a]`.
#[derive(Debug, Clone, Copy, Default)]
pub struct AtomPlusUniform;

impl AtomPlusUniform {
    pub const ATOM_MASS: f64 = 0.5;

    pub fn draw(&self, rng: &mut TrialRng) -> Membership {
        if rng.random_bool(Self::ATOM_MASS) {
            Membership { member: 0.0 }
        } else {
            // 1 - U[0,1) lies in (0, 1].
            Membership {
                member: 1.0 - rng.random::<f64>(),
            }
        }
    }

    /// Distribution function of the point `a`.
    pub fn cdf(&self, a: f64) -> f64 {
        if a < 0.0 {
            0.0
        } else {
            Self::ATOM_MASS + a.min(1.0) / 2.0
        }
    }
}

impl ConstraintDistribution<IntervalSystem> for AtomPlusUniform {
    fn sample(&self, rng: &mut TrialRng) -> Membership {
        self.draw(rng)
    }
    fn analytic_violation(&self, _: &IntervalSystem, x: &IntervalDecision) -> Option<f64> {
        analytic_risk_interval(x).ok()
    }
}
