//! Range shattering witnesses.
//!
//! The range of an algorithm is the family of satisfied-constraint sets of
//! its decisions. A finite set `Z'` is shattered by the range when every
//! subset of `Z'` is cut out by some decision.

use crate::counterexamples::arcs::{self, MAX_POLYGON_M};
use crate::counterexamples::{ConvexConstraint, ConvexVcSystem};
use crate::error::{invalid, Error, Result};
use crate::framework::ScenarioSystem;
use crate::geometry::{self, Point};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Largest `k` accepted by [`verify_range_shattering_witness`].
pub const MAX_WITNESS_K: u32 = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipMismatch {
    /// Subset of `[k]` as sorted members.
    pub subset: Vec<u32>,
    pub polygon_index: u32,
    pub geometric: bool,
    pub combinatorial: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RangeWitnessReport {
    pub k: u32,
    pub subsets_checked: u64,
    pub subsets_realized: u64,
    pub membership_tests: u64,
    /// Largest distance between the decision on the band witness and `tau(u)`.
    pub max_decision_error: f64,
    pub mismatches: Vec<MembershipMismatch>,
    /// `k` when every subset is realized, 0 otherwise.
    pub vc_lower_bound: u32,
}

impl RangeWitnessReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.subsets_realized == self.subsets_checked
    }
}

/// Shatters `{sigma(k, i) : i in [k]}` with the convex system's range.
///
/// For each `u` subset of `[k]` the algorithm runs on the single band
/// `R x [tau_2(u), 1]`; its decision must be `tau(u)` and must lie in exactly
/// the polygons `sigma(k, i)` with `i in u`. Membership is tested both on the
/// polygon geometry and on the combinatorial predicate `i in u`.
pub fn verify_range_shattering_witness(k: u32) -> Result<RangeWitnessReport> {
    if k == 0 || k > MAX_WITNESS_K {
        return Err(invalid(format!(
            "witness size must lie in 1..={MAX_WITNESS_K}, got {k}"
        )));
    }
    debug_assert!(k <= MAX_POLYGON_M);
    let system = ConvexVcSystem::with_cache(k);
    let polygons: Vec<Vec<Point>> = (1..=k).map(|i| system.polygon(k, i).into_owned()).collect();

    let mut report = RangeWitnessReport {
        k,
        subsets_checked: 0,
        subsets_realized: 0,
        membership_tests: 0,
        max_decision_error: 0.0,
        mismatches: Vec::new(),
        vc_lower_bound: 0,
    };
    for mask in 0u64..(1u64 << k) {
        let target = arcs::tau_of_n(mask);
        let band = ConvexConstraint::band(target.y)?;
        let x = system.decide(&[band]);
        let err = x.dist(target);
        report.max_decision_error = report.max_decision_error.max(err);
        report.subsets_checked += 1;

        let mut realized = geometry::points_equal(x, target);
        for i in 1..=k {
            let geometric = system.satisfies(&x, &ConvexConstraint::Polygon(k, i));
            let exact = geometry::point_in_convex_polygon(target, &polygons[(i - 1) as usize]);
            let combinatorial = mask >> (i - 1) & 1 == 1;
            report.membership_tests += 1;
            if geometric != combinatorial || exact != combinatorial {
                realized = false;
                report.mismatches.push(MembershipMismatch {
                    subset: arcs::members(mask),
                    polygon_index: i,
                    geometric,
                    combinatorial,
                });
            }
        }
        if realized {
            report.subsets_realized += 1;
        }
    }
    if report.passed() {
        report.vc_lower_bound = k;
    }
    Ok(report)
}

/// Distinct satisfaction patterns over `candidates` produced by `decisions`,
/// each as a bitmask over candidate positions.
pub fn realized_patterns<S: ScenarioSystem>(
    system: &S,
    decisions: &[S::Decision],
    candidates: &[S::Constraint],
) -> Result<BTreeSet<u64>> {
    if candidates.len() > 63 {
        return Err(invalid("at most 63 candidates supported"));
    }
    for (j, z) in candidates.iter().enumerate() {
        if candidates[..j].contains(z) {
            return Err(Error::DuplicateCandidate { index: j });
        }
    }
    Ok(decisions
        .iter()
        .map(|x| {
            candidates
                .iter()
                .enumerate()
                .filter(|(_, z)| system.satisfies(x, z))
                .fold(0u64, |acc, (j, _)| acc | 1 << j)
        })
        .collect())
}

/// Whether the given decisions realize all `2^|Z'|` subsets of `candidates`.
pub fn range_shattered_by<S: ScenarioSystem>(
    system: &S,
    decisions: &[S::Decision],
    candidates: &[S::Constraint],
) -> Result<bool> {
    let patterns = realized_patterns(system, decisions, candidates)?;
    Ok(patterns.len() as u64 == 1u64 << candidates.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_witnesses() {
        for k in 1..=4 {
            let r = verify_range_shattering_witness(k).unwrap();
            assert!(r.passed(), "k = {k}: {:?}", r.mismatches);
            assert_eq!(r.subsets_realized, 1 << k);
            assert_eq!(r.vc_lower_bound, k);
        }
    }

    #[test]
    fn empty_subset_gives_east_point() {
        let system = ConvexVcSystem::with_cache(1);
        let x = system.decide(&[ConvexConstraint::band(0.0).unwrap()]);
        assert_eq!(x, Point::new(1.0, 0.0));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(verify_range_shattering_witness(0).is_err());
        assert!(verify_range_shattering_witness(13).is_err());
    }
}
