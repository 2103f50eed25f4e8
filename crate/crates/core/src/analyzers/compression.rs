//! Compression map search and counting certificates against compression
//! schemes.

use super::DEFAULT_BUDGET;
use crate::error::{invalid, Error, Result};
use crate::framework::ScenarioSystem;
use itertools::Itertools;
use serde::{Deserialize, Serialize};

/// `C(n, r)` exactly, or `None` on overflow.
pub fn binomial(n: u64, r: u64) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for j in 0..r {
        acc = acc.checked_mul(u128::from(n - j))? / u128::from(j + 1);
    }
    Some(acc)
}

/// Number of order-preserving subtuples of length at most `d` of an
/// `n`-tuple: `sum_{r=0}^{d} C(n, r)`.
pub fn subtuple_count(n: u64, d: u64) -> Option<u128> {
    (0..=d.min(n)).try_fold(0u128, |acc, r| acc.checked_add(binomial(n, r)?))
}

/// Searches the order-preserving subtuples of `tuple` with length at most
/// `capacity`, shortest first and then lexicographically on indices, for one
/// on which the algorithm returns the same decision as on the whole tuple.
/// Indices are 0-based. `Ok(None)` certifies that no such subtuple exists,
/// so no compression map of this capacity can handle `tuple`.
pub fn find_compression_subtuple<S: ScenarioSystem>(
    system: &S,
    tuple: &[S::Constraint],
    capacity: usize,
    budget: u64,
) -> Result<Option<Vec<usize>>> {
    let n = tuple.len();
    let required = subtuple_count(n as u64, capacity as u64).unwrap_or(u128::MAX);
    let target = system.decide(tuple);
    let mut checked: u64 = 0;
    for r in 0..=capacity.min(n) {
        for idx in (0..n).combinations(r) {
            if checked >= budget {
                return Err(Error::BudgetExceeded {
                    required,
                    budget,
                    checked,
                });
            }
            checked += 1;
            let sub: Vec<S::Constraint> = idx.iter().map(|&k| tuple[k].clone()).collect();
            if system.same_decision(&system.decide(&sub), &target) {
                return Ok(Some(idx));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapSearchEntry<C> {
    pub tuple: Vec<C>,
    /// 0-based indices of the first compressing subtuple; `None` is an
    /// impossibility certificate for this tuple.
    pub subtuple: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CompressionMode<C> {
    MapSearch {
        entries: Vec<MapSearchEntry<C>>,
    },
    SchemeCounting {
        base_set: Vec<C>,
        /// `|T|`, which is also the longest tuple formed.
        k: usize,
        permutations: bool,
        /// Distinct decisions over tuples built from subsets of `T`.
        achieved_decisions: u128,
        /// Distinct compressed inputs available to a reconstruction map.
        compressed_bound: u128,
        impossible: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompressionReport<C> {
    pub system: String,
    pub capacity: usize,
    #[serde(flatten)]
    pub mode: CompressionMode<C>,
}

impl<C> CompressionReport<C> {
    /// True when every searched tuple was compressed (map search) or when
    /// counting did not rule out a scheme.
    pub fn compressible(&self) -> bool {
        match &self.mode {
            CompressionMode::MapSearch { entries } => entries.iter().all(|e| e.subtuple.is_some()),
            CompressionMode::SchemeCounting { impossible, .. } => !impossible,
        }
    }
}

pub fn compression_map_search<S: ScenarioSystem>(
    system: &S,
    tuples: &[Vec<S::Constraint>],
    capacity: usize,
    budget: u64,
) -> Result<CompressionReport<S::Constraint>> {
    let entries = tuples
        .iter()
        .map(|t| {
            Ok(MapSearchEntry {
                subtuple: find_compression_subtuple(system, t, capacity, budget)?,
                tuple: t.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CompressionReport {
        system: system.name().to_string(),
        capacity,
        mode: CompressionMode::MapSearch { entries },
    })
}

/// Counting certificate that no compression scheme of the given capacity
/// exists.
///
/// For every subset of `T` the algorithm is run on the subset's elements in
/// the order of `T` (or in every order with `permutations`). Those tuples
/// have distinct entries, so a compression map can only output one of the
/// `sum_{r<=d} C(k, r)` subsets of `T` of size at most `d`, and the
/// reconstruction map then has at most that many outputs. More distinct
/// decisions than that rules out every scheme.
pub fn certify_no_compression_scheme<S: ScenarioSystem>(
    system: &S,
    base_set: &[S::Constraint],
    capacity: usize,
    permutations: bool,
) -> Result<CompressionReport<S::Constraint>> {
    let k = base_set.len();
    if k > 20 {
        return Err(invalid(format!(
            "base set of size {k} exceeds the enumeration limit 20"
        )));
    }
    for (j, z) in base_set.iter().enumerate() {
        if base_set[..j].contains(z) {
            return Err(Error::DuplicateCandidate { index: j });
        }
    }
    if permutations {
        let total: u128 = (0..=k as u64)
            .map(|r| binomial(k as u64, r).unwrap() * (1..=u128::from(r)).product::<u128>())
            .sum();
        if total > u128::from(DEFAULT_BUDGET) {
            return Err(Error::BudgetExceeded {
                required: total,
                budget: DEFAULT_BUDGET,
                checked: 0,
            });
        }
    }

    let mut distinct: Vec<S::Decision> = Vec::new();
    let mut record = |x: S::Decision| {
        if !distinct.iter().any(|d| system.same_decision(d, &x)) {
            distinct.push(x);
        }
    };
    for mask in 0u64..(1u64 << k) {
        let subset: Vec<S::Constraint> = (0..k)
            .filter(|&j| mask >> j & 1 == 1)
            .map(|j| base_set[j].clone())
            .collect();
        if permutations {
            let r = subset.len();
            for perm in subset.iter().cloned().permutations(r) {
                record(system.decide(&perm));
            }
        } else {
            record(system.decide(&subset));
        }
    }
    let achieved = distinct.len() as u128;
    let bound = subtuple_count(k as u64, capacity as u64).expect("k <= 20");
    Ok(CompressionReport {
        system: system.name().to_string(),
        capacity,
        mode: CompressionMode::SchemeCounting {
            base_set: base_set.to_vec(),
            k,
            permutations,
            achieved_decisions: achieved,
            compressed_bound: bound,
            impossible: achieved > bound,
        },
    })
}
