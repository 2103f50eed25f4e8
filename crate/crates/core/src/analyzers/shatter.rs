//! Exhaustive dVC shattering search.
//!
//! `Z'` is shattered by an algorithm when, for every tuple `vz` over `Z'`, the
//! constraints of `Z'` satisfied by the decision are exactly the elements of
//! `vz`. Tuples are enumerated up to a length bound, so a positive verdict is
//! evidence only; a counterexample is a sound refutation.

use super::DEFAULT_BUDGET;
use crate::error::{invalid, Error, Result};
use crate::framework::ScenarioSystem;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShatterVerdict {
    ShatteredUpToL,
    NotShattered,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShatterCounterexample<C> {
    pub tuple: Vec<C>,
    /// Elements of `Z'` the decision satisfies, in candidate order.
    pub satisfied: Vec<C>,
    /// Distinct elements of the tuple, in candidate order.
    pub sampled: Vec<C>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShatterCheckReport<C> {
    pub system: String,
    pub candidates: Vec<C>,
    pub max_len: usize,
    pub include_empty: bool,
    pub verdict: ShatterVerdict,
    pub counterexample: Option<ShatterCounterexample<C>>,
    pub tuples_checked: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShatterOptions {
    /// Longest tuple enumerated; `None` means `|Z'|`.
    pub max_len: Option<usize>,
    pub include_empty: bool,
    pub budget: u64,
}

impl Default for ShatterOptions {
    fn default() -> Self {
        Self {
            max_len: None,
            include_empty: true,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Satisfaction pattern of the decision on `tuple` against `candidates`, and
/// the membership pattern of the tuple itself.
fn patterns<S: ScenarioSystem>(
    system: &S,
    candidates: &[S::Constraint],
    tuple: &[S::Constraint],
) -> (Vec<bool>, Vec<bool>) {
    let x = system.decide(tuple);
    let satisfied = candidates.iter().map(|z| system.satisfies(&x, z)).collect();
    let sampled = candidates.iter().map(|z| tuple.contains(z)).collect();
    (satisfied, sampled)
}

fn pick<C: Clone>(candidates: &[C], mask: &[bool]) -> Vec<C> {
    candidates
        .iter()
        .zip(mask)
        .filter(|(_, &m)| m)
        .map(|(z, _)| z.clone())
        .collect()
}

impl<C: Clone + PartialEq> ShatterCheckReport<C> {
    /// Re-evaluates the stored counterexample against `system`; true when the
    /// recorded discrepancy is reproduced exactly.
    pub fn recheck<S>(&self, system: &S) -> bool
    where
        S: ScenarioSystem<Constraint = C>,
    {
        match (&self.verdict, &self.counterexample) {
            (ShatterVerdict::NotShattered, Some(cx)) => {
                let (sat, samp) = patterns(system, &self.candidates, &cx.tuple);
                sat != samp
                    && pick(&self.candidates, &sat) == cx.satisfied
                    && pick(&self.candidates, &samp) == cx.sampled
            }
            (ShatterVerdict::ShatteredUpToL, None) => true,
            _ => false,
        }
    }
}

fn ensure_distinct<C: PartialEq>(candidates: &[C]) -> Result<()> {
    for (k, z) in candidates.iter().enumerate() {
        if candidates[..k].contains(z) {
            return Err(Error::DuplicateCandidate { index: k });
        }
    }
    Ok(())
}

/// Number of tuples of each length in `[min_len, max_len]` over `base`
/// symbols, or `None` on overflow.
fn tuple_counts(base: usize, min_len: usize, max_len: usize) -> Vec<Option<u128>> {
    (min_len..=max_len)
        .map(|l| (base as u128).checked_pow(l as u32))
        .collect()
}

/// Decodes the `index`-th tuple of length `len` (lexicographic on candidate
/// positions).
fn decode(index: u128, len: usize, base: usize) -> Vec<usize> {
    let mut digits = vec![0usize; len];
    let mut rest = index;
    for d in digits.iter_mut().rev() {
        *d = (rest % base as u128) as usize;
        rest /= base as u128;
    }
    digits
}

pub fn check_shattered<S: ScenarioSystem>(
    system: &S,
    candidates: &[S::Constraint],
    opts: &ShatterOptions,
) -> Result<ShatterCheckReport<S::Constraint>> {
    ensure_distinct(candidates)?;
    let max_len = opts.max_len.unwrap_or(candidates.len());
    if max_len == 0 {
        return Err(invalid("maximum tuple length must be at least 1"));
    }
    if candidates.is_empty() {
        return Err(invalid("candidate set must be non-empty"));
    }
    let min_len = if opts.include_empty { 0 } else { 1 };
    let counts = tuple_counts(candidates.len(), min_len, max_len);
    let required = counts
        .iter()
        .try_fold(0u128, |acc, c| c.and_then(|c| acc.checked_add(c)))
        .unwrap_or(u128::MAX);
    let budget = u128::from(opts.budget);

    let mut checked: u128 = 0;
    for (offset, count) in counts.iter().enumerate() {
        let len = min_len + offset;
        let count = count.unwrap_or(u128::MAX);
        let remaining = budget - checked;
        let take = count.min(remaining);
        let found = (0..take as u64).into_par_iter().find_map_first(|idx| {
            let tuple: Vec<S::Constraint> = decode(idx as u128, len, candidates.len())
                .into_iter()
                .map(|p| candidates[p].clone())
                .collect();
            let (sat, samp) = patterns(system, candidates, &tuple);
            (sat != samp).then_some((idx, tuple, sat, samp))
        });
        if let Some((idx, tuple, sat, samp)) = found {
            return Ok(ShatterCheckReport {
                system: system.name().to_string(),
                candidates: candidates.to_vec(),
                max_len,
                include_empty: opts.include_empty,
                verdict: ShatterVerdict::NotShattered,
                counterexample: Some(ShatterCounterexample {
                    satisfied: pick(candidates, &sat),
                    sampled: pick(candidates, &samp),
                    tuple,
                }),
                tuples_checked: (checked + u128::from(idx) + 1) as u64,
            });
        }
        checked += take;
        if take < count {
            return Err(Error::BudgetExceeded {
                required,
                budget: opts.budget,
                checked: checked as u64,
            });
        }
    }
    Ok(ShatterCheckReport {
        system: system.name().to_string(),
        candidates: candidates.to_vec(),
        max_len,
        include_empty: opts.include_empty,
        verdict: ShatterVerdict::ShatteredUpToL,
        counterexample: None,
        tuples_checked: checked as u64,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DvcReport<C> {
    pub lower_bound: usize,
    pub witness: Option<Vec<C>>,
    pub reports: Vec<ShatterCheckReport<C>>,
}

/// Largest candidate set found shattered (up to the length bound).
pub fn dvc_lower_bound<S: ScenarioSystem>(
    system: &S,
    candidate_sets: &[Vec<S::Constraint>],
    opts: &ShatterOptions,
) -> Result<DvcReport<S::Constraint>> {
    let mut reports = Vec::with_capacity(candidate_sets.len());
    let mut best: Option<usize> = None;
    for (k, set) in candidate_sets.iter().enumerate() {
        let rep = check_shattered(system, set, opts)?;
        if rep.verdict == ShatterVerdict::ShatteredUpToL
            && best.is_none_or(|b| set.len() > candidate_sets[b].len())
        {
            best = Some(k);
        }
        reports.push(rep);
    }
    Ok(DvcReport {
        lower_bound: best.map_or(0, |b| candidate_sets[b].len()),
        witness: best.map(|b| candidate_sets[b].clone()),
        reports,
    })
}
