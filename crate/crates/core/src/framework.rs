//! Scenario decision framework: systems, distributions, risk and PAC curves,
//! and falsification testers for consistency and stability.
//!
//! Monte Carlo work is split into independently seeded pure tasks (see
//! [`crate::rng`]) and combined in index order, so every report is a function
//! of its inputs and seed only.

use crate::error::{invalid, Result};
use crate::rng::{stream, TrialRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Debug;
use std::hash::Hash;

/// Default failure probability of the two-sided Hoeffding interval.
pub const DEFAULT_DELTA: f64 = 0.05;

/// Inner sample size for nested Monte Carlo risk evaluation.
pub const DEFAULT_INNER_SAMPLES: usize = 2000;

/// A scenario decision algorithm together with its satisfaction relation.
///
/// `decide` must be deterministic. Decisions reported equal by
/// `same_decision` must satisfy exactly the same constraints.
pub trait ScenarioSystem: Sync {
    type Constraint: Clone + Eq + Hash + Debug + Send + Sync;
    type Decision: Clone + Debug + Send + Sync;

    fn name(&self) -> &str;

    fn decide(&self, constraints: &[Self::Constraint]) -> Self::Decision;

    fn satisfies(&self, decision: &Self::Decision, constraint: &Self::Constraint) -> bool;

    fn same_decision(&self, a: &Self::Decision, b: &Self::Decision) -> bool;

    /// Absolute tolerance behind `same_decision` (0 for exact equality).
    fn decision_tolerance(&self) -> f64 {
        0.0
    }
}

/// A samplable probability measure on the constraints of a system.
pub trait ConstraintDistribution<S: ScenarioSystem + ?Sized>: Sync {
    fn sample(&self, rng: &mut TrialRng) -> S::Constraint;

    /// Exact violation probability of `decision`, when known in closed form.
    fn analytic_violation(&self, _system: &S, _decision: &S::Decision) -> Option<f64> {
        None
    }
}

pub fn satisfies_all<S: ScenarioSystem + ?Sized>(
    system: &S,
    decision: &S::Decision,
    constraints: &[S::Constraint],
) -> bool {
    constraints.iter().all(|z| system.satisfies(decision, z))
}

/// Two-sided Hoeffding radius `sqrt(ln(2/delta) / (2k))`.
pub fn hoeffding_radius(samples: usize, delta: f64) -> f64 {
    ((2.0 / delta).ln() / (2.0 * samples as f64)).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RiskMethod {
    Analytic,
    MonteCarlo,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RiskEstimate {
    pub estimate: f64,
    pub confidence_radius: f64,
    pub lower: f64,
    pub upper: f64,
    pub samples: usize,
    pub seed: u64,
    pub delta: f64,
    pub method: RiskMethod,
}

impl RiskEstimate {
    fn monte_carlo(violations: usize, samples: usize, seed: u64, delta: f64) -> Self {
        let estimate = violations as f64 / samples as f64;
        let radius = hoeffding_radius(samples, delta);
        Self {
            estimate,
            confidence_radius: radius,
            lower: (estimate - radius).max(0.0),
            upper: (estimate + radius).min(1.0),
            samples,
            seed,
            delta,
            method: RiskMethod::MonteCarlo,
        }
    }

    fn analytic(value: f64, seed: u64) -> Self {
        Self {
            estimate: value,
            confidence_radius: 0.0,
            lower: value,
            upper: value,
            samples: 0,
            seed,
            delta: 0.0,
            method: RiskMethod::Analytic,
        }
    }
}

const MC_CHUNK: usize = 1 << 14;

fn count_violations<S, D>(
    system: &S,
    decision: &S::Decision,
    dist: &D,
    samples: usize,
    seed: u64,
) -> usize
where
    S: ScenarioSystem,
    D: ConstraintDistribution<S>,
{
    let chunks = samples.div_ceil(MC_CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream(seed, &[0x7269_736b, c as u64]);
            let len = MC_CHUNK.min(samples - c * MC_CHUNK);
            (0..len)
                .filter(|_| !system.satisfies(decision, &dist.sample(&mut rng)))
                .count()
        })
        .sum()
}

/// Monte Carlo estimate of the violation probability of `decision`.
pub fn violation_probability_mc<S, D>(
    system: &S,
    decision: &S::Decision,
    dist: &D,
    samples: usize,
    seed: u64,
) -> Result<RiskEstimate>
where
    S: ScenarioSystem,
    D: ConstraintDistribution<S>,
{
    if samples == 0 {
        return Err(invalid("sample count must be at least 1"));
    }
    let v = count_violations(system, decision, dist, samples, seed);
    Ok(RiskEstimate::monte_carlo(v, samples, seed, DEFAULT_DELTA))
}

/// Violation probability, exact when the distribution has a closed form and
/// Monte Carlo otherwise.
pub fn violation_probability<S, D>(
    system: &S,
    decision: &S::Decision,
    dist: &D,
    samples: usize,
    seed: u64,
) -> Result<RiskEstimate>
where
    S: ScenarioSystem,
    D: ConstraintDistribution<S>,
{
    match dist.analytic_violation(system, decision) {
        Some(v) => Ok(RiskEstimate::analytic(v, seed)),
        None => violation_probability_mc(system, decision, dist, samples, seed),
    }
}

pub fn sample_tuple<S, D>(dist: &D, n: usize, rng: &mut TrialRng) -> Vec<S::Constraint>
where
    S: ScenarioSystem + ?Sized,
    D: ConstraintDistribution<S> + ?Sized,
{
    (0..n).map(|_| dist.sample(rng)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PacOptions {
    pub delta: f64,
    pub inner_samples: usize,
    /// Ignore any analytic evaluator and use nested Monte Carlo.
    pub force_monte_carlo: bool,
}

impl Default for PacOptions {
    fn default() -> Self {
        Self {
            delta: DEFAULT_DELTA,
            inner_samples: DEFAULT_INNER_SAMPLES,
            force_monte_carlo: false,
        }
    }
}

/// Risks of `trials` independent scenario decisions at sample size `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRisks {
    pub n: usize,
    pub seed: u64,
    pub risks: Vec<f64>,
    /// At least one risk came from nested Monte Carlo.
    pub nested_mc: bool,
}

impl TrialRisks {
    pub fn exceed_fraction(&self, epsilon: f64) -> f64 {
        let hits = self.risks.iter().filter(|&&r| r > epsilon).count();
        hits as f64 / self.risks.len() as f64
    }

    pub fn mean(&self) -> f64 {
        self.risks.iter().sum::<f64>() / self.risks.len() as f64
    }
}

pub fn pac_trial_risks<S, D>(
    system: &S,
    dist: &D,
    n: usize,
    trials: usize,
    seed: u64,
    opts: &PacOptions,
) -> Result<TrialRisks>
where
    S: ScenarioSystem,
    D: ConstraintDistribution<S>,
{
    if trials == 0 {
        return Err(invalid("trial count must be at least 1"));
    }
    if opts.inner_samples == 0 {
        return Err(invalid("inner sample count must be at least 1"));
    }
    let results: Vec<(f64, bool)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(seed, &[n as u64, t as u64]);
            let vz = sample_tuple(dist, n, &mut rng);
            let x = system.decide(&vz);
            let analytic = if opts.force_monte_carlo {
                None
            } else {
                dist.analytic_violation(system, &x)
            };
            match analytic {
                Some(v) => (v, false),
                None => {
                    let mut inner = stream(seed, &[n as u64, t as u64, 1]);
                    let v = (0..opts.inner_samples)
                        .filter(|_| !system.satisfies(&x, &dist.sample(&mut inner)))
                        .count();
                    (v as f64 / opts.inner_samples as f64, true)
                }
            }
        })
        .collect();
    Ok(TrialRisks {
        n,
        seed,
        nested_mc: results.iter().any(|r| r.1),
        risks: results.into_iter().map(|r| r.0).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PacRow {
    pub n: usize,
    pub q_hat: f64,
    pub ci_radius: f64,
    pub mean_risk: f64,
}

/// Empirical exceedance probabilities `q(N) = P^N[V(Alg(vz)) > epsilon]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PacCurve {
    pub system: String,
    pub epsilon: f64,
    pub trials: usize,
    pub seed: u64,
    pub delta: f64,
    /// Risks were estimated by nested Monte Carlo for some rows, adding
    /// inner-sampling error on top of `ci_radius`.
    pub nested_mc: bool,
    pub inner_samples: Option<usize>,
    pub rows: Vec<PacRow>,
}

pub const CSV_HEADER: &str = "N,q_hat,ci_radius,epsilon,trials,seed";

impl PacCurve {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.n, r.q_hat, r.ci_radius, self.epsilon, self.trials, self.seed
            ));
        }
        out
    }

    pub fn row(&self, n: usize) -> Option<&PacRow> {
        self.rows.iter().find(|r| r.n == n)
    }
}

pub fn pac_curve<S, D>(
    system: &S,
    dist: &D,
    epsilon: f64,
    n_list: &[usize],
    trials: usize,
    seed: u64,
    opts: &PacOptions,
) -> Result<PacCurve>
where
    S: ScenarioSystem,
    D: ConstraintDistribution<S>,
{
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(invalid(format!("epsilon must lie in (0,1), got {epsilon}")));
    }
    if n_list.is_empty() {
        return Err(invalid("sample-size list must be non-empty"));
    }
    let mut ns = n_list.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let mut rows = Vec::with_capacity(ns.len());
    let mut nested = false;
    for n in ns {
        let tr = pac_trial_risks(system, dist, n, trials, seed, opts)?;
        nested |= tr.nested_mc;
        rows.push(PacRow {
            n,
            q_hat: tr.exceed_fraction(epsilon),
            ci_radius: hoeffding_radius(trials, opts.delta),
            mean_risk: tr.mean(),
        });
    }
    Ok(PacCurve {
        system: system.name().to_string(),
        epsilon,
        trials,
        seed,
        delta: opts.delta,
        nested_mc: nested,
        inner_samples: nested.then_some(opts.inner_samples),
        rows,
    })
}

// ---------------------------------------------------------------------------
// Property testers
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ConsistencyOutcome<C> {
    Pass,
    Counterexample { trial: usize, tuple: Vec<C> },
    GeneratorExhausted { trial: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport<C> {
    pub system: String,
    pub trials: usize,
    pub seed: u64,
    pub result: ConsistencyOutcome<C>,
}

impl<C> ConsistencyReport<C> {
    pub fn passed(&self) -> bool {
        matches!(self.result, ConsistencyOutcome::Pass)
    }
}

/// Checks `decide(vz)` satisfies every constraint of `vz` on generated tuples.
///
/// The generator returns `None` when it cannot produce more tuples; that is
/// reported separately from a property failure. The earliest failing trial
/// is reported regardless of evaluation order.
pub fn check_consistency<S, G>(
    system: &S,
    generator: G,
    trials: usize,
    seed: u64,
) -> Result<ConsistencyReport<S::Constraint>>
where
    S: ScenarioSystem,
    G: Fn(&mut TrialRng) -> Option<Vec<S::Constraint>> + Sync,
{
    if trials == 0 {
        return Err(invalid("trial count must be at least 1"));
    }
    let first = (0..trials).into_par_iter().find_map_first(|t| {
        let mut rng = stream(seed, &[0x636f_6e73, t as u64]);
        match generator(&mut rng) {
            None => Some(ConsistencyOutcome::GeneratorExhausted { trial: t }),
            Some(vz) => {
                let x = system.decide(&vz);
                (!satisfies_all(system, &x, &vz)).then_some(ConsistencyOutcome::Counterexample {
                    trial: t,
                    tuple: vz,
                })
            }
        }
    });
    Ok(ConsistencyReport {
        system: system.name().to_string(),
        trials,
        seed,
        result: first.unwrap_or(ConsistencyOutcome::Pass),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum StabilityOutcome<C, X> {
    Pass,
    /// The decision on the prefix already violates one of its constraints.
    Inconsistent {
        trial: usize,
        tuple: Vec<C>,
    },
    Unstable {
        trial: usize,
        tuple: Vec<C>,
        extra: C,
        before: X,
        after: X,
    },
    GeneratorExhausted {
        trial: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport<C, X> {
    pub system: String,
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// Trials whose extra constraint was satisfied by the prefix decision.
    pub applicable: usize,
    /// Applicable trials with an empty prefix.
    pub empty_prefix_probes: usize,
    pub result: StabilityOutcome<C, X>,
}

impl<C, X> StabilityReport<C, X> {
    pub fn passed(&self) -> bool {
        matches!(self.result, StabilityOutcome::Pass)
    }
}

enum Probe<C, X> {
    Skipped,
    Applicable { empty: bool },
    Failed(StabilityOutcome<C, X>),
}

/// Checks that appending a constraint already satisfied by the current
/// decision leaves the decision unchanged (under `same_decision`).
pub fn check_stability<S, G, E>(
    system: &S,
    generator: G,
    extra_generator: E,
    trials: usize,
    seed: u64,
) -> Result<StabilityReport<S::Constraint, S::Decision>>
where
    S: ScenarioSystem,
    G: Fn(&mut TrialRng) -> Option<Vec<S::Constraint>> + Sync,
    E: Fn(&mut TrialRng) -> Option<S::Constraint> + Sync,
{
    if trials == 0 {
        return Err(invalid("trial count must be at least 1"));
    }
    let probes: Vec<Probe<S::Constraint, S::Decision>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(seed, &[0x7374_6162, t as u64]);
            let (Some(vz), Some(extra)) = (generator(&mut rng), extra_generator(&mut rng)) else {
                return Probe::Failed(StabilityOutcome::GeneratorExhausted { trial: t });
            };
            let before = system.decide(&vz);
            if !satisfies_all(system, &before, &vz) {
                return Probe::Failed(StabilityOutcome::Inconsistent {
                    trial: t,
                    tuple: vz,
                });
            }
            if !system.satisfies(&before, &extra) {
                return Probe::Skipped;
            }
            let mut longer = vz.clone();
            longer.push(extra.clone());
            let after = system.decide(&longer);
            if system.same_decision(&before, &after) {
                Probe::Applicable {
                    empty: vz.is_empty(),
                }
            } else {
                Probe::Failed(StabilityOutcome::Unstable {
                    trial: t,
                    tuple: vz,
                    extra,
                    before,
                    after,
                })
            }
        })
        .collect();

    let mut applicable = 0;
    let mut empty_prefix_probes = 0;
    let mut result = StabilityOutcome::Pass;
    for p in probes {
        match p {
            Probe::Skipped => {}
            Probe::Applicable { empty } => {
                applicable += 1;
                empty_prefix_probes += usize::from(empty);
            }
            Probe::Failed(outcome) => {
                result = outcome;
                break;
            }
        }
    }
    Ok(StabilityReport {
        system: system.name().to_string(),
        trials,
        seed,
        tolerance: system.decision_tolerance(),
        applicable,
        empty_prefix_probes,
        result,
    })
}
