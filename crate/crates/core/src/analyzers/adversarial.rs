//! The uniform measure on a shattered set as an adversarial distribution.

use crate::error::{invalid, Result};
use crate::framework::{hoeffding_radius, PacCurve, PacRow, ScenarioSystem, DEFAULT_DELTA};
use crate::rng::stream;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdversarialReport {
    pub system: String,
    pub candidate_count: usize,
    pub n: usize,
    pub epsilon: f64,
    pub trials: usize,
    pub seed: u64,
    pub q_hat: f64,
    pub ci_radius: f64,
    pub mean_risk: f64,
    pub min_risk: f64,
    pub all_at_least_half: bool,
    pub risks: Vec<f64>,
}

impl AdversarialReport {
    pub fn pac_row(&self) -> PacRow {
        PacRow {
            n: self.n,
            q_hat: self.q_hat,
            ci_radius: self.ci_radius,
            mean_risk: self.mean_risk,
        }
    }

    pub fn pac_curve(&self) -> PacCurve {
        PacCurve {
            system: self.system.clone(),
            epsilon: self.epsilon,
            trials: self.trials,
            seed: self.seed,
            delta: DEFAULT_DELTA,
            nested_mc: false,
            inner_samples: None,
            rows: vec![self.pac_row()],
        }
    }
}

/// Draws `n` constraints uniformly from `candidates`, `trials` times, and
/// evaluates the exact risk `(|Z'| - |S(x) ∩ Z'|) / |Z'|` of each decision
/// under the uniform measure on `Z'`.
pub fn adversarial_pac_experiment<S: ScenarioSystem>(
    system: &S,
    candidates: &[S::Constraint],
    n: usize,
    epsilon: f64,
    trials: usize,
    seed: u64,
) -> Result<AdversarialReport> {
    if candidates.len() < 2 * n {
        return Err(invalid(format!(
            "need at least 2N = {} candidates, got {}",
            2 * n,
            candidates.len()
        )));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(invalid(format!("epsilon must lie in (0,1), got {epsilon}")));
    }
    if trials == 0 {
        return Err(invalid("trial count must be at least 1"));
    }
    let size = candidates.len();
    let risks: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(seed, &[n as u64, t as u64]);
            let vz: Vec<S::Constraint> = (0..n)
                .map(|_| candidates[rng.random_range(0..size)].clone())
                .collect();
            let x = system.decide(&vz);
            let violated = candidates
                .iter()
                .filter(|z| !system.satisfies(&x, z))
                .count();
            violated as f64 / size as f64
        })
        .collect();
    let exceed = risks.iter().filter(|&&r| r > epsilon).count();
    let min_risk = risks.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(AdversarialReport {
        system: system.name().to_string(),
        candidate_count: size,
        n,
        epsilon,
        trials,
        seed,
        q_hat: exceed as f64 / trials as f64,
        ci_radius: hoeffding_radius(trials, DEFAULT_DELTA),
        mean_risk: risks.iter().sum::<f64>() / trials as f64,
        min_risk,
        all_at_least_half: min_risk >= 0.5,
        risks,
    })
}
