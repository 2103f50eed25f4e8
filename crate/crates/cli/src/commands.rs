use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use rand::Rng;
use scenario_core::analyzers::{self, *};
use scenario_core::counterexamples::*;
use scenario_core::framework::{self, *};
use scenario_core::pathplan::*;
use scenario_core::rng::{stream, TrialRng};
use scenario_core::{ConstraintDistribution, ScenarioSystem};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemId {
    ConvexVc,
    SumNoScheme,
    MinNoMap,
    IntervalNotPac,
    PathAlg1,
    PathAlg2,
}

impl SystemId {
    fn is_path(self) -> bool {
        matches!(self, Self::PathAlg1 | Self::PathAlg2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShatterExpect {
    Shattered,
    NotShattered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompressionExpect {
    Compressible,
    Impossible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Planner {
    Alg1,
    Alg2,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.to_string(),
        passed,
        detail: detail.into(),
    }
}

pub struct Outcome {
    pub checks: Vec<Check>,
    pub result: Value,
    pub csv: Option<String>,
}

#[derive(Args, Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemoArgs {
    /// System to demonstrate.
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub example: Option<SystemId>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    /// Sample sizes (comma separated).
    #[arg(long = "N", value_delimiter = ',')]
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<Vec<usize>>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    /// Compression capacity d.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub capacity: Option<usize>,
    /// Witness or base-set size.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    /// Barrier length of the path scene.
    #[arg(long = "L")]
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub l: Option<f64>,
    /// Half-width of the band of shattering candidates.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
}

#[derive(Args, Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RiskCurveArgs {
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemId>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[arg(long = "N", value_delimiter = ',')]
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<Vec<usize>>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    /// Failure probability of the Hoeffding interval.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub confidence_delta: Option<f64>,
    /// Ignore closed-form risks and use nested Monte Carlo.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub force_mc: Option<bool>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inner_samples: Option<usize>,
    #[arg(long = "L")]
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub l: Option<f64>,
    /// Largest polygon index m drawn by the convex mixture.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_m: Option<u32>,
}

#[derive(Args, Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShatterArgs {
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemId>,
    /// JSON array of constraints, or `@file`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidates: Option<String>,
    /// Use `k` band barriers as candidates (path systems).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub band: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    /// Longest tuple enumerated (default: number of candidates).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_len: Option<usize>,
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub include_empty: Option<bool>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[arg(long = "L")]
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub l: Option<f64>,
    /// Fail (exit 1) unless the verdict matches.
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expect: Option<ShatterExpect>,
}

#[derive(Args, Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompressionArgs {
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemId>,
    /// Tuple to compress (JSON array or `@file`): compression map search.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tuple: Option<String>,
    /// Distinct base set T (JSON array or `@file`): scheme counting.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_set: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub capacity: Option<usize>,
    /// Count decisions over every ordering of each subset.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub permutations: Option<bool>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[arg(long = "L")]
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub l: Option<f64>,
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expect: Option<CompressionExpect>,
}

#[derive(Args, Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsArgs {
    /// VC dimension d: sample size from the VC bound.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vc: Option<u64>,
    /// Compression capacity d: bound value at N, or minimal N for beta.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compression: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[arg(long = "N")]
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
}

#[derive(Args, Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathplanArgs {
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algorithm: Option<Planner>,
    /// Barrier angles in radians (comma separated).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thetas: Option<Vec<f64>>,
    /// Draw this many uniform barrier angles from the seed instead.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub random: Option<usize>,
    #[arg(long = "L")]
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub l: Option<f64>,
    /// Monte Carlo samples for risks without a closed form.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub risk_samples: Option<usize>,
}

fn scene(l: Option<f64>) -> Result<Scene> {
    Ok(Scene::new(l.unwrap_or(DEFAULT_BARRIER_LENGTH))?)
}

fn read_json_arg<T: DeserializeOwned>(raw: &str, what: &str) -> Result<T> {
    let text = match raw.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {what} file {path}"))?,
        None => raw.to_string(),
    };
    serde_json::from_str(&text).with_context(|| format!("invalid {what} for the selected system"))
}

/// Binds `$sys` and `$dist` to the concrete system and its default
/// distribution, then evaluates `$body` for that pair.
macro_rules! with_system {
    ($id:expr, $scene:expr, $max_m:expr, |$sys:ident, $dist:ident| $body:expr) => {
        match $id {
            SystemId::ConvexVc => {
                let $sys = &ConvexVcSystem::default();
                let $dist = &ConvexMixture { max_m: $max_m };
                $body
            }
            SystemId::SumNoScheme => {
                let $sys = &SumSystem;
                let $dist = &GeometricExclusion;
                $body
            }
            SystemId::MinNoMap => {
                let $sys = &MinSystem;
                let $dist = &GeometricExclusion;
                $body
            }
            SystemId::IntervalNotPac => {
                let $sys = &IntervalSystem;
                let $dist = &AtomPlusUniform;
                $body
            }
            SystemId::PathAlg1 => {
                let $sys = &PathAlg1 { scene: $scene };
                let $dist = &UniformAngle;
                $body
            }
            SystemId::PathAlg2 => {
                let $sys = &PathAlg2 { scene: $scene };
                let $dist = &UniformAngle;
                $body
            }
        }
    };
}

fn max_m(m: Option<u32>) -> Result<u32> {
    let m = m.unwrap_or(ConvexMixture::default().max_m);
    if m == 0 || m > arcs::MAX_POLYGON_M {
        bail!("max_m must lie in 1..={}", arcs::MAX_POLYGON_M);
    }
    Ok(m)
}

pub fn risk_curve(a: &RiskCurveArgs, seed: u64) -> Result<Outcome> {
    let system = a.system.context("--system is required")?;
    let eps = a.eps.unwrap_or(0.1);
    let ns = a.n.clone().unwrap_or_else(|| vec![1, 5, 10, 25, 50]);
    let trials = a.trials.unwrap_or(200);
    let opts = PacOptions {
        delta: a.confidence_delta.unwrap_or(DEFAULT_DELTA),
        inner_samples: a.inner_samples.unwrap_or(DEFAULT_INNER_SAMPLES),
        force_monte_carlo: a.force_mc.unwrap_or(false),
    };
    if !(opts.delta > 0.0 && opts.delta < 1.0) {
        bail!("confidence_delta must lie in (0,1)");
    }
    let scene = scene(a.l)?;
    let curve = with_system!(system, scene, max_m(a.max_m)?, |sys, dist| pac_curve(
        sys, dist, eps, &ns, trials, seed, &opts
    ))?;
    let csv = curve.to_csv();
    Ok(Outcome {
        checks: Vec::new(),
        result: serde_json::to_value(&curve)?,
        csv: Some(csv),
    })
}

fn band_as<C: DeserializeOwned>(system: SystemId, k: usize, delta: f64) -> Result<Vec<C>> {
    if !system.is_path() {
        bail!("--band applies to path-alg1 and path-alg2 only");
    }
    let band = band_shatter_candidates(k, delta)?;
    Ok(serde_json::from_value(serde_json::to_value(band)?)?)
}

fn shatter_with<S>(
    sys: &S,
    system: SystemId,
    a: &ShatterArgs,
    opts: &ShatterOptions,
) -> Result<Outcome>
where
    S: ScenarioSystem,
    S::Constraint: Serialize + DeserializeOwned + PartialEq,
{
    let candidates: Vec<S::Constraint> = match (&a.candidates, a.band) {
        (Some(raw), None) => read_json_arg(raw, "candidates")?,
        (None, Some(k)) => band_as(system, k, a.delta.unwrap_or(DEFAULT_BAND_HALFWIDTH))?,
        _ => bail!("give exactly one of --candidates and --band"),
    };
    let rep = check_shattered(sys, &candidates, opts)?;
    let mut checks = vec![check(
        "certificate_rechecks",
        rep.recheck(sys),
        "stored counterexample reproduces the discrepancy",
    )];
    if let Some(e) = a.expect {
        let want = match e {
            ShatterExpect::Shattered => ShatterVerdict::ShatteredUpToL,
            ShatterExpect::NotShattered => ShatterVerdict::NotShattered,
        };
        checks.push(check(
            "expected_verdict",
            rep.verdict == want,
            format!("verdict {:?}", rep.verdict),
        ));
    }
    Ok(Outcome {
        checks,
        result: serde_json::to_value(&rep)?,
        csv: None,
    })
}

pub fn shatter(a: &ShatterArgs) -> Result<Outcome> {
    let system = a.system.context("--system is required")?;
    let opts = ShatterOptions {
        max_len: a.max_len,
        include_empty: a.include_empty.unwrap_or(true),
        budget: a.budget.unwrap_or(analyzers::DEFAULT_BUDGET),
    };
    let scene = scene(a.l)?;
    with_system!(system, scene, 8, |sys, _dist| shatter_with(
        sys, system, a, &opts
    ))
}

fn compression_with<S>(sys: &S, a: &CompressionArgs) -> Result<Outcome>
where
    S: ScenarioSystem,
    S::Constraint: Serialize + DeserializeOwned,
{
    let capacity = a.capacity.context("--capacity is required")?;
    let budget = a.budget.unwrap_or(analyzers::DEFAULT_BUDGET);
    let rep = match (&a.tuple, &a.base_set) {
        (Some(raw), None) => {
            let vz: Vec<S::Constraint> = read_json_arg(raw, "tuple")?;
            compression_map_search(sys, &[vz], capacity, budget)?
        }
        (None, Some(raw)) => {
            let base: Vec<S::Constraint> = read_json_arg(raw, "base set")?;
            certify_no_compression_scheme(sys, &base, capacity, a.permutations.unwrap_or(false))?
        }
        _ => bail!("give exactly one of --tuple and --base-set"),
    };
    let mut checks = Vec::new();
    if let CompressionMode::MapSearch { entries } = &rep.mode {
        let legal = entries.iter().all(|e| {
            e.subtuple.as_ref().is_none_or(|s| {
                let picked: Vec<S::Constraint> = s.iter().map(|&i| e.tuple[i].clone()).collect();
                s.len() <= capacity
                    && s.windows(2).all(|w| w[0] < w[1])
                    && sys.same_decision(&sys.decide(&picked), &sys.decide(&e.tuple))
            })
        });
        checks.push(check(
            "subtuples_legal",
            legal,
            "increasing indices, length <= d, same decision",
        ));
    }
    if let Some(e) = a.expect {
        let got = if rep.compressible() {
            CompressionExpect::Compressible
        } else {
            CompressionExpect::Impossible
        };
        checks.push(check(
            "expected_verdict",
            got == e,
            format!("verdict {got:?}"),
        ));
    }
    Ok(Outcome {
        checks,
        result: serde_json::to_value(&rep)?,
        csv: None,
    })
}

pub fn compression(a: &CompressionArgs) -> Result<Outcome> {
    let system = a.system.context("--system is required")?;
    let scene = scene(a.l)?;
    with_system!(system, scene, 8, |sys, _dist| compression_with(sys, a))
}

pub fn bounds(a: &BoundsArgs) -> Result<Outcome> {
    let eps = a.eps.context("--eps is required")?;
    let result = match (a.vc, a.compression) {
        (Some(d), None) => {
            let q = BoundQuery {
                epsilon: eps,
                beta: a.beta.context("--beta is required")?,
                d,
                n: None,
            };
            json!({ "kind": "vc_sample_bound", "query": q, "N": vc_sample_bound(&q)? })
        }
        (None, Some(d)) => match a.n {
            Some(n) => json!({
                "kind": "compression_beta",
                "d": d, "epsilon": eps, "N": n,
                "beta": compression_bound_beta(n, d, eps)?,
            }),
            None => {
                let beta = a.beta.context("--beta is required without --N")?;
                json!({
                    "kind": "compression_minimal_n",
                    "d": d, "epsilon": eps, "beta": beta,
                    "N": compression_min_n(d, eps, beta)?,
                })
            }
        },
        _ => bail!("give exactly one of --vc and --compression"),
    };
    Ok(Outcome {
        checks: Vec::new(),
        result,
        csv: None,
    })
}

pub fn pathplan(a: &PathplanArgs, seed: u64) -> Result<Outcome> {
    let planner = a.algorithm.context("--algorithm is required")?;
    let scene = scene(a.l)?;
    let sampled: Vec<Barrier> = match (&a.thetas, a.random) {
        (Some(t), None) => barriers(t)?,
        (None, Some(n)) => {
            let mut rng = stream(seed, &[0x7061_7468]);
            (0..n).map(|_| UniformAngle.draw(&mut rng)).collect()
        }
        (None, None) => Vec::new(),
        _ => bail!("give at most one of --thetas and --random"),
    };
    let samples = a.risk_samples.unwrap_or(200_000);
    let (decision, risk, kappa, consistent) = match planner {
        Planner::Alg1 => {
            let sys = PathAlg1 { scene };
            let x = sys.decide(&sampled);
            let risk = violation_probability(&sys, &x, &UniformAngle, samples, seed)?;
            let ok = satisfies_all(&sys, &x, &sampled);
            (x, risk, None, ok)
        }
        Planner::Alg2 => {
            let sys = PathAlg2 { scene };
            let x = sys.decide(&sampled);
            let risk = violation_probability(&sys, &x, &UniformAngle, samples, seed)?;
            let ok = satisfies_all(&sys, &x, &sampled);
            (x, risk, Some(alg2_compression(&scene, &sampled)), ok)
        }
    };
    Ok(Outcome {
        checks: vec![check(
            "consistent",
            consistent,
            "decision satisfies every sampled barrier",
        )],
        result: json!({
            "scene": scene,
            "barriers": sampled,
            "decision": decision,
            "length": decision.length(),
            "risk": risk,
            "compression": kappa,
        }),
        csv: None,
    })
}

fn convex_tuple(rng: &mut TrialRng) -> Option<Vec<ConvexConstraint>> {
    let mix = ConvexMixture::default();
    let n = rng.random_range(0..8);
    Some((0..n).map(|_| mix.draw(rng)).collect())
}

fn exclusion_tuple(rng: &mut TrialRng) -> Option<Vec<Exclusion>> {
    let n = rng.random_range(0..8);
    Some((0..n).map(|_| GeometricExclusion.draw(rng)).collect())
}

fn draw_tuple<S, D: ConstraintDistribution<S>>(
    dist: &D,
    rng: &mut TrialRng,
    max_n: usize,
) -> Vec<S::Constraint>
where
    S: ScenarioSystem,
{
    let n = rng.random_range(0..=max_n);
    framework::sample_tuple(dist, n, rng)
}

pub fn demo(a: &DemoArgs, seed: u64) -> Result<Outcome> {
    let example = a.example.context("--example is required")?;
    let trials = a.trials.unwrap_or(200);
    let mut csv = None;
    let (checks, result) = match example {
        SystemId::ConvexVc => {
            let k = a.k.unwrap_or(4);
            let witness = verify_range_shattering_witness(k)?;
            let sys = ConvexVcSystem::default();
            let cons = check_consistency(&sys, convex_tuple, trials, seed)?;
            let mix = ConvexMixture::default();
            let stab = check_stability(
                &sys,
                convex_tuple,
                |r: &mut TrialRng| Some(mix.draw(r)),
                trials,
                seed,
            )?;
            (
                vec![
                    check(
                        "range_shatters_witness_set",
                        witness.passed(),
                        format!(
                            "{} of {} subsets realized",
                            witness.subsets_realized, witness.subsets_checked
                        ),
                    ),
                    check("consistent", cons.passed(), format!("{trials} probes")),
                    check(
                        "stable",
                        stab.passed(),
                        format!("{} applicable probes", stab.applicable),
                    ),
                ],
                json!({ "range_witness": witness, "consistency": cons, "stability": stab }),
            )
        }
        SystemId::SumNoScheme => {
            let k = a.k.unwrap_or(4);
            if k == 0 || k > 20 {
                bail!("k must lie in 1..=20");
            }
            let d = a.capacity.unwrap_or(1);
            let base = excl(&(0..k).map(|j| 1u64 << j).collect::<Vec<_>>());
            let rep = certify_no_compression_scheme(&SumSystem, &base, d, false)?;
            let stab = check_stability(
                &SumSystem,
                exclusion_tuple,
                |r: &mut TrialRng| Some(GeometricExclusion.draw(r)),
                trials,
                seed,
            )?;
            let unstable = matches!(stab.result, StabilityOutcome::Unstable { .. });
            (
                vec![
                    check(
                        "no_compression_scheme",
                        !rep.compressible(),
                        "counting certificate D > B",
                    ),
                    check(
                        "instability_exhibited",
                        unstable,
                        "adding a satisfied U(a), a > 0, moves the decision",
                    ),
                ],
                json!({ "scheme_certificate": rep, "stability": stab }),
            )
        }
        SystemId::MinNoMap => {
            let d = a.capacity.unwrap_or(3);
            let vz = excl(&(0..=d as u64).collect::<Vec<_>>());
            let rep = compression_map_search(&MinSystem, &[vz], d, analyzers::DEFAULT_BUDGET)?;
            let stab = check_stability(
                &MinSystem,
                exclusion_tuple,
                |r: &mut TrialRng| Some(GeometricExclusion.draw(r)),
                trials,
                seed,
            )?;
            (
                vec![
                    check(
                        "no_compression_map",
                        !rep.compressible(),
                        format!("no subtuple of length <= {d} reproduces the decision"),
                    ),
                    check(
                        "stable",
                        stab.passed(),
                        format!("{} applicable probes", stab.applicable),
                    ),
                ],
                json!({ "map_certificate": rep, "stability": stab }),
            )
        }
        SystemId::IntervalNotPac => {
            let eps = a.eps.unwrap_or(0.25);
            let ns = a.n.clone().unwrap_or_else(|| vec![10]);
            let curve = pac_curve(
                &IntervalSystem,
                &AtomPlusUniform,
                eps,
                &ns,
                trials,
                seed,
                &PacOptions::default(),
            )?;
            let worst = curve.rows.iter().map(|r| r.q_hat).fold(1.0, f64::min);
            csv = Some(curve.to_csv());
            (
                vec![check(
                    "exceedance_at_least_half",
                    worst >= 0.5,
                    format!("min q_hat = {worst}"),
                )],
                json!({ "curve": curve }),
            )
        }
        SystemId::PathAlg1 => {
            let scene = scene(a.l)?;
            let sys = PathAlg1 { scene };
            let delta = a.delta.unwrap_or(DEFAULT_BAND_HALFWIDTH);
            let k = a.k.unwrap_or(5) as usize;
            let shat = check_shattered(
                &sys,
                &band_shatter_candidates(k, delta)?,
                &ShatterOptions::default(),
            )?;
            let n = a.n.as_ref().and_then(|v| v.first().copied()).unwrap_or(5);
            let eps = a.eps.unwrap_or(0.25);
            let adv = adversarial_pac_experiment(
                &sys,
                &band_shatter_candidates(2 * n, delta)?,
                n,
                eps,
                trials,
                seed,
            )?;
            csv = Some(adv.pac_curve().to_csv());
            (
                vec![
                    check(
                        "band_shattered",
                        shat.verdict == ShatterVerdict::ShatteredUpToL,
                        format!("{} tuples", shat.tuples_checked),
                    ),
                    check(
                        "adversarial_risk_at_least_half",
                        adv.all_at_least_half,
                        format!("min risk {}, q_hat {}", adv.min_risk, adv.q_hat),
                    ),
                ],
                json!({ "shatter": shat, "adversarial": adv }),
            )
        }
        SystemId::PathAlg2 => {
            let scene = scene(a.l)?;
            let sys = PathAlg2 { scene };
            let mut exact = true;
            for t in 0..trials {
                let mut rng = stream(seed, &[0x6b61_7070, t as u64]);
                let vz = draw_tuple::<PathAlg2, _>(&UniformAngle, &mut rng, 20);
                let sub: Vec<Barrier> = alg2_compression(&scene, &vz)
                    .iter()
                    .map(|&i| vz[i])
                    .collect();
                exact &= sys.decide(&sub) == sys.decide(&vz);
            }
            let eps = a.eps.unwrap_or(0.1);
            let ns = a.n.clone().unwrap_or_else(|| vec![10, 25, 50, 100]);
            let curve = pac_curve(
                &sys,
                &UniformAngle,
                eps,
                &ns,
                trials,
                seed,
                &PacOptions::default(),
            )?;
            let mut dominated = true;
            let mut rows = Vec::new();
            for r in &curve.rows {
                let bound = if r.n > 1 {
                    compression_bound_beta(r.n as u64, 1, eps)?
                } else {
                    1.0
                };
                dominated &= r.q_hat <= bound + r.ci_radius;
                rows.push(json!({ "N": r.n, "q_hat": r.q_hat, "bound": bound }));
            }
            csv = Some(curve.to_csv());
            (
                vec![
                    check(
                        "compression_exact",
                        exact,
                        format!("{trials} random tuples, N <= 20"),
                    ),
                    check(
                        "bound_dominates",
                        dominated,
                        "q_hat <= C(N,1)(1-eps)^(N-1) + ci_radius",
                    ),
                ],
                json!({ "curve": curve, "bound_rows": rows }),
            )
        }
    };
    Ok(Outcome {
        checks,
        result,
        csv,
    })
}
