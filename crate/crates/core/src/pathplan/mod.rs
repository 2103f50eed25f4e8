//! Path planning from `I = (-1, 0)` to `T = (1, 0)` above a forbidden lower
//! halfplane, among random barriers: segments of length `L` radiating from
//! `O = (0, 0)` at an angle `theta` in `(0, pi)`.
//!
//! A barrier blocks the half-open segment `[O, tip)`. Together with the
//! forbidden halfplane it walls off the left of the scene from the right, so a
//! path may touch a barrier only at its tip.
//!
//! Two planners are provided: [`alg1_shortest_path`] (the taut string,
//! infinite dVC dimension) and [`alg2_shortest_parabola`] (compression map of
//! capacity one).

mod parabola;
mod visibility;

pub use parabola::{
    alg2_analytic_risk, alg2_compression, alg2_shortest_parabola, parabola_arc_length,
    parabola_height_requirement,
};
pub use visibility::{alg1_shortest_path, segment_hits_barrier};

use crate::error::{invalid, Error, Result};
use crate::framework::{ConstraintDistribution, ScenarioSystem};
use crate::geometry::{self, Point, GEOM_TOL};
use crate::rng::TrialRng;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};
use std::hash::{Hash, Hasher};

pub const START: Point = Point::new(-1.0, 0.0);
pub const TARGET: Point = Point::new(1.0, 0.0);
pub const ORIGIN: Point = Point::new(0.0, 0.0);

pub const DEFAULT_BARRIER_LENGTH: f64 = 0.5;
pub const DEFAULT_BAND_HALFWIDTH: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawScene")]
pub struct Scene {
    #[serde(rename = "L")]
    pub barrier_length: f64,
}

#[derive(Deserialize)]
struct RawScene {
    #[serde(rename = "L")]
    barrier_length: f64,
}

impl TryFrom<RawScene> for Scene {
    type Error = Error;
    fn try_from(raw: RawScene) -> Result<Self> {
        Scene::new(raw.barrier_length)
    }
}

impl Default for Scene {
    fn default() -> Self {
        Self {
            barrier_length: DEFAULT_BARRIER_LENGTH,
        }
    }
}

impl Scene {
    pub fn new(barrier_length: f64) -> Result<Self> {
        if !(barrier_length > 0.0 && barrier_length < 1.0) {
            return Err(invalid(format!(
                "barrier length must lie in (0,1), got {barrier_length}"
            )));
        }
        Ok(Self { barrier_length })
    }

    pub fn tip(&self, barrier: &Barrier) -> Point {
        Point::from_polar(self.barrier_length, barrier.theta)
    }
}

/// A barrier at angle `theta`, compared bitwise.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(try_from = "RawBarrier")]
pub struct Barrier {
    pub theta: f64,
}

#[derive(Deserialize)]
struct RawBarrier {
    theta: f64,
}

impl TryFrom<RawBarrier> for Barrier {
    type Error = Error;
    fn try_from(raw: RawBarrier) -> Result<Self> {
        Barrier::new(raw.theta)
    }
}

impl Barrier {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < PI) {
            return Err(invalid(format!(
                "barrier angle must lie in (0, pi), got {theta}"
            )));
        }
        Ok(Self { theta })
    }
}

pub fn barriers(thetas: &[f64]) -> Result<Vec<Barrier>> {
    thetas.iter().map(|&t| Barrier::new(t)).collect()
}

impl PartialEq for Barrier {
    fn eq(&self, other: &Self) -> bool {
        self.theta.to_bits() == other.theta.to_bits()
    }
}

impl Eq for Barrier {}

impl Hash for Barrier {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.theta.to_bits().hash(state);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathDecision {
    /// Vertices from `I` to `T`.
    Polyline(Vec<Point>),
    /// Height `h` of the curve `y = h (1 - x^2)`.
    Parabola(f64),
}

impl PathDecision {
    pub fn length(&self) -> f64 {
        match self {
            Self::Polyline(v) => geometry::polyline_length(v),
            Self::Parabola(h) => parabola_arc_length(*h),
        }
    }
}

pub fn barrier_satisfied(scene: &Scene, path: &PathDecision, barrier: &Barrier) -> bool {
    match path {
        PathDecision::Polyline(v) => {
            let tip = scene.tip(barrier);
            !v.windows(2).any(|w| segment_hits_barrier(w[0], w[1], tip))
        }
        PathDecision::Parabola(h) => {
            parabola_height_requirement(barrier.theta, scene.barrier_length) <= h + GEOM_TOL
        }
    }
}

fn polylines_equal(a: &PathDecision, b: &PathDecision) -> bool {
    match (a, b) {
        (PathDecision::Polyline(p), PathDecision::Polyline(q)) => {
            p.len() == q.len() && p.iter().zip(q).all(|(&u, &v)| geometry::points_equal(u, v))
        }
        (PathDecision::Parabola(g), PathDecision::Parabola(h)) => (g - h).abs() <= GEOM_TOL,
        _ => false,
    }
}

/// Shortest path among the sampled barriers.
#[derive(Debug, Clone, Copy, Default)]
pub struct PathAlg1 {
    pub scene: Scene,
}

/// Shortest parabola `y = h (1 - x^2)` clearing the sampled barriers.
#[derive(Debug, Clone, Copy, Default)]
pub struct PathAlg2 {
    pub scene: Scene,
}

impl ScenarioSystem for PathAlg1 {
    type Constraint = Barrier;
    type Decision = PathDecision;

    fn name(&self) -> &str {
        "path-alg1"
    }
    fn decide(&self, constraints: &[Barrier]) -> PathDecision {
        PathDecision::Polyline(alg1_shortest_path(&self.scene, constraints))
    }
    fn satisfies(&self, x: &PathDecision, z: &Barrier) -> bool {
        barrier_satisfied(&self.scene, x, z)
    }
    fn same_decision(&self, a: &PathDecision, b: &PathDecision) -> bool {
        polylines_equal(a, b)
    }
    fn decision_tolerance(&self) -> f64 {
        GEOM_TOL
    }
}

impl ScenarioSystem for PathAlg2 {
    type Constraint = Barrier;
    type Decision = PathDecision;

    fn name(&self) -> &str {
        "path-alg2"
    }
    fn decide(&self, constraints: &[Barrier]) -> PathDecision {
        PathDecision::Parabola(alg2_shortest_parabola(&self.scene, constraints))
    }
    fn satisfies(&self, x: &PathDecision, z: &Barrier) -> bool {
        barrier_satisfied(&self.scene, x, z)
    }
    fn same_decision(&self, a: &PathDecision, b: &PathDecision) -> bool {
        polylines_equal(a, b)
    }
    fn decision_tolerance(&self) -> f64 {
        GEOM_TOL
    }
}

/// Barrier angle uniform on `(0, pi)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct UniformAngle;

impl UniformAngle {
    pub fn draw(&self, rng: &mut TrialRng) -> Barrier {
        loop {
            let u: f64 = rng.random();
            if u > 0.0 {
                return Barrier { theta: PI * u };
            }
        }
    }
}

impl ConstraintDistribution<PathAlg1> for UniformAngle {
    fn sample(&self, rng: &mut TrialRng) -> Barrier {
        self.draw(rng)
    }
}

impl ConstraintDistribution<PathAlg2> for UniformAngle {
    fn sample(&self, rng: &mut TrialRng) -> Barrier {
        self.draw(rng)
    }
    fn analytic_violation(&self, system: &PathAlg2, x: &PathDecision) -> Option<f64> {
        match x {
            PathDecision::Parabola(h) => alg2_analytic_risk(*h, system.scene.barrier_length).ok(),
            PathDecision::Polyline(_) => None,
        }
    }
}

/// `k` angles evenly spaced over `[pi/2 - delta, pi/2 + delta]` (just `pi/2`
/// for `k = 1`). Taut paths over any sub-collection of these tips dip inside
/// the radius-`L` circle between and beyond the sampled tips, so they violate
/// every unsampled barrier of the family.
pub fn band_shatter_candidates(k: usize, delta: f64) -> Result<Vec<Barrier>> {
    if k == 0 {
        return Err(invalid("candidate count must be at least 1"));
    }
    if !(delta > 0.0 && delta < FRAC_PI_2) {
        return Err(invalid(format!(
            "band half-width must lie in (0, pi/2), got {delta}"
        )));
    }
    if k == 1 {
        return Ok(vec![Barrier { theta: FRAC_PI_2 }]);
    }
    let lo = FRAC_PI_2 - delta;
    let step = 2.0 * delta / (k - 1) as f64;
    Ok((0..k)
        .map(|j| Barrier {
            theta: if 2 * j + 1 == k {
                FRAC_PI_2
            } else {
                lo + step * j as f64
            },
        })
        .collect())
}
