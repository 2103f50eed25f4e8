//! Convex scenario program on the unit disk whose range has infinite VC
//! dimension: maximize `x1` subject to polygon constraints `sigma(m, i)` and
//! band constraints `R x [y, 1]`.

use super::arcs::{self, MAX_POLYGON_M};
use crate::error::{invalid, Error, Result};
use crate::framework::{ConstraintDistribution, ScenarioSystem};
use crate::geometry::{self, Point, GEOM_TOL};
use crate::rng::TrialRng;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", try_from = "RawConvex")]
pub enum ConvexConstraint {
    Polygon(u32, u32),
    Band(f64),
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawConvex {
    Polygon(u32, u32),
    Band(f64),
}

impl TryFrom<RawConvex> for ConvexConstraint {
    type Error = Error;
    fn try_from(raw: RawConvex) -> Result<Self> {
        match raw {
            RawConvex::Polygon(m, i) => Self::polygon(m, i),
            RawConvex::Band(y) => Self::band(y),
        }
    }
}

impl ConvexConstraint {
    pub fn polygon(m: u32, i: u32) -> Result<Self> {
        if m == 0 || i == 0 || i > m || m > MAX_POLYGON_M {
            return Err(invalid(format!(
                "polygon index (m={m}, i={i}) requires 1 <= i <= m <= {MAX_POLYGON_M}"
            )));
        }
        Ok(Self::Polygon(m, i))
    }

    pub fn band(y: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&y) {
            return Err(invalid(format!("band level must lie in [0,1], got {y}")));
        }
        // Normalizes -0.0 so that bitwise equality matches numeric equality.
        Ok(Self::Band(y + 0.0))
    }
}

impl PartialEq for ConvexConstraint {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Self::Polygon(a, b), Self::Polygon(c, d)) => a == c && b == d,
            (Self::Band(a), Self::Band(b)) => a.to_bits() == b.to_bits(),
            _ => false,
        }
    }
}

impl Eq for ConvexConstraint {}

impl Hash for ConvexConstraint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Self::Polygon(m, i) => {
                0u8.hash(state);
                m.hash(state);
                i.hash(state);
            }
            Self::Band(y) => {
                1u8.hash(state);
                y.to_bits().hash(state);
            }
        }
    }
}

/// Result of the max-`x1` program with a flag recording whether the
/// larger-`x2` tie-break decided between distinct optimal candidates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexOutcome {
    pub point: Point,
    pub tie_break_used: bool,
}

/// Maximizes `x1` over the unit disk intersected with the given constraints.
pub struct ConvexVcSystem {
    cache: HashMap<(u32, u32), Vec<Point>>,
    cached_up_to: u32,
}

impl Default for ConvexVcSystem {
    fn default() -> Self {
        Self::with_cache(8)
    }
}

impl ConvexVcSystem {
    /// Precomputes `sigma(m, i)` for every `m <= max_m`; larger polygons are
    /// built on demand.
    pub fn with_cache(max_m: u32) -> Self {
        let max_m = max_m.min(MAX_POLYGON_M);
        let mut cache = HashMap::new();
        for m in 1..=max_m {
            for i in 1..=m {
                cache.insert((m, i), arcs::sigma(m, i).expect("valid index"));
            }
        }
        Self {
            cache,
            cached_up_to: max_m,
        }
    }

    /// Vertices of `sigma(m, i)` (counterclockwise). Out-of-range indices
    /// yield the degenerate hull `{(0, 1)}`.
    pub fn polygon(&self, m: u32, i: u32) -> std::borrow::Cow<'_, [Point]> {
        if m <= self.cached_up_to {
            if let Some(p) = self.cache.get(&(m, i)) {
                return std::borrow::Cow::Borrowed(p);
            }
        }
        std::borrow::Cow::Owned(arcs::sigma(m, i).unwrap_or_else(|_| vec![Point::new(0.0, 1.0)]))
    }

    pub fn solve(&self, constraints: &[ConvexConstraint]) -> Result<ConvexOutcome> {
        let y_min = constraints
            .iter()
            .filter_map(|z| match z {
                ConvexConstraint::Band(y) => Some(*y),
                _ => None,
            })
            .fold(f64::NEG_INFINITY, f64::max);

        // Bounding square of the disk, clipped by every polygon, then the band.
        let mut region = vec![
            Point::new(-1.0, -1.0),
            Point::new(1.0, -1.0),
            Point::new(1.0, 1.0),
            Point::new(-1.0, 1.0),
        ];
        for z in constraints {
            if let ConvexConstraint::Polygon(m, i) = *z {
                region = geometry::intersect_convex(region, &self.polygon(m, i));
            }
        }
        if y_min.is_finite() {
            region = geometry::clip_convex(&region, Point::new(0.0, y_min), Point::new(1.0, y_min));
        }
        if region.is_empty() {
            return Err(Error::NumericalDegeneracy(
                "feasible region vanished under clipping".into(),
            ));
        }

        let mut candidates: Vec<Point> = region
            .iter()
            .copied()
            .filter(|p| p.norm() <= 1.0 + GEOM_TOL)
            .collect();
        let n = region.len();
        let edges = if n > 2 { n } else { n - 1 };
        for k in 0..edges {
            candidates.extend(geometry::segment_unit_circle(
                region[k],
                region[(k + 1) % n],
            ));
        }
        let east = Point::new(1.0, 0.0);
        if geometry::point_in_convex_polygon(east, &region) {
            candidates.push(east);
        }
        if n == 1 {
            candidates.push(region[0]);
        }

        let best = candidates
            .iter()
            .copied()
            .fold(None::<Point>, |best, p| match best {
                None => Some(p),
                Some(b) if p.x > b.x + GEOM_TOL => Some(p),
                Some(b) if (p.x - b.x).abs() <= GEOM_TOL && p.y > b.y => Some(p),
                keep => keep,
            })
            .ok_or_else(|| Error::NumericalDegeneracy("no feasible candidate point".into()))?;
        let tie_break_used = candidates
            .iter()
            .any(|p| (p.x - best.x).abs() <= GEOM_TOL && (p.y - best.y).abs() > GEOM_TOL);
        Ok(ConvexOutcome {
            point: best,
            tie_break_used,
        })
    }
}

/// Point of the unit disk maximizing `x1` over the given constraints.
pub fn alg_convex_maxx1(
    system: &ConvexVcSystem,
    constraints: &[ConvexConstraint],
) -> Result<Point> {
    system.solve(constraints).map(|o| o.point)
}

impl ScenarioSystem for ConvexVcSystem {
    type Constraint = ConvexConstraint;
    type Decision = Point;

    fn name(&self) -> &str {
        "convex-vc"
    }

    fn decide(&self, constraints: &[ConvexConstraint]) -> Point {
        // (0, 1) lies in every constraint, so the region is never empty; a
        // clipping failure can only come from round-off.
        self.solve(constraints)
            .map(|o| o.point)
            .unwrap_or(Point::new(0.0, 1.0))
    }

    fn satisfies(&self, x: &Point, z: &ConvexConstraint) -> bool {
        match *z {
            ConvexConstraint::Band(y) => x.y >= y - GEOM_TOL && x.y <= 1.0 + GEOM_TOL,
            ConvexConstraint::Polygon(m, i) => {
                geometry::point_in_convex_polygon(*x, &self.polygon(m, i))
            }
        }
    }

    fn same_decision(&self, a: &Point, b: &Point) -> bool {
        geometry::points_equal(*a, *b)
    }

    fn decision_tolerance(&self) -> f64 {
        GEOM_TOL
    }
}

/// Mixture used for risk experiments on the convex system: with probability
/// 1/2 a band with uniform level, otherwise `sigma(m, i)` with `m` uniform in
/// `1..=max_m` and `i` uniform in `1..=m`.
#[derive(Debug, Clone, Copy)]
pub struct ConvexMixture {
    pub max_m: u32,
}

impl Default for ConvexMixture {
    fn default() -> Self {
        Self { max_m: 5 }
    }
}

impl ConvexMixture {
    pub fn draw(&self, rng: &mut TrialRng) -> ConvexConstraint {
        if rng.random_bool(0.5) {
            ConvexConstraint::Band(rng.random::<f64>())
        } else {
            let m = rng.random_range(1..=self.max_m);
            ConvexConstraint::Polygon(m, rng.random_range(1..=m))
        }
    }
}

impl ConstraintDistribution<ConvexVcSystem> for ConvexMixture {
    fn sample(&self, rng: &mut TrialRng) -> ConvexConstraint {
        self.draw(rng)
    }
}
