//! Planar predicates shared by the convex counterexample and the path planner.
//!
//! All tolerance-dependent comparisons go through this module so that a
//! single constant, [`GEOM_TOL`], governs point equality, incidence and
//! circle intersections.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Sub};

/// Absolute tolerance for point equality and circle intersections. Edge
/// incidence uses the same constant relative to the edge length.
pub const GEOM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn from_polar(r: f64, angle: f64) -> Self {
        Self::new(r * angle.cos(), r * angle.sin())
    }
}

impl From<[f64; 2]> for Point {
    fn from(v: [f64; 2]) -> Self {
        Self::new(v[0], v[1])
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

pub fn points_equal(a: Point, b: Point) -> bool {
    a.dist(b) <= GEOM_TOL
}

/// Twice the signed area of the triangle `(a, b, p)`; positive when `p` lies
/// to the left of the directed line `a -> b`.
pub fn orient(a: Point, b: Point, p: Point) -> f64 {
    (b - a).cross(p - a)
}

/// `p` is on the inner (left) side of the directed edge `a -> b`, allowing a
/// slack of `GEOM_TOL` times the edge length.
fn inside_edge(a: Point, b: Point, p: Point) -> bool {
    orient(a, b, p) >= -GEOM_TOL * (b - a).norm_sq()
}

/// Membership in a convex polygon given by counterclockwise vertices.
///
/// A point within `GEOM_TOL` of a vertex is inside. Otherwise it must lie on
/// the inner side of every edge up to `GEOM_TOL` times that edge's length.
/// Degenerate polygons (one or two vertices) reduce to point and segment
/// membership.
pub fn point_in_convex_polygon(p: Point, poly: &[Point]) -> bool {
    match poly.len() {
        0 => false,
        1 => points_equal(p, poly[0]),
        2 => point_on_segment(p, poly[0], poly[1]),
        n => {
            if poly.iter().any(|&v| points_equal(p, v)) {
                return true;
            }
            (0..n).all(|i| inside_edge(poly[i], poly[(i + 1) % n], p))
        }
    }
}

pub fn point_on_segment(p: Point, a: Point, b: Point) -> bool {
    let d = b - a;
    let len_sq = d.norm_sq();
    if len_sq <= GEOM_TOL * GEOM_TOL {
        return points_equal(p, a);
    }
    let t = ((p - a).dot(d) / len_sq).clamp(0.0, 1.0);
    points_equal(p, a + d * t)
}

/// Clips a convex polygon (counterclockwise) to the left side of the directed
/// line `a -> b`. The keep test is the same edge-relative test used by
/// [`point_in_convex_polygon`], so kept vertices pass membership for the
/// clipping edge.
pub fn clip_convex(poly: &[Point], a: Point, b: Point) -> Vec<Point> {
    let n = poly.len();
    if n == 0 {
        return Vec::new();
    }
    let slack = GEOM_TOL * (b - a).norm_sq();
    let side = |p: Point| orient(a, b, p);
    let keep = |s: f64| s >= -slack;
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let cur = poly[i];
        let next = poly[(i + 1) % n];
        let (sc, sn) = (side(cur), side(next));
        if keep(sc) {
            out.push(cur);
        }
        if n > 1 && ((keep(sc) && !keep(sn)) || (!keep(sc) && keep(sn))) {
            let t = sc / (sc - sn);
            if t > 0.0 && t < 1.0 {
                out.push(cur + (next - cur) * t);
            }
        }
    }
    dedup_ring(out)
}

/// Removes consecutive (cyclically) coincident vertices.
pub fn dedup_ring(mut pts: Vec<Point>) -> Vec<Point> {
    pts.dedup_by(|a, b| points_equal(*a, *b));
    while pts.len() > 1 && points_equal(pts[0], *pts.last().unwrap()) {
        pts.pop();
    }
    pts
}

/// Intersects convex polygons by successive clipping. The first polygon is
/// the subject; each following polygon's edges act as clipping lines.
pub fn intersect_convex(subject: Vec<Point>, clipper: &[Point]) -> Vec<Point> {
    let m = clipper.len();
    if m < 3 {
        // A point or segment clipper: keep the part of it inside the subject.
        return clipper
            .iter()
            .copied()
            .filter(|&p| point_in_convex_polygon(p, &subject))
            .collect();
    }
    let mut out = subject;
    for i in 0..m {
        if out.is_empty() {
            break;
        }
        out = clip_convex(&out, clipper[i], clipper[(i + 1) % m]);
    }
    out
}

/// Points where the closed segment `a -> b` meets the unit circle.
pub fn segment_unit_circle(a: Point, b: Point) -> Vec<Point> {
    let d = b - a;
    let qa = d.norm_sq();
    if qa == 0.0 {
        return Vec::new();
    }
    let half_b = a.dot(d);
    let c = a.norm_sq() - 1.0;
    let mut disc = half_b * half_b - qa * c;
    if disc < 0.0 {
        // Tangency within tolerance: distance from the centre to the line
        // exceeds one by less than GEOM_TOL.
        let dist_line = a.cross(d).abs() / qa.sqrt();
        if dist_line - 1.0 > GEOM_TOL {
            return Vec::new();
        }
        disc = 0.0;
    }
    let root = disc.sqrt();
    // Numerically stable pair of roots.
    let q = -(half_b + half_b.signum() * root);
    let (t1, t2) = if q != 0.0 {
        (q / qa, c / q)
    } else {
        (-half_b / qa, -half_b / qa)
    };
    let slack = GEOM_TOL / qa.sqrt();
    let mut out = Vec::new();
    for t in [t1, t2] {
        if t >= -slack && t <= 1.0 + slack {
            let t = t.clamp(0.0, 1.0);
            let p = a + d * t;
            if !out.iter().any(|&o| points_equal(o, p)) {
                out.push(p);
            }
        }
    }
    out
}

pub fn polyline_length(pts: &[Point]) -> f64 {
    pts.windows(2).map(|w| w[0].dist(w[1])).sum()
}
