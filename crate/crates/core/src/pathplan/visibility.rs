use super::{Barrier, Scene, ORIGIN, START, TARGET};
use crate::geometry::{Point, GEOM_TOL};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Whether the closed segment `p -> q` meets the blocked part `[O, tip)` of a
/// barrier. Contacts within `GEOM_TOL` of the tip are allowed.
pub fn segment_hits_barrier(p: Point, q: Point, tip: Point) -> bool {
    let r = q - p;
    let s = tip - ORIGIN;
    let (r_len, s_len) = (r.norm(), s.norm());
    if r_len <= GEOM_TOL {
        return hits_point(p, tip);
    }
    let denom = r.cross(s);
    let w = ORIGIN - p;
    if denom.abs() > 1e-12 * r_len * s_len {
        let t = w.cross(s) / denom;
        let u = w.cross(r) / denom;
        let t_slack = GEOM_TOL / r_len;
        let u_slack = GEOM_TOL / s_len;
        if t < -t_slack || t > 1.0 + t_slack || u < -u_slack || u > 1.0 + u_slack {
            return false;
        }
        let x = p + r * t.clamp(0.0, 1.0);
        return x.dist(tip) > GEOM_TOL;
    }
    // Parallel: only a collinear overlap can block.
    if r.cross(ORIGIN - p).abs() / r_len > GEOM_TOL {
        return false;
    }
    let up = p.dot(s) / (s_len * s_len);
    let uq = q.dot(s) / (s_len * s_len);
    let lo = up.min(uq).max(0.0);
    let hi = up.max(uq).min(1.0);
    lo <= hi && lo < 1.0 - GEOM_TOL / s_len
}

fn hits_point(p: Point, tip: Point) -> bool {
    let s = tip - ORIGIN;
    let s_len = s.norm();
    let u = p.dot(s) / (s_len * s_len);
    let on_line = s.cross(p).abs() / s_len <= GEOM_TOL;
    on_line && u >= -GEOM_TOL / s_len && p.dist(tip) > GEOM_TOL
}

#[derive(Clone, Copy, PartialEq)]
struct Entry {
    cost: f64,
    node: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    // Min-heap on (cost, node index).
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortest path from `I` to `T` avoiding the sampled barriers.
///
/// Uniform-cost search over the visibility graph on `I`, `T`, `O` and the
/// distinct barrier tips; an edge is present when it meets no barrier except
/// at a tip. Ties are resolved towards lower node indices.
pub fn alg1_shortest_path(scene: &Scene, sampled: &[Barrier]) -> Vec<Point> {
    let mut tips: Vec<Point> = Vec::with_capacity(sampled.len());
    let mut seen: Vec<&Barrier> = Vec::new();
    for b in sampled {
        if !seen.contains(&b) {
            seen.push(b);
            tips.push(scene.tip(b));
        }
    }
    let mut nodes = vec![START, TARGET, ORIGIN];
    nodes.extend(tips.iter().copied());
    let n = nodes.len();

    let visible = |a: usize, b: usize| {
        !tips
            .iter()
            .any(|&tip| segment_hits_barrier(nodes[a], nodes[b], tip))
    };

    let mut dist = vec![f64::INFINITY; n];
    let mut prev = vec![usize::MAX; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[0] = 0.0;
    heap.push(Entry { cost: 0.0, node: 0 });
    while let Some(Entry { cost, node }) = heap.pop() {
        if done[node] {
            continue;
        }
        done[node] = true;
        if node == 1 {
            break;
        }
        for next in 0..n {
            if done[next] || next == node || !visible(node, next) {
                continue;
            }
            let c = cost + nodes[node].dist(nodes[next]);
            if c < dist[next] {
                dist[next] = c;
                prev[next] = node;
                heap.push(Entry {
                    cost: c,
                    node: next,
                });
            }
        }
    }

    // The upper convex hull of I, T and the tips is always unobstructed, so
    // T is reachable.
    let mut path = vec![TARGET];
    let mut cur = 1;
    while cur != 0 {
        cur = prev[cur];
        assert!(cur != usize::MAX, "target unreachable in visibility graph");
        path.push(nodes[cur]);
    }
    path.reverse();
    path
}
