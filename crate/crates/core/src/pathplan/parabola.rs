use super::{Barrier, Scene};
use crate::error::{invalid, Error, Result};
use std::f64::consts::{FRAC_PI_2, PI};

/// Smallest `h` for which the tip of a barrier at angle `theta` lies on or
/// below `y = h (1 - x^2)`:
///
/// ```text
/// g(theta) = L sin(theta) / (1 - L^2 cos^2(theta))
/// ```
///
/// The region under the parabola is convex and contains `O`, so clearing the
/// tip clears the whole barrier.
pub fn parabola_height_requirement(theta: f64, barrier_length: f64) -> f64 {
    let c = theta.cos();
    barrier_length * theta.sin() / (1.0 - barrier_length * barrier_length * c * c)
}

pub fn alg2_shortest_parabola(scene: &Scene, sampled: &[Barrier]) -> f64 {
    sampled
        .iter()
        .map(|b| parabola_height_requirement(b.theta, scene.barrier_length))
        .fold(0.0, f64::max)
}

/// Index of the first barrier attaining the largest height requirement; the
/// parabola computed from that barrier alone equals the one computed from
/// the whole tuple. Empty input yields an empty subtuple.
pub fn alg2_compression(scene: &Scene, sampled: &[Barrier]) -> Vec<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (k, b) in sampled.iter().enumerate() {
        let g = parabola_height_requirement(b.theta, scene.barrier_length);
        if best.is_none_or(|(_, bg)| g > bg) {
            best = Some((k, g));
        }
    }
    best.map(|(k, _)| vec![k]).unwrap_or_default()
}

/// Arc length of `y = h (1 - x^2)` over `[-1, 1]`.
pub fn parabola_arc_length(h: f64) -> f64 {
    let a = 2.0 * h.abs();
    if a == 0.0 {
        2.0
    } else {
        (1.0 + a * a).sqrt() + a.asinh() / a
    }
}

const ROOT_TOL: f64 = 1e-12;
const MAX_BISECTIONS: usize = 200;

/// Bisection for the crossing of `f` through `h` on `[lo, hi]`, where `f`
/// is monotone and `f(lo) - h` and `f(hi) - h` have opposite signs.
fn bisect(f: impl Fn(f64) -> f64, h: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let below_at_lo = f(lo) <= h;
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= ROOT_TOL {
            return Ok(0.5 * (lo + hi));
        }
        let mid = 0.5 * (lo + hi);
        if (f(mid) <= h) == below_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NonConvergence(format!(
        "bisection on [{lo}, {hi}] did not reach width {ROOT_TOL}"
    )))
}

/// Probability that a barrier with angle uniform on `(0, pi)` is violated by
/// the parabola of height `h`, i.e. `|{theta : g(theta) > h}| / pi`.
///
/// `g` is symmetric about `pi/2` and, on `(0, pi/2]`, increases up to its peak
/// at `asin(min(1, sqrt(1 - L^2) / L))` and decreases after it, so the
/// violating angles form one interval on each side of `pi/2`.
pub fn alg2_analytic_risk(h: f64, barrier_length: f64) -> Result<f64> {
    if !(h >= 0.0) {
        return Err(invalid(format!(
            "parabola height must be non-negative, got {h}"
        )));
    }
    if !(barrier_length > 0.0 && barrier_length < 1.0) {
        return Err(invalid(format!(
            "barrier length must lie in (0,1), got {barrier_length}"
        )));
    }
    if h == 0.0 {
        return Ok(1.0);
    }
    let g = |t: f64| parabola_height_requirement(t, barrier_length);
    let peak_sin = ((1.0 - barrier_length * barrier_length).sqrt() / barrier_length).min(1.0);
    let peak = peak_sin.asin();
    if g(peak) <= h {
        return Ok(0.0);
    }
    let lo = bisect(g, h, 0.0, peak)?;
    let hi = if g(FRAC_PI_2) > h {
        FRAC_PI_2
    } else {
        bisect(g, h, peak, FRAC_PI_2)?
    };
    Ok((2.0 * (hi - lo) / PI).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn height_examples() {
        let scene = Scene::default();
        assert_eq!(alg2_shortest_parabola(&scene, &[]), 0.0);
        let up = [Barrier { theta: FRAC_PI_2 }];
        assert!((alg2_shortest_parabola(&scene, &up) - 0.5).abs() < 1e-15);
        let diag = [Barrier { theta: FRAC_PI_4 }];
        let expect = 0.5 * (0.5f64).sqrt() / 0.875;
        assert!((alg2_shortest_parabola(&scene, &diag) - expect).abs() < 1e-15);
        assert!((expect - 0.40406).abs() < 1e-5);
    }

    #[test]
    fn compression_examples() {
        let scene = Scene::default();
        let b = |t: f64| Barrier { theta: t };
        assert_eq!(
            alg2_compression(&scene, &[b(PI / 3.0), b(FRAC_PI_2), b(2.0 * PI / 3.0)]),
            vec![1]
        );
        assert_eq!(alg2_compression(&scene, &[b(1.0)]), vec![0]);
        assert_eq!(
            alg2_compression(&scene, &[b(0.3), b(1.0), b(0.4), b(1.0)]),
            vec![1]
        );
        assert!(alg2_compression(&scene, &[]).is_empty());
    }

    #[test]
    fn risk_boundary_cases() {
        assert_eq!(alg2_analytic_risk(0.5, 0.5).unwrap(), 0.0);
        assert_eq!(alg2_analytic_risk(0.7, 0.5).unwrap(), 0.0);
        assert_eq!(alg2_analytic_risk(0.0, 0.5).unwrap(), 1.0);
        let mid = alg2_analytic_risk(0.25, 0.5).unwrap();
        assert!(mid > 0.0 && mid < 1.0);
        assert!(alg2_analytic_risk(-0.1, 0.5).is_err());
    }

    #[test]
    fn arc_length_at_zero_is_chord() {
        assert_eq!(parabola_arc_length(0.0), 2.0);
    }
}
