//! The arc construction behind the convex system: finite subsets of the
//! positive integers are mapped injectively onto the open upper-right quarter
//! of the unit circle, and the polygons `sigma(m, i)` collect the images of
//! the subsets of `[m]` that contain `i`.
//!
//! Subsets of `[m]` are handled as bitmasks: bit `i - 1` is set iff `i` is a
//! member. With this encoding the binary index `n(u)` is the mask itself.

use crate::error::{invalid, Result};
use crate::geometry::Point;
use std::f64::consts::FRAC_PI_2;

/// Largest `m` for which `sigma(m, i)` may be materialized (2^(m-1) vertices).
pub const MAX_POLYGON_M: u32 = 20;

/// `n(u) = sum over i in u of 2^(i-1)`.
pub fn n_of(u: &[u32]) -> Result<u64> {
    let mut seen = 0u64;
    for &i in u {
        if i == 0 || i > 64 {
            return Err(invalid(format!(
                "subset elements must lie in 1..=64, got {i}"
            )));
        }
        let bit = 1u64 << (i - 1);
        if seen & bit != 0 {
            return Err(invalid(format!("element {i} repeated in subset")));
        }
        seen |= bit;
    }
    Ok(seen)
}

/// Members of the subset encoded by `mask`, ascending.
pub fn members(mask: u64) -> Vec<u32> {
    (0..64)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

/// `alpha = (pi/2) n / (1 + n)`, in `[0, pi/2)`.
pub fn alpha_of_n(n: u64) -> f64 {
    let n = n as f64;
    FRAC_PI_2 * (n / (1.0 + n))
}

pub fn tau_of_n(n: u64) -> Point {
    if n == 0 {
        return Point::new(1.0, 0.0);
    }
    let a = alpha_of_n(n);
    Point::new(a.cos(), a.sin())
}

/// `tau(u) = (cos alpha(u), sin alpha(u))`; `tau(empty) = (1, 0)`.
pub fn tau(u: &[u32]) -> Result<Point> {
    Ok(tau_of_n(n_of(u)?))
}

fn check_index(m: u32, i: u32) -> Result<()> {
    if m == 0 || i == 0 || i > m {
        return Err(invalid(format!(
            "index pair (m={m}, i={i}) requires 1 <= i <= m"
        )));
    }
    if m > MAX_POLYGON_M {
        return Err(invalid(format!(
            "m = {m} exceeds the supported maximum {MAX_POLYGON_M}"
        )));
    }
    Ok(())
}

/// Masks of the subsets of `[m]` containing `i`, ascending by mask value.
pub fn xi_masks(m: u32, i: u32) -> Result<Vec<u64>> {
    check_index(m, i)?;
    let bit = 1u64 << (i - 1);
    Ok((0..1u64 << m).filter(|mask| mask & bit != 0).collect())
}

/// `xi(m, i) = { u subset of [m] : i in u }`, each subset as sorted members.
pub fn xi(m: u32, i: u32) -> Result<Vec<Vec<u32>>> {
    Ok(xi_masks(m, i)?.into_iter().map(members).collect())
}

/// Vertices of `sigma(m, i)` in counterclockwise order.
///
/// All generating points lie on the unit circle, so every one of them is a
/// hull vertex; sorting by angle yields the hull. `alpha` is increasing in
/// `n`, so ascending masks are already ascending angles, and `(0, 1)` closes
/// the ring at angle `pi/2`.
pub fn sigma(m: u32, i: u32) -> Result<Vec<Point>> {
    let mut pts: Vec<Point> = xi_masks(m, i)?.into_iter().map(tau_of_n).collect();
    pts.push(Point::new(0.0, 1.0));
    Ok(pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_index_examples() {
        assert_eq!(n_of(&[]).unwrap(), 0);
        assert_eq!(n_of(&[1]).unwrap(), 1);
        assert_eq!(n_of(&[1, 2]).unwrap(), 3);
        assert!(n_of(&[0]).is_err());
        assert!(n_of(&[2, 2]).is_err());
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(&[]).unwrap(), Point::new(1.0, 0.0));
        let t1 = tau(&[1]).unwrap();
        assert!((t1.x - 0.707_106_781_186_547_6).abs() < 1e-12);
        assert!((t1.y - 0.707_106_781_186_547_6).abs() < 1e-12);
        let t12 = tau(&[1, 2]).unwrap();
        let a = 3.0 * std::f64::consts::PI / 8.0;
        assert!((t12.x - a.cos()).abs() < 1e-15);
        assert!((t12.y - a.sin()).abs() < 1e-15);
        assert!((t12.x - 0.38268).abs() < 1e-5 && (t12.y - 0.92388).abs() < 1e-5);
    }

    #[test]
    fn xi_examples() {
        assert_eq!(
            xi(3, 2).unwrap(),
            vec![vec![2], vec![1, 2], vec![2, 3], vec![1, 2, 3]]
        );
        assert_eq!(xi(1, 1).unwrap(), vec![vec![1]]);
        assert_eq!(xi(2, 1).unwrap(), vec![vec![1], vec![1, 2]]);
        assert!(xi(2, 3).is_err());
        assert_eq!(xi_masks(5, 3).unwrap().len(), 16);
    }

    #[test]
    fn sigma_is_counterclockwise() {
        let poly = sigma(4, 2).unwrap();
        assert_eq!(poly.len(), 9);
        let n = poly.len();
        for k in 0..n {
            let (a, b, c) = (poly[k], poly[(k + 1) % n], poly[(k + 2) % n]);
            assert!(crate::geometry::orient(a, b, c) > 0.0);
        }
    }

    #[test]
    fn nonempty_subsets_land_on_open_arc() {
        for n in 1..5000u64 {
            let a = alpha_of_n(n);
            assert!(a > 0.0 && a < FRAC_PI_2);
        }
    }
}
