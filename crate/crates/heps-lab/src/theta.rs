//! The curvature function `Θ̲` and level-set measures of its graph.

use crate::contact::{contact_set, contact_tol};
use crate::error::LabError;
use crate::grid::GridFunction;
use crate::lp::{shuffled_order, support_value};

const THETA_BISECTIONS: usize = 60;

/// Minimal opening of a paraboloid tangent to `u` from below at `node`.
///
/// Bisects the opening on `[0, A_max]` with `A_max = 4·range(u)/h²`, the
/// largest opening resolvable on the grid; if no contact exists there, or
/// the bisection terminates above `A_max/2`, the value is `+∞`. Contact at
/// each trial opening is decided by a single-node supporting-plane program
/// against the same tolerance rule the full contact sets use.
pub fn theta(u: &GridFunction, node: (usize, usize)) -> Result<f64, LabError> {
    let (cx, cy) = node;
    if !u.is_interior(cx, cy) {
        return Err(LabError::InvalidInput(format!(
            "node ({cx}, {cy}) is not interior"
        )));
    }
    let (nx, ny, h) = (u.nx(), u.ny(), u.h());
    let n = nx * ny;
    let a_max = 4.0 * u.range() / (h * h);
    if a_max == 0.0 {
        return Ok(0.0); // constant field: affine contact at opening 0
    }

    // index-unit offsets from the query node, fixed across openings
    let mut dx = Vec::with_capacity(n);
    let mut dy = Vec::with_capacity(n);
    for iy in 0..ny {
        for ix in 0..nx {
            dx.push(ix as f64 - cx as f64);
            dy.push(iy as f64 - cy as f64);
        }
    }
    let order = shuffled_order(n, 0x51ed_c0de ^ ((cy * nx + cx) as u64) << 17);

    let mut z = vec![0.0; n];
    let mut contact_at = |a: f64| -> bool {
        // lifted values of u + (a/2)|x|^2 and the node's own value
        let mut cap: f64 = 0.0;
        for iy in 0..ny {
            let y = u.y(iy);
            let row = iy * nx;
            let mut prev = 0.0;
            for ix in 0..nx {
                let x = u.x(ix);
                let v = u.values()[row + ix] + 0.5 * a * (x * x + y * y);
                z[row + ix] = v;
                if ix > 0 {
                    cap = cap.max((v - prev).abs());
                }
                if iy > 0 {
                    cap = cap.max((v - z[row - nx + ix]).abs());
                }
                prev = v;
            }
        }
        let t_star = support_value(&dx, &dy, &z, &order, 2.0 * cap + 1.0);
        z[cy * nx + cx] - t_star <= contact_tol(a, h)
    };

    if !contact_at(a_max) {
        return Ok(f64::INFINITY);
    }
    let (mut lo, mut hi) = (0.0f64, a_max);
    for _ in 0..THETA_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if contact_at(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if hi > 0.5 * a_max {
        return Ok(f64::INFINITY);
    }
    Ok(hi)
}

/// `h²` times the number of interior nodes of `B_{1/2}` where `Θ̲ > t`,
/// read off the complement of the contact set at opening `t`.
pub fn level_measure(u: &GridFunction, t: f64) -> Result<f64, LabError> {
    if t.is_nan() || t <= 0.0 {
        return Err(LabError::InvalidInput(format!(
            "threshold must be positive, got {t}"
        )));
    }
    ensure_contains_half_ball(u)?;
    let cs = contact_set(u, t);
    let h = u.h();
    let mut count = 0usize;
    for iy in 1..u.ny() - 1 {
        let y = u.y(iy);
        for ix in 1..u.nx() - 1 {
            let x = u.x(ix);
            if x * x + y * y < 0.25 && !cs.at(ix, iy) {
                count += 1;
            }
        }
    }
    Ok(h * h * count as f64)
}

pub(crate) fn ensure_contains_half_ball(u: &GridFunction) -> Result<(), LabError> {
    let xmax = u.x(u.nx() - 1);
    let ymax = u.y(u.ny() - 1);
    if u.xmin() <= -0.5 && u.ymin() <= -0.5 && xmax >= 0.5 && ymax >= 0.5 {
        Ok(())
    } else {
        Err(LabError::DomainTooSmall)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_has_zero_curvature() {
        let u = GridFunction::sample(33, -1.0, 1.0, |x, y| 0.4 * x - 0.7 * y + 0.2).unwrap();
        let t = theta(&u, (16, 16)).unwrap();
        assert!(t.abs() < 1e-6, "got {t}");
    }

    #[test]
    fn quadratic_curvature_matches_opening() {
        let u = GridFunction::sample(129, -1.0, 1.0, |x, y| -0.5 * (x * x + y * y)).unwrap();
        for &(ix, iy) in &[(64usize, 64usize), (32, 64), (80, 90)] {
            let t = theta(&u, (ix, iy)).unwrap();
            assert!((t - 1.0).abs() < 5e-3, "({ix},{iy}): got {t}");
        }
    }

    #[test]
    fn rejects_boundary_node() {
        let u = GridFunction::sample(17, -1.0, 1.0, |_, _| 0.0).unwrap();
        assert!(theta(&u, (0, 5)).is_err());
    }

    #[test]
    fn cone_curvature_is_reciprocal_radius() {
        let u = GridFunction::sample(129, -1.0, 1.0, |x, y| -(x * x + y * y).sqrt()).unwrap();
        // node at (0.25, 0): radius 0.25, expect 4
        let t = theta(&u, (80, 64)).unwrap();
        assert!((t - 4.0).abs() < 0.25, "got {t}");
    }

    #[test]
    fn quadratic_measure_vanishes_above_opening() {
        let u = GridFunction::sample(65, -1.0, 1.0, |x, y| -0.5 * (x * x + y * y)).unwrap();
        assert_eq!(level_measure(&u, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn cone_level_measures_match_disks() {
        let u = GridFunction::sample(257, -1.0, 1.0, |x, y| -(x * x + y * y).sqrt()).unwrap();
        let pi = std::f64::consts::PI;
        let m4 = level_measure(&u, 4.0).unwrap();
        assert!((m4 - pi / 16.0).abs() < 0.1 * pi / 16.0, "got {m4}");
        let m1 = level_measure(&u, 1.0).unwrap();
        assert!((m1 - pi / 4.0).abs() < 0.1 * pi / 4.0, "got {m1}");
    }

    #[test]
    fn small_domain_is_rejected() {
        let u = GridFunction::sample(17, -0.4, 0.4, |_, _| 0.0).unwrap();
        assert!(matches!(level_measure(&u, 1.0), Err(LabError::DomainTooSmall)));
    }
}
