//! Single-node envelope values by randomized linear programming.
//!
//! The envelope value at one node is the optimum of the 3-variable LP
//!
//! ```text
//!   maximize t  over (sx, sy, t)
//!   subject to t + sx·dxᵢ + sy·dyᵢ ≤ zᵢ   for every node i,
//! ```
//!
//! whose optimal plane supports the lifted samples from below at the query
//! node. Constraints are processed in a seeded random order (Seidel's
//! algorithm), giving expected linear time per query without building the
//! full hull. Used by the curvature function, where only a handful of nodes
//! are queried per call.

/// One linear constraint `ax·x + ay·y ≤ b` in two variables.
#[derive(Clone, Copy)]
struct Con2 {
    ax: f64,
    ay: f64,
    b: f64,
}

/// Deterministically shuffled constraint order for [`support_value`].
#[allow(clippy::needless_range_loop)]
pub fn shuffled_order(n: usize, seed: u64) -> Vec<u32> {
    let mut order: Vec<u32> = (0..n as u32).collect();
    let mut state = seed;
    let mut next = move || {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut x = state;
        x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        x ^ (x >> 31)
    };
    for i in (1..order.len()).rev() {
        let j = (next() % (i as u64 + 1)) as usize;
        order.swap(i, j);
    }
    order
}

/// Best intercept at the query node of any plane lying below all lifted
/// samples: `max t` such that some slope keeps `t + s·(xᵢ − x₀) ≤ zᵢ`.
///
/// `dx`, `dy` are node offsets from the query node, `z` the lifted values,
/// `order` a shuffled index order, `slope_cap` any bound exceeding the
/// largest one-sided difference quotient of `z`.
pub fn support_value(dx: &[f64], dy: &[f64], z: &[f64], order: &[u32], slope_cap: f64) -> f64 {
    debug_assert_eq!(dx.len(), z.len());
    debug_assert_eq!(dy.len(), z.len());
    let zmin = z.iter().copied().fold(f64::INFINITY, f64::min);
    let zmax = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let s_cap = slope_cap.max(1.0);
    let (tlo, thi) = (zmin - 1.0, zmax);

    // current optimum (sx, sy, t)
    let mut v = [0.0f64, 0.0, thi];
    for (step, &oi) in order.iter().enumerate() {
        let i = oi as usize;
        let (ax, ay, b) = (dx[i], dy[i], z[i]);
        let lhs = ax * v[0] + ay * v[1] + v[2];
        if lhs <= b + feas_eps(lhs, b) {
            continue;
        }
        // optimum moves onto the plane ax·sx + ay·sy + t = b; eliminate the
        // variable with the largest coefficient magnitude
        let prev = &order[..step];
        v = if ax.abs() >= ay.abs().max(1.0) {
            // sx = (b - ay*sy - t)/ax  -> variables (sy, t)
            let inv = 1.0 / ax;
            let mut cons = base_cons_2d(s_cap, tlo, thi, 1);
            // projected sx bounds: |(b - ay*sy - t)/ax| <= s_cap
            cons.push(Con2 { ax: -ay * inv, ay: -inv, b: s_cap - b * inv });
            cons.push(Con2 { ax: ay * inv, ay: inv, b: s_cap + b * inv });
            for &pj in prev {
                let j = pj as usize;
                cons.push(Con2 {
                    ax: dy[j] - dx[j] * ay * inv,
                    ay: 1.0 - dx[j] * inv,
                    b: z[j] - dx[j] * b * inv,
                });
            }
            // objective: t, i.e. (0, 1) in (sy, t)
            let (sy, t) = lp2(&cons, 0.0, 1.0);
            [(b - ay * sy - t) * inv, sy, t]
        } else if ay.abs() >= 1.0 {
            let inv = 1.0 / ay;
            let mut cons = base_cons_2d(s_cap, tlo, thi, 1);
            cons.push(Con2 { ax: -ax * inv, ay: -inv, b: s_cap - b * inv });
            cons.push(Con2 { ax: ax * inv, ay: inv, b: s_cap + b * inv });
            for &pj in prev {
                let j = pj as usize;
                cons.push(Con2 {
                    ax: dx[j] - dy[j] * ax * inv,
                    ay: 1.0 - dy[j] * inv,
                    b: z[j] - dy[j] * b * inv,
                });
            }
            let (sx, t) = lp2(&cons, 0.0, 1.0);
            [sx, (b - ax * sx - t) * inv, t]
        } else {
            // t = b - ax*sx - ay*sy -> variables (sx, sy), maximize that
            let mut cons = base_cons_2d(s_cap, s_cap, s_cap, 0);
            // projected t bounds: tlo <= b - ax*sx - ay*sy <= thi
            cons.push(Con2 { ax, ay, b: b - tlo });
            cons.push(Con2 { ax: -ax, ay: -ay, b: thi - b });
            for &pj in prev {
                let j = pj as usize;
                cons.push(Con2 {
                    ax: dx[j] - ax,
                    ay: dy[j] - ay,
                    b: z[j] - b,
                });
            }
            let (sx, sy) = lp2(&cons, -ax, -ay);
            [sx, sy, b - ax * sx - ay * sy]
        };
    }
    v[2]
}

/// Box constraints for a 2D subproblem. `kind 1`: variables `(s, t)` with
/// `|s| ≤ cap1` and `lo2 ≤ t ≤ hi2`; `kind 0`: variables `(sx, sy)`, both
/// capped (`cap1`, and hi2 reused as the second cap).
fn base_cons_2d(cap1: f64, lo2: f64, hi2: f64, kind: u8) -> Vec<Con2> {
    if kind == 1 {
        vec![
            Con2 { ax: 1.0, ay: 0.0, b: cap1 },
            Con2 { ax: -1.0, ay: 0.0, b: cap1 },
            Con2 { ax: 0.0, ay: 1.0, b: hi2 },
            Con2 { ax: 0.0, ay: -1.0, b: -lo2 },
        ]
    } else {
        vec![
            Con2 { ax: 1.0, ay: 0.0, b: cap1 },
            Con2 { ax: -1.0, ay: 0.0, b: cap1 },
            Con2 { ax: 0.0, ay: 1.0, b: hi2 },
            Con2 { ax: 0.0, ay: -1.0, b: hi2 },
        ]
    }
}

#[inline]
fn feas_eps(lhs: f64, b: f64) -> f64 {
    1e-12 * (lhs.abs() + b.abs() + 1.0)
}

/// Maximizes `cx·x + cy·y` subject to `cons`; the first four constraints are
/// a bounding box, so the problem is bounded.
fn lp2(cons: &[Con2], cx: f64, cy: f64) -> (f64, f64) {
    // start at the box vertex favored by the objective
    let bx = cons[0].b;
    let by = cons[2].b;
    let by_lo = -cons[3].b;
    let mut x = if cx >= 0.0 { bx } else { -bx };
    let mut y = if cy >= 0.0 { by } else { by_lo };
    for (k, con) in cons.iter().enumerate().skip(4) {
        let lhs = con.ax * x + con.ay * y;
        if lhs <= con.b + feas_eps(lhs, con.b) {
            continue;
        }
        if con.ax.abs() < 1e-300 && con.ay.abs() < 1e-300 {
            continue; // degenerate projection, nothing to optimize along
        }
        // solve on the line con.ax*x + con.ay*y = con.b
        if con.ax.abs() >= con.ay.abs() {
            let inv = 1.0 / con.ax;
            // x = (b - ay*y)*inv; objective in y: cy - cx*ay*inv
            let obj = cy - cx * con.ay * inv;
            let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
            for prev in &cons[..k] {
                // prev.ax*x + prev.ay*y <= prev.b
                let a = prev.ay - prev.ax * con.ay * inv;
                let bb = prev.b - prev.ax * con.b * inv;
                shrink(&mut lo, &mut hi, a, bb);
            }
            let y1 = pick(lo, hi, obj);
            let x1 = (con.b - con.ay * y1) * inv;
            x = x1;
            y = y1;
        } else {
            let inv = 1.0 / con.ay;
            let obj = cx - cy * con.ax * inv;
            let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
            for prev in &cons[..k] {
                let a = prev.ax - prev.ay * con.ax * inv;
                let bb = prev.b - prev.ay * con.b * inv;
                shrink(&mut lo, &mut hi, a, bb);
            }
            let x1 = pick(lo, hi, obj);
            let y1 = (con.b - con.ax * x1) * inv;
            x = x1;
            y = y1;
        }
    }
    (x, y)
}

#[inline]
fn shrink(lo: &mut f64, hi: &mut f64, a: f64, b: f64) {
    if a > 1e-300 {
        *hi = hi.min(b / a);
    } else if a < -1e-300 {
        *lo = lo.max(b / a);
    }
    // a == 0 with b < 0 would be infeasible; tolerances upstream prevent it
}

#[inline]
fn pick(lo: f64, hi: f64, obj: f64) -> f64 {
    if lo > hi {
        // numerically pinched bracket
        return 0.5 * (lo + hi);
    }
    if obj >= 0.0 {
        hi
    } else {
        lo
    }
}
