//! Solver checks against independent brute-force oracles.
//!
//! Frozen constants in this file were produced by the grid-scan oracles
//! below (10^6–10^7 points) and cross-checked against the solver; the two
//! routes agree to ~1e-14.

use heps_core::*;

/// Brute-force maximization of the critical function over a uniform grid.
fn grid_max_critical(c: f64, points: usize) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for i in 1..points {
        let x = i as f64 / points as f64;
        if let Ok(v) = critical_function(x, c, 2) {
            best = best.max(v);
        }
    }
    best
}

/// Brute-force maximization of x²/(−ln(1−x)).
fn grid_max_m0(points: usize) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for i in 1..points {
        let x = i as f64 / points as f64;
        best = best.max(x * x / (-(1.0 - x).ln()));
    }
    best
}

#[test]
fn m0_against_scan_and_frozen_value() {
    let v = m0(2).unwrap();
    assert!((v - 0.407264377589074).abs() < 1e-12);
    assert!((v - grid_max_m0(2_000_000)).abs() < 1e-10);
    assert!((m0_maximizer(2).unwrap() - 0.715331862959162).abs() < 1e-12);
    // the commonly cited lower bound 0.4073 is rounded from this supremum,
    // which sits just below it, so no assertion on that comparison here
    assert!(4.0 * v > 1.629);
}

#[test]
fn m0_n3_frozen() {
    assert!((m0(3).unwrap() - 0.323716853807722).abs() < 1e-12);
}

#[test]
fn x0_frozen() {
    let v = x0();
    assert!((v - 0.715331862959162).abs() < 1e-12);
    // x0 is exactly the maximizer behind m0(2)
    assert!((v - m0_maximizer(2).unwrap()).abs() < 1e-10);
}

#[test]
fn solve_system_frozen_values() {
    let cp = solve_system(0.75, 2).unwrap();
    assert!(!cp.boundary_flag);
    assert!((cp.x_c - 0.855116864047854).abs() < 1e-12);
    assert!((cp.d_c - 0.411527213254137).abs() < 1e-12);
    assert!(cp.residual_value.abs() <= 1e-10);
    assert!(cp.residual_slope.abs() <= 1e-10);
    assert!((psi(0.75).unwrap() - 0.548702951005516).abs() < 1e-12);
}

#[test]
fn solve_system_against_grid_oracle() {
    for &c in &[0.05, 0.2, 0.5, 0.75, 0.95] {
        let cp = solve_system(c, 2).unwrap();
        let scan = grid_max_critical(c, 1_000_000);
        assert!(
            (cp.d_c - scan).abs() <= 1e-6,
            "c={c}: solver {} vs scan {}",
            cp.d_c,
            scan
        );
        let closed = x_c_closed_form(cp.d_c, c).unwrap();
        assert!((closed - cp.x_c).abs() <= 1e-8, "c={c}");
    }
}

#[test]
fn solve_system_extreme_constants() {
    for &c in &[1e-8, 1e-4, 0.99, 0.9999, 0.999999] {
        let cp = solve_system(c, 2).unwrap();
        assert!(!cp.boundary_flag);
        assert!(cp.x_c > 0.0 && cp.x_c < 1.0);
        assert!(cp.d_c > 0.0 && cp.d_c < 1.0);
        assert!(cp.residual_value.abs() <= 1e-10, "c={c}: {}", cp.residual_value);
        assert!(cp.residual_slope.abs() <= 1e-10, "c={c}: {}", cp.residual_slope);
    }
}

#[test]
fn small_c_limit_of_psi() {
    // d_c/c -> m0(2) as c -> 0
    let p = psi(1e-4).unwrap();
    let m = m0(2).unwrap();
    assert!((p - 0.407274797972651).abs() < 1e-12);
    assert!((p / m - 1.0).abs() < 1e-3);
}

#[test]
fn newton_cross_check_on_raw_system() {
    // Newton on the 2x2 tangency system, started from the solver output,
    // must stay put: confirms (x_c, d_c) solves the raw system and not just
    // the reduced 1D problem.
    for &c in &[0.3, 0.75, 0.95] {
        let cp = solve_system(c, 2).unwrap();
        let (mut x, mut d) = (cp.x_c, cp.d_c);
        for _ in 0..3 {
            let omx = 1.0 - x;
            let f1 = (1.0 - c * x * x) - omx.powf(d);
            let f2 = 2.0 * c * x - d * omx.powf(d - 1.0);
            // Jacobian of (f1, f2) in (x, d)
            let j11 = -2.0 * c * x + d * omx.powf(d - 1.0);
            let j12 = -omx.powf(d) * omx.ln();
            let j21 = 2.0 * c + d * (d - 1.0) * omx.powf(d - 2.0);
            let j22 = -omx.powf(d - 1.0) * (1.0 + d * omx.ln());
            let det = j11 * j22 - j12 * j21;
            x -= (f1 * j22 - f2 * j12) / det;
            d -= (f2 * j11 - f1 * j21) / det;
        }
        assert!((x - cp.x_c).abs() < 1e-9, "c={c}");
        assert!((d - cp.d_c).abs() < 1e-9, "c={c}");
    }
}

#[test]
fn psi_nondecreasing_on_fifty_point_grid() {
    let mut prev = 0.0;
    for k in 1..=50 {
        let c = k as f64 / 50.0;
        let p = psi(c).unwrap();
        assert!(p >= prev - 1e-9, "psi decreases at c={c}");
        prev = p;
    }
    assert_eq!(prev, 1.0);
}

#[test]
fn pointwise_minoration_is_strict() {
    // ln(1 - c x^2)/ln(1 - x) > c x^2 / (-ln(1 - x)) for c < 1
    for &c in &[0.1, 0.5, 0.9] {
        for i in 1..100 {
            let x = i as f64 / 100.0;
            let lhs = critical_function(x, c, 2).unwrap();
            let rhs = c * x * x / (-(1.0 - x).ln());
            assert!(lhs > rhs, "x={x} c={c}");
        }
    }
}

#[test]
fn theorem_chain_on_tau_grid() {
    let mut prev_opt = 0.0;
    for k in 1..=99 {
        let tau = k as f64 / 100.0;
        let ell = Ellipticity::from_tau(tau).unwrap();
        let r = bound_report(ell).unwrap();
        assert!(r.eps_lower_opt <= r.eps_upper + 1e-9, "tau={tau}");
        assert!(r.theorem_product() > 1.629, "tau={tau}");
        assert!(r.eps_lower_interp <= r.eps_lower_opt + 1e-9, "tau={tau}");
        assert!(r.eps_lower_opt >= prev_opt, "lower bound dips at tau={tau}");
        prev_opt = r.eps_lower_opt;
    }
}

#[test]
fn interp_frozen_values() {
    let ell = Ellipticity::new(1.0, 3.0).unwrap();
    assert!((interp_point(ell).unwrap() - 0.858052209432362).abs() < 1e-12);
    assert!((lower_bound_interp(ell).unwrap() - 0.411508652609253).abs() < 1e-12);
    // tau -> 0 sends t to x0
    let tiny = Ellipticity::from_tau(1e-9).unwrap();
    assert!((interp_point(tiny).unwrap() - x0()).abs() < 1e-6);
    // exponent knob default
    assert_eq!(
        interp_point(ell).unwrap(),
        interp_point_with(ell, DEFAULT_INTERP_EXPONENT).unwrap()
    );
}

#[test]
fn interp_recovers_small_c_asymptote() {
    let ell = Ellipticity::from_tau(1e-3).unwrap();
    let ratio = lower_bound_interp(ell).unwrap() / ell.c();
    assert!((ratio / m0(2).unwrap() - 1.0).abs() < 0.01);
}

#[test]
fn report_frozen_values() {
    let r = bound_report(Ellipticity::new(1.0, 3.0).unwrap()).unwrap();
    assert!((r.c - 0.75).abs() < 1e-15);
    assert!((r.eps_lower_opt - 0.411527213254137).abs() < 1e-12);
    assert!((r.eps_upper - 0.5).abs() < 1e-15);
    assert!((r.ratio - 0.823054426508274).abs() < 1e-12);

    let r = bound_report(Ellipticity::from_tau(1e-3).unwrap()).unwrap();
    assert!(r.ratio > 0.8145 && r.ratio < 0.8215);
    assert!(r.theorem_product() > 1.629 && r.theorem_product() < 1.640);
}

#[test]
fn adimensionality_below_threshold() {
    for k in 1..=62 {
        let tau = k as f64 / 100.0;
        let ell = Ellipticity::from_tau(tau).unwrap();
        assert!(lower_bound_opt(ell).unwrap() > tau, "tau={tau}");
    }
}
