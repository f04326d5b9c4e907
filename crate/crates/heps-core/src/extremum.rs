//! The scalar extremum problem behind the optimized lower bound.
//!
//! For an ellipticity ratio `τ` with decay constant `c = c(τ)`, the lower
//! bound for the Hessian integrability exponent is
//!
//! ```text
//!   d_c = sup over x in (0,1) of ln(1 − c·xⁿ) / ln(1 − x),        n = 2,
//! ```
//!
//! attained at an interior point `x_c` for `c < 1` and only in the limit
//! `x → 1` for `c = 1`. The pair `(x_c, d_c)` solves the tangency system
//!
//! ```text
//!   1 − c·x_cⁿ       = (1 − x_c)^{d_c}
//!   n·c·x_c^{n−1}    = d_c·(1 − x_c)^{d_c − 1}
//! ```
//!
//! The solver works in the variable `y = −ln(1 − x)`, which spreads the
//! maximizers (that crowd toward `x = 1` as `c → 1`) evenly and keeps the
//! complement `1 − x = e^{−y}` exact.

use crate::ellipticity::Ellipticity;
use crate::scalar::{bisect_sign_change, golden_section_bracket, ln_one_minus};
use thiserror::Error;

/// Interpolation exponent used by [`interp_point`]; adjustable via
/// [`interp_point_with`].
pub const DEFAULT_INTERP_EXPONENT: f64 = 2.4;

/// Residual tolerance the interior solver must meet against the tangency
/// system.
pub const RESIDUAL_TOL: f64 = 1e-10;

const SCAN_POINTS: usize = 2048;
const Y_MIN: f64 = 1e-8;
const Y_MAX: f64 = 60.0;

#[derive(Debug, Error, PartialEq)]
pub enum SolverError {
    #[error("input out of domain: {0}")]
    InvalidInput(String),
    #[error("no interior maximizer found; last bracket was [{lo}, {hi}] in x")]
    NoConvergence { lo: f64, hi: f64 },
    #[error("negative discriminant {disc} for (d, c) = ({d}, {c}); pair is not a tangency solution")]
    NegativeDiscriminant { d: f64, c: f64, disc: f64 },
    #[error("interpolated bound is singular at tau = 1")]
    SingularTau,
}

/// Solution of the tangency system for one value of `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub c: f64,
    pub n: u32,
    /// Maximizer of the critical function; `1.0` in the boundary case.
    pub x_c: f64,
    /// Value of the supremum, the optimized lower bound for the exponent.
    pub d_c: f64,
    /// Residual of the value equation at `(x_c, d_c)`; zero by convention in
    /// the boundary case.
    pub residual_value: f64,
    /// Residual of the slope equation at `(x_c, d_c)`; zero by convention in
    /// the boundary case.
    pub residual_slope: f64,
    /// True iff `c = 1`, where the supremum equals 1 but is attained only in
    /// the limit `x → 1`.
    pub boundary_flag: bool,
}

/// All bounds for one ellipticity ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub tau: f64,
    pub c: f64,
    /// Optimized lower bound `d_c`.
    pub eps_lower_opt: f64,
    /// Closed-form interpolated lower bound; never exceeds the optimized one.
    pub eps_lower_interp: f64,
    /// Planar upper bound `2τ/(1+τ)`.
    pub eps_upper: f64,
    /// `eps_lower_opt / eps_upper`, in `(0.81, 1]`.
    pub ratio: f64,
}

impl BoundReport {
    /// `(1/τ + 1) · eps_lower_opt`; exceeds 1.629 for every `τ`.
    pub fn theorem_product(&self) -> f64 {
        (1.0 / self.tau + 1.0) * self.eps_lower_opt
    }
}

/// The critical function `ε(x, c) = ln(1 − c·xⁿ)/ln(1 − x)` on `(0,1)`.
///
/// Values lie in `(0, 1)`; the function vanishes at both endpoints for
/// `c < 1` and its supremum is the optimized exponent bound.
pub fn critical_function(x: f64, c: f64, n: u32) -> Result<f64, SolverError> {
    if n < 2 {
        return Err(SolverError::InvalidInput(format!("n must be >= 2, got {n}")));
    }
    if !(x > 0.0 && x < 1.0) {
        return Err(SolverError::InvalidInput(format!(
            "x must lie in (0, 1), got {x}"
        )));
    }
    if !(c > 0.0 && c <= 1.0) {
        return Err(SolverError::InvalidInput(format!(
            "c must lie in (0, 1], got {c}"
        )));
    }
    let q = one_minus_c_xn(x, 1.0 - x, c, n);
    if q <= 0.0 {
        return Err(SolverError::InvalidInput(format!(
            "c·x^n must stay below 1, got c={c}, x={x}"
        )));
    }
    Ok(q.ln() / ln_one_minus(x))
}

/// `1 − c·xⁿ` in the cancellation-free form `(1−x)·(1 + x + … + x^{n−1}) + (1−c)·xⁿ`.
fn one_minus_c_xn(x: f64, one_minus_x: f64, c: f64, n: u32) -> f64 {
    let mut geom = 0.0;
    let mut xk = 1.0;
    for _ in 0..n {
        geom += xk;
        xk *= x;
    }
    // xk is now xⁿ
    one_minus_x * geom + (1.0 - c) * xk
}

/// Sign of `dε/dx` expressed through `y = −ln(1−x)`; positive while the
/// critical function still rises.
fn rise_sign(y: f64, c: f64, n: u32) -> f64 {
    let omx = (-y).exp();
    let x = -(-y).exp_m1();
    let q = one_minus_c_xn(x, omx, c, n);
    let n_f = n as f64;
    n_f * c * x.powi(n as i32 - 1) * y / q + y.exp() * q.ln()
}

fn eval_in_y(y: f64, c: f64, n: u32) -> f64 {
    let omx = (-y).exp();
    let x = -(-y).exp_m1();
    let q = one_minus_c_xn(x, omx, c, n);
    -q.ln() / y
}

/// `sup of xⁿ/(−ln(1−x))` over `(0, 1)`, the small-`c` limit of `d_c/c`.
///
/// The maximizer solves `n(1−x)ln(1−x) + x = 0`, which is bisected on the
/// interval where the left-hand side increases monotonically.
pub fn m0(n: u32) -> Result<f64, SolverError> {
    let x = m0_maximizer(n)?;
    Ok(x.powi(n as i32) / (-ln_one_minus(x)))
}

/// Maximizer of `xⁿ/(−ln(1−x))` on `(0, 1)`.
pub fn m0_maximizer(n: u32) -> Result<f64, SolverError> {
    if n < 2 {
        return Err(SolverError::InvalidInput(format!("n must be >= 2, got {n}")));
    }
    let n_f = n as f64;
    let station = |x: f64| n_f * (1.0 - x) * ln_one_minus(x) + x;
    // station dips below zero right of 0, reaches its minimum at
    // 1 − e^{−(n−1)/n}, then increases through the sought root toward 1.
    let dip = 1.0 - (-(n_f - 1.0) / n_f).exp();
    Ok(bisect_sign_change(station, dip, 1.0 - 1e-16))
}

/// Anchor point `x₀ = (1 + sqrt(1 − 2·m₀(2)))/2 ≈ 0.715` of the
/// interpolated bound; coincides with the maximizer behind `m₀(2)`.
pub fn x0() -> f64 {
    let m = m0(2).expect("m0(2) is always defined");
    0.5 * (1.0 + (1.0 - 2.0 * m).sqrt())
}

/// Solves the tangency system for `c ∈ (0, 1]`, reducing it to the 1D
/// maximization of the critical function.
///
/// For `c = 1` the supremum equals 1 and is attained only in the limit
/// `x → 1`; that case is reported with `boundary_flag = true`.
pub fn solve_system(c: f64, n: u32) -> Result<CriticalPoint, SolverError> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(SolverError::InvalidInput(format!(
            "c must lie in (0, 1], got {c}"
        )));
    }
    if n < 2 {
        return Err(SolverError::InvalidInput(format!("n must be >= 2, got {n}")));
    }
    if c == 1.0 {
        return Ok(CriticalPoint {
            c,
            n,
            x_c: 1.0,
            d_c: 1.0,
            residual_value: 0.0,
            residual_slope: 0.0,
            boundary_flag: true,
        });
    }

    // Coarse scan in y to bracket the interior maximizer.
    let step = (Y_MAX - Y_MIN) / (SCAN_POINTS - 1) as f64;
    let mut best_i = 0;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..SCAN_POINTS {
        let v = eval_in_y(Y_MIN + i as f64 * step, c, n);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    if best_i == 0 || best_i == SCAN_POINTS - 1 {
        let lo = -(-(Y_MIN + best_i.saturating_sub(1) as f64 * step)).exp_m1();
        let hi = -(-(Y_MIN + (best_i + 1).min(SCAN_POINTS - 1) as f64 * step)).exp_m1();
        return Err(SolverError::NoConvergence { lo, hi });
    }
    let y_lo = Y_MIN + (best_i - 1) as f64 * step;
    let y_hi = Y_MIN + (best_i + 1) as f64 * step;

    // Golden section narrows the bracket, then bisection on the analytic
    // derivative sign polishes the root to the last float.
    let (ga, gb) = golden_section_bracket(|y| eval_in_y(y, c, n), y_lo, y_hi, 1e-6, 200);
    let (mut a, mut b) = (ga, gb);
    let mut widen = 1e-6;
    for _ in 0..60 {
        if rise_sign(a, c, n) > 0.0 && rise_sign(b, c, n) < 0.0 {
            break;
        }
        a = (a - widen).max(y_lo.min(a));
        b = (b + widen).min(y_hi.max(b));
        widen *= 2.0;
    }
    if !(rise_sign(a, c, n) > 0.0 && rise_sign(b, c, n) < 0.0) {
        return Err(SolverError::NoConvergence {
            lo: -(-a).exp_m1(),
            hi: -(-b).exp_m1(),
        });
    }
    let y_star = bisect_sign_change(|y| rise_sign(y, c, n), a, b);

    let x = -(-y_star).exp_m1();
    let omx = (-y_star).exp();
    let q = one_minus_c_xn(x, omx, c, n);
    let d = -q.ln() / y_star;
    let n_f = n as f64;

    // Residuals of the tangency system itself.
    let residual_value = q - (-d * y_star).exp();
    let residual_slope = n_f * c * x.powi(n as i32 - 1) - d * (-(d - 1.0) * y_star).exp();

    Ok(CriticalPoint {
        c,
        n,
        x_c: x,
        d_c: d,
        residual_value,
        residual_slope,
        boundary_flag: false,
    })
}

/// Closed-form maximizer `x_c = (1 + sqrt(1 − (d/c)(2−d)))/(2−d)` recovered
/// from a tangency value `d` at constant `c`.
///
/// Fails with a negative discriminant when `(d, c)` is not a consistent
/// tangency pair.
pub fn x_c_closed_form(d: f64, c: f64) -> Result<f64, SolverError> {
    let disc = 1.0 - (d / c) * (2.0 - d);
    if disc < 0.0 {
        return Err(SolverError::NegativeDiscriminant { d, c, disc });
    }
    Ok((1.0 + disc.sqrt()) / (2.0 - d))
}

/// `ψ(c) = d_c/c`; increases from `m₀(2)` at `c → 0` to `1` at `c = 1`.
pub fn psi(c: f64) -> Result<f64, SolverError> {
    Ok(solve_system(c, 2)?.d_c / c)
}

/// The optimized lower bound `d_{c(τ)}` for the sharp exponent.
pub fn lower_bound_opt(ell: Ellipticity) -> Result<f64, SolverError> {
    Ok(solve_system(ell.c(), 2)?.d_c)
}

/// Interpolated evaluation point `t(τ) = x₀ + (1 − x₀)·c(τ)^{2.4}`.
pub fn interp_point(ell: Ellipticity) -> Result<f64, SolverError> {
    interp_point_with(ell, DEFAULT_INTERP_EXPONENT)
}

/// [`interp_point`] with a caller-chosen interpolation exponent.
pub fn interp_point_with(ell: Ellipticity, exponent: f64) -> Result<f64, SolverError> {
    if ell.tau() >= 1.0 {
        return Err(SolverError::SingularTau);
    }
    let anchor = x0();
    let t = anchor + (1.0 - anchor) * ell.c().powf(exponent);
    if t >= 1.0 {
        // ratios within rounding of 1 push the evaluation point onto the
        // singular endpoint
        return Err(SolverError::SingularTau);
    }
    Ok(t)
}

/// Closed-form lower bound: the critical function evaluated at `t(τ)`.
///
/// Always at most the optimized bound, and asymptotically equal to it as
/// `τ → 0`.
pub fn lower_bound_interp(ell: Ellipticity) -> Result<f64, SolverError> {
    let t = interp_point(ell)?;
    critical_function(t, ell.c(), 2)
}

/// Computes every bound for one ellipticity pair.
///
/// At `τ = 1` both lower bounds are set to 1 by the boundary convention.
pub fn bound_report(ell: Ellipticity) -> Result<BoundReport, SolverError> {
    let tau = ell.tau();
    let c = ell.c();
    if c == 1.0 {
        // boundary convention: c rounds to 1 only when tau does (or sits
        // within a few ulps of it), and there the two-sided estimate pinches
        let upper = ell.upper_bound_ass();
        return Ok(BoundReport {
            tau,
            c,
            eps_lower_opt: upper,
            eps_lower_interp: upper,
            eps_upper: upper,
            ratio: 1.0,
        });
    }
    let eps_lower_opt = lower_bound_opt(ell)?;
    let eps_lower_interp = match lower_bound_interp(ell) {
        Ok(v) => v,
        // the evaluation point can round onto the singular endpoint when tau
        // sits within rounding of 1; the interpolated bound degenerates to
        // the optimized one there
        Err(SolverError::SingularTau) => eps_lower_opt,
        Err(e) => return Err(e),
    };
    let eps_upper = ell.upper_bound_ass();
    let ratio = eps_lower_opt / eps_upper;
    let report = BoundReport {
        tau,
        c,
        eps_lower_opt,
        eps_lower_interp,
        eps_upper,
        ratio,
    };
    debug_assert!(report.eps_lower_interp <= report.eps_lower_opt + 1e-9);
    debug_assert!(report.eps_lower_opt <= report.eps_upper + 1e-9);
    debug_assert!(report.ratio > 0.81 && report.ratio <= 1.0 + 1e-12);
    Ok(report)
}
