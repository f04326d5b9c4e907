//! Power-law decay fits for level-set measures of the curvature function.

use crate::error::LabError;
use crate::grid::GridFunction;
use crate::theta::level_measure;
use heps_core::{solve_system, Ellipticity};
use rayon::prelude::*;

/// Minimum mass (in grid cells) a threshold must retain to enter the fit.
pub const MEASURE_FLOOR_CELLS: f64 = 25.0;

/// Measures of `{Θ̲ > t} ∩ B_{1/2}` over a geometric threshold ladder with a
/// log-log least-squares slope.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayFit {
    pub thresholds: Vec<f64>,
    pub measures: Vec<f64>,
    /// Fitted slope of `log measure` against `log t`; estimates `−ε̂`.
    pub slope: f64,
    pub r_squared: f64,
    /// Number of leading thresholds above the statistical floor that entered
    /// the fit.
    pub used: usize,
}

impl DecayFit {
    /// The fitted decay exponent `ε̂ = −slope`.
    pub fn exponent(&self) -> f64 {
        -self.slope
    }
}

/// The intrinsic dyadic ratio `1 + δ⋆` with `δ⋆ = x_c/(1 − x_c)` at the
/// maximizer `x_c` of the extremum problem for this ellipticity.
pub fn intrinsic_ratio(ell: Ellipticity) -> Result<f64, LabError> {
    let cp = solve_system(ell.c(), 2)?;
    if cp.boundary_flag {
        return Err(LabError::InvalidInput(
            "intrinsic ratio diverges at tau = 1".into(),
        ));
    }
    Ok(1.0 + cp.x_c / (1.0 - cp.x_c))
}

/// Measures `{Θ̲ > t_k}` for `t_k = t0·ratio^k`, `k < count`, then fits the
/// decay exponent over the thresholds above the statistical floor.
pub fn decay_fit(
    u: &GridFunction,
    t0: f64,
    ratio: f64,
    count: usize,
) -> Result<DecayFit, LabError> {
    if t0.is_nan() || t0 <= 0.0 || ratio.is_nan() || ratio <= 1.0 || count < 4 {
        return Err(LabError::InvalidInput(format!(
            "need t0 > 0, ratio > 1, count >= 4; got t0={t0}, ratio={ratio}, count={count}"
        )));
    }
    let thresholds: Vec<f64> = (0..count).map(|k| t0 * ratio.powi(k as i32)).collect();
    let measures: Vec<f64> = thresholds
        .par_iter()
        .map(|&t| level_measure(u, t))
        .collect::<Result<_, _>>()?;

    let floor = MEASURE_FLOOR_CELLS * u.h() * u.h();
    let used = measures.iter().take_while(|&&m| m >= floor).count();
    if used < 2 {
        return Err(LabError::TooFewThresholds(used));
    }

    let xs: Vec<f64> = thresholds[..used].iter().map(|t| t.ln()).collect();
    let ys: Vec<f64> = measures[..used].iter().map(|m| m.ln()).collect();
    let n = used as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x) * (x - mean_x)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(ys.iter())
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let slope = sxy / sxx;
    let ss_tot: f64 = ys.iter().map(|y| (y - mean_y) * (y - mean_y)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(ys.iter())
        .map(|(x, y)| {
            let pred = mean_y + slope * (x - mean_x);
            (y - pred) * (y - pred)
        })
        .sum();
    let r_squared = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };

    Ok(DecayFit {
        thresholds,
        measures,
        slope,
        r_squared,
        used,
    })
}
