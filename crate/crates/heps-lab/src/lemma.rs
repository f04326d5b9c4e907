//! The sliding-paraboloid measure inequality on a grid.
//!
//! For a supersolution `u`, an opening `a`, a dilation `δ` and a node set
//! `F ⊆ {u > Γᵘₐ}`, paraboloids of opening `(1+δ)a` tangent from below to
//! the envelope at each node of `F` are slid up until they touch `u`; the
//! measure of fresh contact `A_{(1+δ)a}(u) \ A_a(u)` must dominate
//! `c(λ,Λ)·(1 + 1/δ)⁻²·|F|`. The touching set `E` is recorded, and the
//! inequality is only meaningful when `E` stays well inside the domain.

use crate::check::supersolution_check;
use crate::contact::{contact_set, contact_set_with_envelope, contact_tol};
use crate::envelope::a_envelope;
use crate::error::LabError;
use crate::grid::GridFunction;
use crate::paraboloid::Paraboloid;
use heps_core::Ellipticity;
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaCheckReport {
    pub a: f64,
    pub delta: f64,
    /// `h²·|F|`.
    pub measure_f: f64,
    /// `h²·|A_{(1+δ)a}(u) \ A_a(u)|`.
    pub measure_new_contact: f64,
    /// `c(λ,Λ)·(1 + 1/δ)⁻²·|F|` in measure units.
    pub bound: f64,
    /// One grid cell per distinct touching point; a single analytic contact
    /// can land astride adjacent cells.
    pub slack: f64,
    /// `measure_new_contact ≥ bound − slack`.
    pub satisfied: bool,
    /// True iff every touching point lies at least `2h` from the boundary.
    pub interior_ok: bool,
    /// Distinct touching nodes, sorted by row-major index.
    pub touching: Vec<usize>,
    /// Fraction of interior nodes passing the discrete supersolution test;
    /// reported for context, never fatal.
    pub supersolution_fraction: f64,
}

/// Collects the default slide set: every node with `u − Γᵘₐ > tol`.
pub fn non_contact_nodes(u: &GridFunction, a: f64) -> Vec<usize> {
    let env = a_envelope(u, a);
    let tol = contact_tol(a, u.h());
    u.values()
        .iter()
        .zip(env.values().iter())
        .enumerate()
        .filter(|(_, (uv, ev))| *uv - *ev > tol)
        .map(|(i, _)| i)
        .collect()
}

/// Runs the measure-decay check. `f_nodes = None` slides from the full set
/// `{u > Γᵘₐ}`.
pub fn lemma_check(
    u: &GridFunction,
    ell: Ellipticity,
    a: f64,
    delta: f64,
    f_nodes: Option<&[usize]>,
) -> Result<LemmaCheckReport, LabError> {
    if a.is_nan() || a <= 0.0 || delta.is_nan() || delta <= 0.0 {
        return Err(LabError::InvalidInput(format!(
            "need a > 0 and delta > 0, got a={a}, delta={delta}"
        )));
    }
    let (nx, ny, h) = (u.nx(), u.ny(), u.h());
    let env = a_envelope(u, a);
    let tol = contact_tol(a, h);
    let mask_a = contact_set_with_envelope(u, &env, a);
    let mask_b = contact_set(u, (1.0 + delta) * a);

    let default_f;
    let f: &[usize] = match f_nodes {
        Some(f) => {
            for &i in f {
                if i >= nx * ny {
                    return Err(LabError::InvalidInput(format!("F node {i} out of range")));
                }
                if u.values()[i] - env.values()[i] <= tol {
                    return Err(LabError::InvalidInput(format!(
                        "F node {i} is not in the non-contact set"
                    )));
                }
            }
            f
        }
        None => {
            default_f = u
                .values()
                .iter()
                .zip(env.values().iter())
                .enumerate()
                .filter(|(_, (uv, ev))| *uv - *ev > tol)
                .map(|(i, _)| i)
                .collect::<Vec<_>>();
            &default_f
        }
    };

    let new_cells = mask_b
        .mask()
        .iter()
        .zip(mask_a.mask().iter())
        .filter(|(b, a)| **b && !**a)
        .count();
    let measure_new_contact = h * h * new_cells as f64;
    let measure_f = h * h * f.len() as f64;
    let inv = 1.0 + 1.0 / delta;
    let bound = ell.c() / (inv * inv) * measure_f;

    let opening = (1.0 + delta) * a;
    let mut touching: Vec<usize> = f
        .par_iter()
        .map(|&fi| slide_from(u, &env, fi, opening))
        .collect();
    touching.sort_unstable();
    touching.dedup();

    let slack = h * h * touching.len() as f64;
    let satisfied = measure_new_contact >= bound - slack;
    let interior_ok = touching.iter().all(|&t| {
        let (ix, iy) = (t % nx, t / nx);
        ix >= 2 && iy >= 2 && ix + 2 < nx && iy + 2 < ny
    });

    Ok(LemmaCheckReport {
        a,
        delta,
        measure_f,
        measure_new_contact,
        bound,
        slack,
        satisfied: if f.is_empty() { true } else { satisfied },
        interior_ok,
        touching,
        supersolution_fraction: supersolution_check(u, ell),
    })
}

/// Builds the paraboloid of the given opening tangent from below to the
/// envelope at node `fi` (slope from the envelope's finite-difference
/// gradient), slides it up by `min(u − P)`, and returns the argmin node.
/// Ties break toward the smallest row-major index.
fn slide_from(u: &GridFunction, env: &GridFunction, fi: usize, opening: f64) -> usize {
    let (nx, ny) = (u.nx(), u.ny());
    let (fx, fy) = (fi % nx, fi / nx);
    let h = u.h();
    let gradient = envelope_gradient(env, fx, fy, h);
    let para = Paraboloid::tangent_at((u.x(fx), u.y(fy)), env.values()[fi], gradient, opening);

    let mut best = f64::INFINITY;
    let mut arg = 0usize;
    for iy in 0..ny {
        let y = u.y(iy);
        let row = iy * nx;
        for ix in 0..nx {
            let x = u.xmin() + ix as f64 * h;
            let gap = u.values()[row + ix] - para.eval(x, y);
            if gap < best {
                best = gap;
                arg = row + ix;
            }
        }
    }
    arg
}

fn envelope_gradient(env: &GridFunction, ix: usize, iy: usize, h: f64) -> (f64, f64) {
    let nx = env.nx();
    let ny = env.ny();
    let gx = if ix == 0 {
        (env.at(1, iy) - env.at(0, iy)) / h
    } else if ix + 1 == nx {
        (env.at(ix, iy) - env.at(ix - 1, iy)) / h
    } else {
        (env.at(ix + 1, iy) - env.at(ix - 1, iy)) / (2.0 * h)
    };
    let gy = if iy == 0 {
        (env.at(ix, 1) - env.at(ix, 0)) / h
    } else if iy + 1 == ny {
        (env.at(ix, iy) - env.at(ix, iy - 1)) / h
    } else {
        (env.at(ix, iy + 1) - env.at(ix, iy - 1)) / (2.0 * h)
    };
    (gx, gy)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ell13() -> Ellipticity {
        Ellipticity::new(1.0, 3.0).unwrap()
    }

    #[test]
    fn paraboloid_with_enough_opening_is_trivial() {
        // u itself has opening 1, so {u > envelope} is empty at a = 1
        let u = GridFunction::sample(65, -1.0, 1.0, |x, y| -0.5 * (x * x + y * y)).unwrap();
        let r = lemma_check(&u, ell13(), 1.0, 1.0, None).unwrap();
        assert_eq!(r.measure_f, 0.0);
        assert!(r.satisfied);
        assert!(r.interior_ok);
        assert!(r.touching.is_empty());
    }

    #[test]
    fn cone_satisfies_the_inequality_interior() {
        let u = GridFunction::sample(129, -1.0, 1.0, |x, y| -(x * x + y * y).sqrt()).unwrap();
        let r = lemma_check(&u, ell13(), 2.0, 1.0, None).unwrap();
        assert!(r.measure_f > 0.0);
        assert!(r.satisfied, "report: {r:?}");
        assert!(r.interior_ok, "touching nodes {:?}", r.touching.len());
        assert!((r.supersolution_fraction - 1.0).abs() < 1e-12);
        // bound factor is c/(1+1/delta)^2 = 0.75/4
        assert!((r.bound - 0.1875 * r.measure_f).abs() < 1e-12);
    }

    #[test]
    fn bound_factor_approaches_c_for_huge_delta() {
        let u = GridFunction::sample(65, -1.0, 1.0, |x, y| -(x * x + y * y).sqrt()).unwrap();
        let r = lemma_check(&u, ell13(), 2.0, 1e6, None).unwrap();
        let per_f = r.bound / r.measure_f;
        assert!((per_f - ell13().c()).abs() < 1e-5 * ell13().c());
    }

    #[test]
    fn rejects_contact_nodes_in_f() {
        let u = GridFunction::sample(65, -1.0, 1.0, |x, y| -(x * x + y * y).sqrt()).unwrap();
        // corner node is always in contact
        let r = lemma_check(&u, ell13(), 2.0, 1.0, Some(&[0]));
        assert!(r.is_err());
    }

    #[test]
    fn explicit_f_subset_matches_default_path() {
        let u = GridFunction::sample(65, -1.0, 1.0, |x, y| -(x * x + y * y).sqrt()).unwrap();
        let f = non_contact_nodes(&u, 2.0);
        let half: Vec<usize> = f.iter().copied().step_by(2).collect();
        let r = lemma_check(&u, ell13(), 2.0, 1.0, Some(&half)).unwrap();
        assert!((r.measure_f - u.h() * u.h() * half.len() as f64).abs() < 1e-15);
        assert!(r.satisfied);
    }
}
