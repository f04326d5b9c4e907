//! Discrete supersolution verification.

use crate::grid::GridFunction;
use heps_core::{Ellipticity, SymMatrix2};

/// Fraction of interior nodes where the Pucci minimal operator of the
/// centered-difference Hessian is nonpositive (up to a node-scaled slack).
///
/// The discrete Hessian uses the standard five-point second differences plus
/// the centered cross term. A kink crossing the stencil misrepresents the
/// viscosity inequality there, so callers testing kinked fields should
/// expect a handful of straddling nodes to fail.
pub fn supersolution_check(u: &GridFunction, ell: Ellipticity) -> f64 {
    let (nx, ny) = (u.nx(), u.ny());
    let h2 = u.h() * u.h();
    let mut pass = 0usize;
    let mut total = 0usize;
    for iy in 1..ny - 1 {
        for ix in 1..nx - 1 {
            let c = u.at(ix, iy);
            let uxx = (u.at(ix + 1, iy) - 2.0 * c + u.at(ix - 1, iy)) / h2;
            let uyy = (u.at(ix, iy + 1) - 2.0 * c + u.at(ix, iy - 1)) / h2;
            let uxy = (u.at(ix + 1, iy + 1) - u.at(ix + 1, iy - 1) - u.at(ix - 1, iy + 1)
                + u.at(ix - 1, iy - 1))
                / (4.0 * h2);
            let hess = SymMatrix2::new(uxx, uxy, uyy);
            let slack = 1e-6 * (1.0 + hess.max_norm());
            total += 1;
            if ell.pucci_minus(hess) <= slack {
                pass += 1;
            }
        }
    }
    pass as f64 / total as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ell(l: f64, b: f64) -> Ellipticity {
        Ellipticity::new(l, b).unwrap()
    }

    #[test]
    fn concave_quadratic_everywhere() {
        let u = GridFunction::sample(65, -1.0, 1.0, |x, y| -0.5 * (x * x + y * y)).unwrap();
        assert_eq!(supersolution_check(&u, ell(1.0, 3.0)), 1.0);
        assert_eq!(supersolution_check(&u, ell(1.0, 100.0)), 1.0);
    }

    #[test]
    fn convex_quadratic_nowhere() {
        let u = GridFunction::sample(65, -1.0, 1.0, |x, y| 0.5 * (x * x + y * y)).unwrap();
        assert_eq!(supersolution_check(&u, ell(1.0, 3.0)), 0.0);
    }

    #[test]
    fn saddle_depends_on_ellipticity() {
        let u = GridFunction::sample(65, -1.0, 1.0, |x, y| 0.5 * (x * x - y * y)).unwrap();
        // pucci_minus = lambda - Lambda < 0 for (1, 3)
        assert_eq!(supersolution_check(&u, ell(1.0, 3.0)), 1.0);
        // equal constants make it harmonic: pucci = 0 within slack
        assert_eq!(supersolution_check(&u, ell(2.0, 2.0)), 1.0);
    }

    #[test]
    fn cone_passes_everywhere_including_origin() {
        let u = GridFunction::sample(129, -1.0, 1.0, |x, y| -(x * x + y * y).sqrt()).unwrap();
        for e in [ell(1.0, 1.5), ell(1.0, 3.0), ell(1.0, 10.0)] {
            assert_eq!(supersolution_check(&u, e), 1.0);
        }
    }
}
