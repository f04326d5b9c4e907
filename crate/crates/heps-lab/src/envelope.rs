//! Convex and paraboloid envelopes of grid functions.

use crate::grid::GridFunction;
use crate::hull::lower_hull_values;

/// The discrete convex envelope: the largest convex minorant of `v` over
/// the grid, i.e. the biconjugate of the sampled function.
///
/// Computed exactly as the lower convex hull of the lifted samples, so the
/// output is ≤ `v` pointwise, idempotent, and equals `v` wherever `v` is
/// convex. Because the lattice-to-box map is affine, hull values in index
/// space coincide with envelope values in physical space.
pub fn convex_envelope(v: &GridFunction) -> GridFunction {
    let env = lower_hull_values(v.nx(), v.ny(), v.values());
    let mut out = v.clone();
    out.values_mut().copy_from_slice(&env);
    out
}

/// The `a`-paraboloid envelope `Γᵘₐ`: the supremum of all paraboloids of
/// opening `−a` lying below `u`.
///
/// Uses the scaling identity `Γᵘₐ = conv(u + (a/2)|x|²) − (a/2)|x|²`, with
/// `a = 0` recovering the plain convex envelope.
pub fn a_envelope(u: &GridFunction, a: f64) -> GridFunction {
    assert!(a >= 0.0 && a.is_finite(), "opening must be nonnegative");
    if a == 0.0 {
        return convex_envelope(u);
    }
    let shifted = u.plus_half_quadratic(a);
    let mut out = convex_envelope(&shifted);
    let (nx, ny, h) = (u.nx(), u.ny(), u.h());
    for iy in 0..ny {
        let y = u.y(iy);
        for ix in 0..nx {
            let x = u.xmin() + ix as f64 * h;
            out.values_mut()[iy * nx + ix] -= 0.5 * a * (x * x + y * y);
        }
    }
    out
}
