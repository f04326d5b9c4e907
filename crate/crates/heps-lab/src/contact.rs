//! Contact sets of paraboloid envelopes.

use crate::envelope::a_envelope;
use crate::grid::GridFunction;

/// Contact detection threshold `(1+a)·h²/4`.
///
/// The envelope is exact to round-off, so the only genuine gap at a contact
/// node comes from the analytic tangency falling between nodes: with local
/// curvature scale `1+a` and worst offset `h/√2`, that gap is at most
/// `(1+a)h²/4`. Larger constants wash out the curvature function near kinks,
/// where the gap closes only quadratically in the opening.
pub fn contact_tol(a: f64, h: f64) -> f64 {
    0.25 * (1.0 + a) * h * h
}

/// The set of nodes where `u` admits a tangent paraboloid of opening `−a`
/// from below.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactSet {
    pub opening: f64,
    pub tol: f64,
    nx: usize,
    ny: usize,
    mask: Vec<bool>,
}

impl ContactSet {
    #[inline]
    pub fn at(&self, ix: usize, iy: usize) -> bool {
        self.mask[iy * self.nx + ix]
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    /// Number of masked nodes.
    pub fn count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// `h²` times the number of masked nodes.
    pub fn measure(&self, h: f64) -> f64 {
        h * h * self.count() as f64
    }

    pub fn is_subset_of(&self, other: &ContactSet) -> bool {
        self.mask
            .iter()
            .zip(other.mask.iter())
            .all(|(a, b)| !*a || *b)
    }
}

/// Computes the contact set `A_a(u)` as `{u − Γᵘₐ ≤ tol}` with the
/// discretization-scaled tolerance of [`contact_tol`].
pub fn contact_set(u: &GridFunction, a: f64) -> ContactSet {
    let env = a_envelope(u, a);
    contact_set_with_envelope(u, &env, a)
}

/// Same as [`contact_set`] when the envelope is already at hand.
pub fn contact_set_with_envelope(u: &GridFunction, env: &GridFunction, a: f64) -> ContactSet {
    let tol = contact_tol(a, u.h());
    let mask = u
        .values()
        .iter()
        .zip(env.values().iter())
        .map(|(uv, ev)| uv - ev <= tol)
        .collect();
    ContactSet {
        opening: a,
        tol,
        nx: u.nx(),
        ny: u.ny(),
        mask,
    }
}
