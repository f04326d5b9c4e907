//! Two-sided bounds for the sharp Hessian integrability exponent of
//! viscosity supersolutions of the planar Pucci minimal equation.
//!
//! The crate has two layers:
//!
//! - [`ellipticity`]: the ellipticity pair `(λ, Λ)`, the Pucci minimal
//!   operator on 2×2 symmetric matrices, and the closed-form constants
//!   derived from the ellipticity ratio `τ = λ/Λ`.
//! - [`extremum`]: the scalar extremum problem whose value is the optimized
//!   lower bound for the exponent, together with the tangency system solver,
//!   the interpolated bound, and the aggregate [`extremum::BoundReport`].
//!
//! All operations are pure and deterministic; concurrent callers are safe.

pub mod ellipticity;
pub mod extremum;
pub mod scalar;

pub use ellipticity::{Ellipticity, EllipticityError, SymMatrix2};
pub use extremum::{
    bound_report, critical_function, interp_point, interp_point_with, lower_bound_interp,
    lower_bound_opt, m0, m0_maximizer, psi, solve_system, x0, x_c_closed_form, BoundReport,
    CriticalPoint, SolverError, DEFAULT_INTERP_EXPONENT,
};
