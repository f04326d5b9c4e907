//! Ellipticity data and the planar Pucci minimal operator.

use thiserror::Error;

/// Relative cutoff below which an eigenvalue is treated as zero when the
/// Pucci operators split the spectrum by sign.
const EIGEN_ZERO_REL: f64 = 1e-14;

#[derive(Debug, Error, PartialEq)]
pub enum EllipticityError {
    #[error("ellipticity constants must satisfy 0 < lambda <= Lambda, got lambda={lambda}, Lambda={big_lambda}")]
    InvalidPair { lambda: f64, big_lambda: f64 },
    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(u32),
}

/// An ellipticity pair `0 < λ ≤ Λ`.
///
/// The degenerate case `λ = Λ` is admitted; it corresponds to ratio `τ = 1`
/// and makes every bound collapse to the exact exponent 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipticity {
    lambda: f64,
    big_lambda: f64,
}

impl Ellipticity {
    pub fn new(lambda: f64, big_lambda: f64) -> Result<Self, EllipticityError> {
        if !(lambda.is_finite() && big_lambda.is_finite()) || lambda <= 0.0 || lambda > big_lambda
        {
            return Err(EllipticityError::InvalidPair { lambda, big_lambda });
        }
        Ok(Self { lambda, big_lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn big_lambda(&self) -> f64 {
        self.big_lambda
    }

    /// Ellipticity ratio `τ = λ/Λ ∈ (0, 1]`.
    pub fn tau(&self) -> f64 {
        self.lambda / self.big_lambda
    }

    /// Builds the pair `(τ, 1)` from a ratio in `(0, 1]`.
    pub fn from_tau(tau: f64) -> Result<Self, EllipticityError> {
        Self::new(tau, 1.0)
    }

    /// The measure-decay constant `c(λ, Λ) = [1 + (Λ/λ)(1 − λ/Λ)²/4]⁻¹`.
    ///
    /// Algebraically equal to `4τ/(1+τ)²`, which is the form evaluated here;
    /// it is exact at `τ = 1` and stable as `τ → 0`. Clamped to 1 so ratios
    /// within a few ulps of 1 cannot round the constant past its range.
    pub fn c(&self) -> f64 {
        let tau = self.tau();
        (4.0 * tau / ((1.0 + tau) * (1.0 + tau))).min(1.0)
    }

    /// The universal upper bound `2/(Λ/λ + 1)` for the exponent in the plane.
    pub fn upper_bound_ass(&self) -> f64 {
        let tau = self.tau();
        2.0 * tau / (1.0 + tau)
    }

    /// The sharpened `n`-dimensional upper bound `n/((n−1)Λ/λ + 1)`, `n ≥ 2`.
    ///
    /// For `n = 2` this coincides with [`Self::upper_bound_ass`].
    pub fn upper_bound_ndim(&self, n: u32) -> Result<f64, EllipticityError> {
        if n < 2 {
            return Err(EllipticityError::InvalidDimension(n));
        }
        let r = self.big_lambda / self.lambda;
        Ok(n as f64 / ((n - 1) as f64 * r + 1.0))
    }

    /// Pucci minimal operator `M⁻(M) = λ·Σ eig⁺ + Λ·Σ eig⁻`.
    ///
    /// Equals the infimum of `Trace(AM)` over symmetric `A` with eigenvalues
    /// in `[λ, Λ]`. Eigenvalues of magnitude below `1e-14` times the matrix
    /// max-norm are treated as zero so round-off cannot flip their weight.
    pub fn pucci_minus(&self, m: SymMatrix2) -> f64 {
        let (e1, e2) = m.eigenvalues();
        let cut = EIGEN_ZERO_REL * m.max_norm();
        let weight = |e: f64| {
            if e.abs() <= cut {
                0.0
            } else if e > 0.0 {
                self.lambda * e
            } else {
                self.big_lambda * e
            }
        };
        weight(e1) + weight(e2)
    }

    /// Pucci maximal operator `M⁺(M) = Λ·Σ eig⁺ + λ·Σ eig⁻`.
    pub fn pucci_plus(&self, m: SymMatrix2) -> f64 {
        let (e1, e2) = m.eigenvalues();
        let cut = EIGEN_ZERO_REL * m.max_norm();
        let weight = |e: f64| {
            if e.abs() <= cut {
                0.0
            } else if e > 0.0 {
                self.big_lambda * e
            } else {
                self.lambda * e
            }
        };
        weight(e1) + weight(e2)
    }
}

/// A real symmetric 2×2 matrix, stored by its three independent entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymMatrix2 {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
}

impl SymMatrix2 {
    pub fn new(a11: f64, a12: f64, a22: f64) -> Self {
        Self { a11, a12, a22 }
    }

    pub fn identity() -> Self {
        Self::new(1.0, 0.0, 1.0)
    }

    pub fn diag(d1: f64, d2: f64) -> Self {
        Self::new(d1, 0.0, d2)
    }

    pub fn trace(&self) -> f64 {
        self.a11 + self.a22
    }

    pub fn max_norm(&self) -> f64 {
        self.a11.abs().max(self.a12.abs()).max(self.a22.abs())
    }

    /// Eigenvalues by the closed 2×2 formula, returned as `(min, max)`.
    ///
    /// `mean ± sqrt((half-difference)² + a12²)`; deterministic and exact up
    /// to floating round-off, never iterative.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let mean = 0.5 * (self.a11 + self.a22);
        let half_diff = 0.5 * (self.a11 - self.a22);
        let disc = (half_diff * half_diff + self.a12 * self.a12).sqrt();
        (mean - disc, mean + disc)
    }
}
