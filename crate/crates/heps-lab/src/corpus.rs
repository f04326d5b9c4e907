//! Analytic test fields with known curvature behavior.

use crate::error::LabError;
use crate::grid::GridFunction;
use std::fmt;
use std::str::FromStr;

/// Description of a corpus member, parseable from strings like
/// `quadratic(1)`, `cone`, `radial_power(1.5)`, or `perturbed_concave(42)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CorpusSpec {
    /// `−(a/2)|x|²`; curvature identically `a`.
    Quadratic(f64),
    /// A fixed affine function; curvature identically 0.
    Affine,
    /// `−|x|`; curvature `1/r`, level measures `π/t²`.
    Cone,
    /// `−|x|^β` for `β ∈ (1, 2)`; level measures decay like `t^{2/(β−2)}`.
    RadialPower(f64),
    /// `−|x|^σ` for `σ ∈ (0, 1)`; a supersolution for every ellipticity
    /// since `λσ(1−σ) − Λσ < 0`.
    RadialPowerSub(f64),
    /// `min(|x−p|², |x+p|²)` with `p = (0.3, 0)`; convex wells joined by a
    /// concave crease.
    DoubleWell,
    /// A gently curved concave paraboloid with seeded smooth ripples;
    /// Hessian stays negative definite.
    PerturbedConcave(u64),
}

pub fn corpus_names() -> &'static str {
    "quadratic(a), affine, cone, radial_power(beta in (1,2)), radial_power_sub(sigma in (0,1)), double_well, perturbed_concave(seed)"
}

impl fmt::Display for CorpusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusSpec::Quadratic(a) => write!(f, "quadratic({a})"),
            CorpusSpec::Affine => write!(f, "affine"),
            CorpusSpec::Cone => write!(f, "cone"),
            CorpusSpec::RadialPower(b) => write!(f, "radial_power({b})"),
            CorpusSpec::RadialPowerSub(s) => write!(f, "radial_power_sub({s})"),
            CorpusSpec::DoubleWell => write!(f, "double_well"),
            CorpusSpec::PerturbedConcave(s) => write!(f, "perturbed_concave({s})"),
        }
    }
}

impl FromStr for CorpusSpec {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, LabError> {
        let s = s.trim();
        let unknown = || LabError::UnknownCorpus {
            name: s.to_string(),
            valid: corpus_names().to_string(),
        };
        let (name, arg) = match s.find('(') {
            Some(open) if s.ends_with(')') => {
                (&s[..open], Some(s[open + 1..s.len() - 1].trim()))
            }
            Some(_) => return Err(unknown()),
            None => (s, None),
        };
        match (name, arg) {
            ("quadratic", Some(a)) => {
                let a: f64 = a.parse().map_err(|_| unknown())?;
                if a >= 0.0 && a.is_finite() {
                    Ok(CorpusSpec::Quadratic(a))
                } else {
                    Err(unknown())
                }
            }
            ("affine", None) => Ok(CorpusSpec::Affine),
            ("cone", None) => Ok(CorpusSpec::Cone),
            ("radial_power", Some(b)) => {
                let b: f64 = b.parse().map_err(|_| unknown())?;
                if b > 1.0 && b < 2.0 {
                    Ok(CorpusSpec::RadialPower(b))
                } else {
                    Err(unknown())
                }
            }
            ("radial_power_sub", Some(sg)) => {
                let sg: f64 = sg.parse().map_err(|_| unknown())?;
                if sg > 0.0 && sg < 1.0 {
                    Ok(CorpusSpec::RadialPowerSub(sg))
                } else {
                    Err(unknown())
                }
            }
            ("double_well", None) => Ok(CorpusSpec::DoubleWell),
            ("perturbed_concave", Some(seed)) => {
                let seed: u64 = seed.parse().map_err(|_| unknown())?;
                Ok(CorpusSpec::PerturbedConcave(seed))
            }
            _ => Err(unknown()),
        }
    }
}

/// Samples a corpus member on an `n × n` grid over `[lo, hi]²`.
pub fn corpus(spec: CorpusSpec, n: usize, lo: f64, hi: f64) -> Result<GridFunction, LabError> {
    match spec {
        CorpusSpec::Quadratic(a) => GridFunction::sample(n, lo, hi, move |x, y| {
            -0.5 * a * (x * x + y * y)
        }),
        CorpusSpec::Affine => GridFunction::sample(n, lo, hi, |x, y| 0.3 * x - 0.2 * y + 0.1),
        CorpusSpec::Cone => GridFunction::sample(n, lo, hi, |x, y| -(x * x + y * y).sqrt()),
        CorpusSpec::RadialPower(beta) => GridFunction::sample(n, lo, hi, move |x, y| {
            -(x * x + y * y).powf(0.5 * beta)
        }),
        CorpusSpec::RadialPowerSub(sigma) => GridFunction::sample(n, lo, hi, move |x, y| {
            -(x * x + y * y).powf(0.5 * sigma)
        }),
        CorpusSpec::DoubleWell => GridFunction::sample(n, lo, hi, |x, y| {
            let d1 = (x - 0.3) * (x - 0.3) + y * y;
            let d2 = (x + 0.3) * (x + 0.3) + y * y;
            d1.min(d2)
        }),
        CorpusSpec::PerturbedConcave(seed) => {
            // base curvature 0.2 with ripples of Hessian norm <= 0.1, so the
            // field stays strictly concave for any seed
            let mut rng = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1;
            let mut next = move || {
                rng ^= rng << 13;
                rng ^= rng >> 7;
                rng ^= rng << 17;
                (rng >> 11) as f64 / (1u64 << 53) as f64
            };
            let k1 = 2.0 + 2.0 * next();
            let k2 = 2.0 + 2.0 * next();
            let p1 = std::f64::consts::TAU * next();
            let p2 = std::f64::consts::TAU * next();
            let (e1, e2) = (0.05 / (k1 * k1), 0.05 / (k2 * k2));
            GridFunction::sample(n, lo, hi, move |x, y| {
                -0.1 * (x * x + y * y) - e1 * (k1 * x + p1).sin() - e2 * (k2 * y + p2).sin()
            })
        }
    }
}
