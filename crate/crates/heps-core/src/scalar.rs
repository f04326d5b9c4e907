//! Small scalar search kernels shared by the extremum solver.

/// `ln(1 − x)` through `ln_1p`, so the complement is never formed explicitly.
///
/// The maximizers of the critical function sit at `x ≈ 0.85–0.99`; forming
/// `1 − x` and taking a plain log there loses digits exactly where the
/// solver operates.
#[inline]
pub fn ln_one_minus(x: f64) -> f64 {
    (-x).ln_1p()
}

/// Golden-section search for the maximum of `f` on `[a, b]`.
///
/// Shrinks the bracket until its width drops below `tol` (or the evaluation
/// budget runs out) and returns the final bracket `(a, b)`.
pub fn golden_section_bracket(
    f: impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    tol: f64,
    max_evals: usize,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    const INV_PHI2: f64 = 1.0 - INV_PHI;

    let mut x1 = a + INV_PHI2 * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut evals = 2;

    while evals < max_evals && (b - a) > tol {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + INV_PHI2 * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        evals += 1;
    }
    (a, b)
}

/// Bisection for a sign change of `g` on `[a, b]`, assuming `g(a) > 0 > g(b)`
/// or `g(a) < 0 < g(b)`.
///
/// Runs until the bracket collapses to adjacent floats and returns the
/// midpoint. The caller guarantees the sign change.
pub fn bisect_sign_change(g: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut ga = g(a);
    if ga == 0.0 {
        return a;
    }
    loop {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            return mid;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if (gm > 0.0) == (ga > 0.0) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_one_minus_matches_direct_log() {
        for &x in &[1e-12, 0.1, 0.5, 0.9, 0.999999] {
            assert!((ln_one_minus(x) - (1.0 - x).ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn golden_brackets_parabola_peak() {
        let (a, b) = golden_section_bracket(|x| -(x - 0.3) * (x - 0.3), 0.0, 1.0, 1e-9, 200);
        assert!(a <= 0.3 && 0.3 <= b);
        assert!(b - a < 1e-8);
    }

    #[test]
    fn bisect_finds_root_to_ulp() {
        let r = bisect_sign_change(|x| x * x - 2.0, 1.0, 2.0);
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
        let r = bisect_sign_change(|x| 2.0 - x * x, 1.0, 2.0);
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }
}
