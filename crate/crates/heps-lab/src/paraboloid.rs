//! Paraboloids of prescribed opening.

/// `P(x) = −(a/2)|x|² + slope·x + intercept`, a paraboloid of opening `−a`.
///
/// Evaluation is plain arithmetic on the three stored fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Paraboloid {
    pub opening: f64,
    pub slope: [f64; 2],
    pub intercept: f64,
}

impl Paraboloid {
    #[inline]
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        -0.5 * self.opening * (x * x + y * y) + self.slope[0] * x + self.slope[1] * y
            + self.intercept
    }

    /// The paraboloid of the given opening tangent from below at `point` to
    /// a graph with the given value and gradient there.
    pub fn tangent_at(point: (f64, f64), value: f64, gradient: (f64, f64), opening: f64) -> Self {
        let (x0, y0) = point;
        let (gx, gy) = gradient;
        let slope = [gx + opening * x0, gy + opening * y0];
        let intercept = value - gx * x0 - gy * y0 - 0.5 * opening * (x0 * x0 + y0 * y0);
        Self {
            opening,
            slope,
            intercept,
        }
    }

    /// Vertical translate: slide the paraboloid up by `dz`.
    pub fn raised(mut self, dz: f64) -> Self {
        self.intercept += dz;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tangency_reproduces_value_and_gradient() {
        let p = Paraboloid::tangent_at((0.3, -0.4), 1.25, (0.7, -0.2), 2.0);
        assert!((p.eval(0.3, -0.4) - 1.25).abs() < 1e-12);
        // numeric gradient check
        let e = 1e-6;
        let gx = (p.eval(0.3 + e, -0.4) - p.eval(0.3 - e, -0.4)) / (2.0 * e);
        let gy = (p.eval(0.3, -0.4 + e) - p.eval(0.3, -0.4 - e)) / (2.0 * e);
        assert!((gx - 0.7).abs() < 1e-6);
        assert!((gy + 0.2).abs() < 1e-6);
    }

    #[test]
    fn raising_only_moves_the_intercept() {
        let p = Paraboloid {
            opening: 1.0,
            slope: [0.5, -0.5],
            intercept: 0.0,
        };
        let q = p.raised(0.75);
        assert_eq!(q.eval(0.2, 0.1) - p.eval(0.2, 0.1), 0.75);
    }
}
