//! Scalar fields on a uniform 2D grid over a box domain.

use crate::error::LabError;

/// A scalar field sampled on a uniform grid.
///
/// The represented domain is the closed box
/// `[xmin, xmin + (nx−1)h] × [ymin, ymin + (ny−1)h]`, with the same spacing
/// `h` along both axes. Values are stored row-major: index `iy·nx + ix`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    nx: usize,
    ny: usize,
    xmin: f64,
    ymin: f64,
    h: f64,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(
        nx: usize,
        ny: usize,
        xmin: f64,
        ymin: f64,
        h: f64,
        values: Vec<f64>,
    ) -> Result<Self, LabError> {
        if nx < 3 || ny < 3 {
            return Err(LabError::InvalidGrid(format!(
                "grid must be at least 3x3, got {nx}x{ny}"
            )));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(LabError::InvalidGrid(format!(
                "spacing must be positive, got {h}"
            )));
        }
        if !(xmin.is_finite() && ymin.is_finite()) {
            return Err(LabError::InvalidGrid("origin must be finite".into()));
        }
        if values.len() != nx * ny {
            return Err(LabError::InvalidGrid(format!(
                "expected {} values, got {}",
                nx * ny,
                values.len()
            )));
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(LabError::InvalidGrid(format!(
                "value at flat index {bad} is not finite"
            )));
        }
        Ok(Self {
            nx,
            ny,
            xmin,
            ymin,
            h,
            values,
        })
    }

    /// Samples `f(x, y)` on an `n × n` grid over `[lo, hi]²`.
    pub fn sample(
        n: usize,
        lo: f64,
        hi: f64,
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<Self, LabError> {
        if n < 3 || hi.partial_cmp(&lo) != Some(std::cmp::Ordering::Greater) {
            return Err(LabError::InvalidGrid(format!(
                "need n >= 3 and hi > lo, got n={n}, [{lo}, {hi}]"
            )));
        }
        let h = (hi - lo) / (n - 1) as f64;
        let mut values = Vec::with_capacity(n * n);
        for iy in 0..n {
            let y = lo + iy as f64 * h;
            for ix in 0..n {
                values.push(f(lo + ix as f64 * h, y));
            }
        }
        Self::new(n, n, lo, lo, h, values)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn xmin(&self) -> f64 {
        self.xmin
    }

    pub fn ymin(&self) -> f64 {
        self.ymin
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    #[inline]
    pub fn idx(&self, ix: usize, iy: usize) -> usize {
        iy * self.nx + ix
    }

    #[inline]
    pub fn at(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.nx + ix]
    }

    #[inline]
    pub fn x(&self, ix: usize) -> f64 {
        self.xmin + ix as f64 * self.h
    }

    #[inline]
    pub fn y(&self, iy: usize) -> f64 {
        self.ymin + iy as f64 * self.h
    }

    pub fn is_interior(&self, ix: usize, iy: usize) -> bool {
        ix >= 1 && iy >= 1 && ix + 1 < self.nx && iy + 1 < self.ny
    }

    /// Nearest node to a physical point, if it falls inside the box.
    pub fn nearest_node(&self, x: f64, y: f64) -> Option<(usize, usize)> {
        let fx = (x - self.xmin) / self.h;
        let fy = (y - self.ymin) / self.h;
        if fx < -0.5 || fy < -0.5 {
            return None;
        }
        let ix = fx.round() as usize;
        let iy = fy.round() as usize;
        if ix < self.nx && iy < self.ny {
            Some((ix, iy))
        } else {
            None
        }
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn range(&self) -> f64 {
        self.max_value() - self.min_value()
    }

    /// Returns a copy with `(a/2)|x|²` added at every node.
    pub fn plus_half_quadratic(&self, a: f64) -> Self {
        let mut out = self.clone();
        for iy in 0..self.ny {
            let y = self.y(iy);
            for ix in 0..self.nx {
                let x = self.x(ix);
                out.values[iy * self.nx + ix] += 0.5 * a * (x * x + y * y);
            }
        }
        out
    }

    /// Largest one-sided difference quotient magnitude over grid edges.
    pub fn max_slope(&self) -> f64 {
        let mut s: f64 = 0.0;
        for iy in 0..self.ny {
            for ix in 0..self.nx {
                let v = self.at(ix, iy);
                if ix + 1 < self.nx {
                    s = s.max((self.at(ix + 1, iy) - v).abs());
                }
                if iy + 1 < self.ny {
                    s = s.max((self.at(ix, iy + 1) - v).abs());
                }
            }
        }
        s / self.h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_undersized_and_nonfinite() {
        assert!(GridFunction::new(2, 3, 0.0, 0.0, 0.1, vec![0.0; 6]).is_err());
        assert!(GridFunction::new(3, 3, 0.0, 0.0, 0.0, vec![0.0; 9]).is_err());
        assert!(GridFunction::new(3, 3, 0.0, 0.0, 0.1, vec![0.0; 8]).is_err());
        let mut vals = vec![0.0; 9];
        vals[4] = f64::NAN;
        assert!(GridFunction::new(3, 3, 0.0, 0.0, 0.1, vals).is_err());
    }

    #[test]
    fn sample_and_coords() {
        let g = GridFunction::sample(5, -1.0, 1.0, |x, y| x + 10.0 * y).unwrap();
        assert_eq!(g.h(), 0.5);
        assert_eq!(g.at(0, 0), -11.0);
        assert_eq!(g.at(4, 0), -9.0);
        assert_eq!(g.at(2, 2), 0.0);
        assert_eq!(g.x(3), 0.5);
        assert!(g.is_interior(1, 1));
        assert!(!g.is_interior(0, 2));
    }

    #[test]
    fn nearest_node_rounds_and_bounds() {
        let g = GridFunction::sample(5, -1.0, 1.0, |_, _| 0.0).unwrap();
        assert_eq!(g.nearest_node(0.1, -0.1), Some((2, 2)));
        assert_eq!(g.nearest_node(0.26, 0.0), Some((3, 2)));
        assert_eq!(g.nearest_node(5.0, 0.0), None);
    }

    #[test]
    fn slope_of_linear_field() {
        let g = GridFunction::sample(9, -1.0, 1.0, |x, y| 3.0 * x - 2.0 * y).unwrap();
        assert!((g.max_slope() - 3.0).abs() < 1e-12);
    }
}
