//! Quadratic inf-convolution (Moreau-type regularization).

use crate::grid::GridFunction;

/// The discrete lower envelope `u_m(x) = min over nodes y of u(y) + m|y−x|²`.
///
/// Separable in the two axes, so it reduces to two passes of the linear-time
/// lower envelope of parabolas along rows and columns. Exact on the grid:
/// `u_m ≤ u` pointwise and `u_m` is nondecreasing in `m`.
pub fn inf_convolution(u: &GridFunction, m: f64) -> GridFunction {
    assert!(m > 0.0 && m.is_finite(), "regularization weight must be positive");
    let (nx, ny) = (u.nx(), u.ny());
    let weight = m * u.h() * u.h(); // parabola coefficient in index units

    let mut out = u.clone();
    let mut line = vec![0.0; nx.max(ny)];
    let mut result = vec![0.0; nx.max(ny)];
    let mut envelope = Envelope::new(nx.max(ny));

    // rows
    for iy in 0..ny {
        let row = &mut out.values_mut()[iy * nx..(iy + 1) * nx];
        line[..nx].copy_from_slice(row);
        envelope.transform(&line[..nx], weight, &mut result[..nx]);
        row.copy_from_slice(&result[..nx]);
    }
    // columns
    for ix in 0..nx {
        for (iy, slot) in line[..ny].iter_mut().enumerate() {
            *slot = out.values()[iy * nx + ix];
        }
        envelope.transform(&line[..ny], weight, &mut result[..ny]);
        for (iy, v) in result[..ny].iter().enumerate() {
            out.values_mut()[iy * nx + ix] = *v;
        }
    }
    out
}

/// Lower envelope of the parabolas `f(q) + w·(x − q)²` over integer `q`.
struct Envelope {
    hull: Vec<usize>,
    boundary: Vec<f64>,
}

impl Envelope {
    fn new(n: usize) -> Self {
        Self {
            hull: Vec::with_capacity(n),
            boundary: Vec::with_capacity(n + 1),
        }
    }

    fn transform(&mut self, f: &[f64], w: f64, out: &mut [f64]) {
        let n = f.len();
        self.hull.clear();
        self.boundary.clear();
        self.hull.push(0);
        self.boundary.push(f64::NEG_INFINITY);
        self.boundary.push(f64::INFINITY);

        // intersection abscissa of parabolas rooted at p and q (p < q)
        let cross = |p: usize, q: usize| -> f64 {
            let (pf, qf) = (f[p], f[q]);
            let (pq, qq) = (p as f64, q as f64);
            ((qf + w * qq * qq) - (pf + w * pq * pq)) / (2.0 * w * (qq - pq))
        };

        for q in 1..n {
            let mut s = cross(*self.hull.last().unwrap(), q);
            while self.hull.len() > 1 && s <= self.boundary[self.hull.len() - 1] {
                self.hull.pop();
                self.boundary.pop();
                s = cross(*self.hull.last().unwrap(), q);
            }
            self.hull.push(q);
            self.boundary.pop();
            self.boundary.push(s);
            self.boundary.push(f64::INFINITY);
        }

        let mut k = 0;
        for (x, slot) in out.iter_mut().enumerate() {
            let xf = x as f64;
            while self.boundary[k + 1] < xf {
                k += 1;
            }
            let root = self.hull[k] as f64;
            *slot = f[self.hull[k]] + w * (xf - root) * (xf - root);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cone_shifts_down_by_quarter_m() {
        let m = 4.0;
        let u = GridFunction::sample(257, -1.0, 1.0, |x, y| -(x * x + y * y).sqrt()).unwrap();
        let um = inf_convolution(&u, m);
        // nodes with |x| >= 1/(2m) and the vertex map interior
        for &(ix, iy) in &[(160usize, 128usize), (128, 200), (90, 90)] {
            let x = u.x(ix);
            let y = u.y(iy);
            let r = (x * x + y * y).sqrt();
            assert!(r >= 1.0 / (2.0 * m));
            let expect = -r - 1.0 / (4.0 * m);
            let got = um.at(ix, iy);
            assert!((got - expect).abs() < 2.0 * u.h(), "({ix},{iy}): {got} vs {expect}");
        }
    }

    #[test]
    fn quadratic_contracts_by_moreau_factor() {
        // u = |x|^2/2: u_m = (m/(m + 1/2)) u wherever the proximal point is interior
        let m = 2.0;
        let u = GridFunction::sample(129, -1.0, 1.0, |x, y| 0.5 * (x * x + y * y)).unwrap();
        let um = inf_convolution(&u, m);
        let factor = 2.0 * m / (2.0 * m + 1.0);
        for &(ix, iy) in &[(64usize, 64usize), (80, 60), (48, 70)] {
            let expect = factor * u.at(ix, iy);
            let got = um.at(ix, iy);
            assert!((got - expect).abs() < 1e-3, "({ix},{iy}): {got} vs {expect}");
        }
    }

    #[test]
    fn huge_weight_is_near_identity() {
        let u = GridFunction::sample(65, -1.0, 1.0, |x, y| -(x * x + y * y).sqrt()).unwrap();
        let um = inf_convolution(&u, 1e8);
        // Lip(u) = 1, so the drop is at most 1/(4m) + O(h) resolution effects
        for (a, b) in um.values().iter().zip(u.values().iter()) {
            assert!(*a <= *b + 1e-12);
            assert!(b - a <= 1.0 / (4.0 * 1e8) + 1e-9);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn ordered_in_weight_and_minorant(seed in 0u64..1000) {
            let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15) | 1;
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
            };
            let n = 17;
            let vals: Vec<f64> = (0..n * n).map(|_| next()).collect();
            let u = GridFunction::new(n, n, -1.0, -1.0, 2.0 / (n as f64 - 1.0), vals).unwrap();
            let u1 = inf_convolution(&u, 1.0);
            let u2 = inf_convolution(&u, 5.0);
            for ((a, b), c) in u1.values().iter().zip(u2.values()).zip(u.values()) {
                prop_assert!(*a <= *b + 1e-12);
                prop_assert!(*b <= *c + 1e-12);
            }
        }
    }
}
