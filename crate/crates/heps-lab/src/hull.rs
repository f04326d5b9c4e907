//! Exact discrete convex envelopes on a lattice.
//!
//! The convex envelope of grid samples is the lower convex hull of the
//! lifted points `(ix, iy, z)`, evaluated back at every node. The hull is
//! built by randomized incremental insertion: a node strictly below the
//! current surface carves out the triangles it sees from below and is fanned
//! into their boundary; a node on or above the current surface can never
//! return to the final hull and is dropped on the spot.
//!
//! Lattice coordinates are integers, so every orientation test is exact in
//! `i64`; only the below-plane predicate involves the (arbitrary) values,
//! with a small value-space tolerance `eta` that merges coplanar points into
//! facets instead of splitting hairline slivers.

const NO_TRI: i32 = -1;

/// Values of the lower convex hull of `(ix, iy, z)` at every lattice node.
///
/// `z` is row-major with index `iy·nx + ix`; the result has the same layout
/// and satisfies `result ≤ z` pointwise with equality exactly on the contact
/// set of the envelope.
pub fn lower_hull_values(nx: usize, ny: usize, z: &[f64]) -> Vec<f64> {
    assert!(nx >= 2 && ny >= 2, "hull needs at least a 2x2 lattice");
    assert_eq!(z.len(), nx * ny);
    let mut hull = Hull::new(nx, ny, z);
    hull.run();
    hull.evaluate()
}

struct Hull<'a> {
    nx: usize,
    ny: usize,
    z: &'a [f64],
    eta: f64,
    tri_v: Vec<[u32; 3]>,
    tri_n: Vec<[i32; 3]>,
    alive: Vec<bool>,
    stamp: Vec<u32>,
    cur_stamp: u32,
    free: Vec<u32>,
    // intrusive pending-point lists: one head per triangle
    bucket_head: Vec<i32>,
    next_pt: Vec<i32>,
    where_is: Vec<i32>,
    // scratch
    dead: Vec<u32>,
    boundary: Vec<BoundaryEdge>,
    made: Vec<u32>,
    edge_map: Vec<(u64, u32, u8)>,
}

#[derive(Clone, Copy)]
struct BoundaryEdge {
    a: u32,
    b: u32,
    outside: i32,
    outside_edge: u8,
}

impl<'a> Hull<'a> {
    fn new(nx: usize, ny: usize, z: &'a [f64]) -> Self {
        let scale = z.iter().fold(0.0f64, |m, v| m.max(v.abs())) + 1.0;
        Self {
            nx,
            ny,
            z,
            eta: 1e-11 * scale,
            tri_v: Vec::new(),
            tri_n: Vec::new(),
            alive: Vec::new(),
            stamp: Vec::new(),
            cur_stamp: 0,
            free: Vec::new(),
            bucket_head: Vec::new(),
            next_pt: vec![NO_TRI; nx * ny],
            where_is: vec![NO_TRI; nx * ny],
            dead: Vec::new(),
            boundary: Vec::new(),
            made: Vec::new(),
            edge_map: Vec::new(),
        }
    }

    #[inline]
    fn px(&self, p: u32) -> i64 {
        (p as usize % self.nx) as i64
    }

    #[inline]
    fn py(&self, p: u32) -> i64 {
        (p as usize / self.nx) as i64
    }

    #[inline]
    fn orient(&self, a: u32, b: u32, c: u32) -> i64 {
        let (ax, ay) = (self.px(a), self.py(a));
        (self.px(b) - ax) * (self.py(c) - ay) - (self.py(b) - ay) * (self.px(c) - ax)
    }

    /// Is the lifted point `p` strictly below the plane of triangle `t`?
    fn conflict(&self, t: u32, p: u32) -> bool {
        let [a, b, c] = self.tri_v[t as usize];
        let wa = self.orient(p, b, c) as f64;
        let wb = self.orient(a, p, c) as f64;
        let wc = self.orient(a, b, p) as f64;
        let w = self.orient(a, b, c) as f64;
        debug_assert!(w > 0.0);
        let plane_scaled = wa * self.z[a as usize] + wb * self.z[b as usize] + wc * self.z[c as usize];
        plane_scaled - self.z[p as usize] * w > self.eta * w
    }

    fn contains(&self, t: u32, p: u32) -> bool {
        let [a, b, c] = self.tri_v[t as usize];
        self.orient(a, b, p) >= 0 && self.orient(b, c, p) >= 0 && self.orient(c, a, p) >= 0
    }

    fn alloc(&mut self, v: [u32; 3], n: [i32; 3]) -> u32 {
        if let Some(id) = self.free.pop() {
            self.tri_v[id as usize] = v;
            self.tri_n[id as usize] = n;
            self.alive[id as usize] = true;
            self.stamp[id as usize] = 0;
            self.bucket_head[id as usize] = NO_TRI;
            id
        } else {
            self.tri_v.push(v);
            self.tri_n.push(n);
            self.alive.push(true);
            self.stamp.push(0);
            self.bucket_head.push(NO_TRI);
            (self.tri_v.len() - 1) as u32
        }
    }

    fn push_point(&mut self, t: u32, p: u32) {
        self.next_pt[p as usize] = self.bucket_head[t as usize];
        self.bucket_head[t as usize] = p as i32;
        self.where_is[p as usize] = t as i32;
    }

    fn run(&mut self) {
        let (nx, ny) = (self.nx, self.ny);
        let c00 = 0u32;
        let c10 = (nx - 1) as u32;
        let c01 = ((ny - 1) * nx) as u32;
        let c11 = (ny * nx - 1) as u32;

        // Split the rectangle along the diagonal whose chord is lower, so
        // the two seed triangles already form the hull of the four corners.
        let (t0v, t1v, t0n, t1n);
        if self.z[c00 as usize] + self.z[c11 as usize]
            <= self.z[c10 as usize] + self.z[c01 as usize]
        {
            t0v = [c00, c10, c11];
            t1v = [c00, c11, c01];
            t0n = [NO_TRI, NO_TRI, 1];
            t1n = [0, NO_TRI, NO_TRI];
        } else {
            t0v = [c00, c10, c01];
            t1v = [c10, c11, c01];
            t0n = [NO_TRI, 1, NO_TRI];
            t1n = [NO_TRI, NO_TRI, 0];
        }
        self.alloc(t0v, t0n);
        self.alloc(t1v, t1n);

        // Seed buckets; anything already on or above the corner hull is
        // permanently redundant.
        let total = (nx * ny) as u32;
        let mut order = Vec::with_capacity(nx * ny);
        for p in 0..total {
            if p == c00 || p == c10 || p == c01 || p == c11 {
                self.where_is[p as usize] = NO_TRI;
                continue;
            }
            let t = if self.contains(0, p) { 0 } else { 1 };
            debug_assert!(self.contains(t, p));
            if self.conflict(t, p) {
                self.push_point(t, p);
                order.push(p);
            } else {
                self.where_is[p as usize] = NO_TRI;
            }
        }

        shuffle(&mut order, 0x8ca9_4f3b_1c6d_25e7);
        for &p in &order {
            if self.where_is[p as usize] >= 0 {
                self.insert(p);
            }
        }
    }

    fn insert(&mut self, p: u32) {
        let start = self.where_is[p as usize] as u32;
        debug_assert!(self.alive[start as usize]);
        debug_assert!(self.conflict(start, p), "bucket invariant broken");

        self.cur_stamp += 1;
        let stamp = self.cur_stamp;
        self.dead.clear();
        self.dead.push(start);
        self.stamp[start as usize] = stamp;
        let mut head = 0;
        while head < self.dead.len() {
            let t = self.dead[head];
            head += 1;
            for k in 0..3 {
                let o = self.tri_n[t as usize][k];
                if o >= 0 && self.stamp[o as usize] != stamp && self.conflict(o as u32, p) {
                    self.stamp[o as usize] = stamp;
                    self.dead.push(o as u32);
                }
            }
        }

        // Boundary walk. A neighbor that survived the conflict test but whose
        // shared edge runs through p cannot support a fan triangle; absorb it
        // into the cavity and walk again.
        'walk: loop {
            self.boundary.clear();
            for di in 0..self.dead.len() {
                let t = self.dead[di];
                let v = self.tri_v[t as usize];
                for k in 0..3 {
                    let o = self.tri_n[t as usize][k];
                    if o >= 0 && self.stamp[o as usize] == stamp {
                        continue; // interior cavity edge
                    }
                    let a = v[k];
                    let b = v[(k + 1) % 3];
                    if o >= 0 && self.orient(a, b, p) == 0 {
                        self.stamp[o as usize] = stamp;
                        self.dead.push(o as u32);
                        continue 'walk;
                    }
                    let outside_edge = if o >= 0 {
                        let ov = self.tri_v[o as usize];
                        (0..3)
                            .find(|&j| ov[j] == b && ov[(j + 1) % 3] == a)
                            .expect("neighbor links out of sync") as u8
                    } else {
                        0
                    };
                    self.boundary.push(BoundaryEdge {
                        a,
                        b,
                        outside: o,
                        outside_edge,
                    });
                }
            }
            break;
        }

        // Fan the cavity boundary from p.
        self.made.clear();
        self.edge_map.clear();
        for bi in 0..self.boundary.len() {
            let e = self.boundary[bi];
            let or2 = self.orient(e.a, e.b, p);
            if or2 == 0 {
                // p splits a border edge of the rectangle; the sub-edges
                // stay border edges of the adjacent fan triangles.
                debug_assert_eq!(e.outside, NO_TRI);
                continue;
            }
            debug_assert!(or2 > 0, "cavity boundary is not star-shaped");
            let id = self.alloc([e.a, e.b, p], [e.outside, NO_TRI, NO_TRI]);
            if e.outside >= 0 {
                self.tri_n[e.outside as usize][e.outside_edge as usize] = id as i32;
            }
            self.made.push(id);
            // link edges (b, p) and (p, a) against already-made fan triangles
            for (edge_idx, (u, w)) in [(1u8, (e.b, p)), (2u8, (p, e.a))] {
                let key = undirected_key(u, w);
                if let Some(pos) = self.edge_map.iter().position(|&(k, _, _)| k == key) {
                    let (_, other, other_edge) = self.edge_map.swap_remove(pos);
                    self.tri_n[id as usize][edge_idx as usize] = other as i32;
                    self.tri_n[other as usize][other_edge as usize] = id as i32;
                } else {
                    self.edge_map.push((key, id, edge_idx));
                }
            }
        }

        // Redistribute pending points of the cavity into the fan; points on
        // or above their new carrier plane are dropped for good.
        self.where_is[p as usize] = NO_TRI;
        for di in 0..self.dead.len() {
            let t = self.dead[di];
            let mut q = self.bucket_head[t as usize];
            self.bucket_head[t as usize] = NO_TRI;
            while q >= 0 {
                let next = self.next_pt[q as usize];
                if q as u32 != p {
                    let qq = q as u32;
                    let host = self
                        .made
                        .iter()
                        .copied()
                        .find(|&f| self.contains(f, qq))
                        .expect("cavity point escaped the fan");
                    if self.conflict(host, qq) {
                        self.push_point(host, qq);
                    } else {
                        self.where_is[q as usize] = NO_TRI;
                    }
                }
                q = next;
            }
        }
        for di in 0..self.dead.len() {
            let t = self.dead[di];
            self.alive[t as usize] = false;
            self.free.push(t);
        }
    }

    /// Rasterizes every hull facet back onto the lattice. Facet planes of a
    /// convex surface never exceed the surface, so the per-node maximum over
    /// claiming facets is exactly the hull value.
    fn evaluate(&self) -> Vec<f64> {
        let (nx, ny) = (self.nx, self.ny);
        let mut env = vec![f64::NEG_INFINITY; nx * ny];
        for t in 0..self.tri_v.len() {
            if !self.alive[t] {
                continue;
            }
            let [a, b, c] = self.tri_v[t];
            let w = self.orient(a, b, c) as f64;
            let (za, zb, zc) = (self.z[a as usize], self.z[b as usize], self.z[c as usize]);
            let pts = [
                (self.px(a), self.py(a)),
                (self.px(b), self.py(b)),
                (self.px(c), self.py(c)),
            ];
            let ymin = pts.iter().map(|p| p.1).min().unwrap();
            let ymax = pts.iter().map(|p| p.1).max().unwrap();
            for iy in ymin..=ymax {
                // conservative x-span of the triangle at this row
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for e in 0..3 {
                    let (x1, y1) = pts[e];
                    let (x2, y2) = pts[(e + 1) % 3];
                    if y1 == iy {
                        lo = lo.min(x1 as f64);
                        hi = hi.max(x1 as f64);
                    }
                    if (y1 < iy && y2 >= iy) || (y2 < iy && y1 >= iy) {
                        let x = x1 as f64
                            + (x2 - x1) as f64 * (iy - y1) as f64 / (y2 - y1) as f64;
                        lo = lo.min(x);
                        hi = hi.max(x);
                    }
                }
                if lo > hi {
                    continue;
                }
                let x_lo = ((lo.floor() as i64) - 1).max(0);
                let x_hi = ((hi.ceil() as i64) + 1).min(nx as i64 - 1);
                for ix in x_lo..=x_hi {
                    let q = (iy as usize) * nx + ix as usize;
                    let qi = q as u32;
                    let wa = self.orient(qi, b, c);
                    if wa < 0 {
                        continue;
                    }
                    let wb = self.orient(a, qi, c);
                    if wb < 0 {
                        continue;
                    }
                    let wc = self.orient(a, b, qi);
                    if wc < 0 {
                        continue;
                    }
                    let val = (wa as f64 * za + wb as f64 * zb + wc as f64 * zc) / w;
                    if val > env[q] {
                        env[q] = val;
                    }
                }
            }
        }
        for (e, &v) in env.iter_mut().zip(self.z.iter()) {
            debug_assert!(e.is_finite(), "node missed by every facet");
            if *e > v {
                *e = v;
            }
        }
        env
    }
}

#[inline]
fn undirected_key(u: u32, w: u32) -> u64 {
    let (lo, hi) = if u < w { (u, w) } else { (w, u) };
    ((hi as u64) << 32) | lo as u64
}

#[allow(clippy::needless_range_loop)]
fn shuffle(items: &mut [u32], seed: u64) {
    let mut state = seed;
    let mut next = move || {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut x = state;
        x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        x ^ (x >> 31)
    };
    for i in (1..items.len()).rev() {
        let j = (next() % (i as u64 + 1)) as usize;
        items.swap(i, j);
    }
}
