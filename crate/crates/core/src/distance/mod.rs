//! Connes distances between the points of a finite commutative space, with closed forms.

pub mod closed;
pub mod lmi;
pub mod mnc;

use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{c, opnorm, CMatrix, I};

pub use closed::{chain_uniform, deltas_from_distances, distance_chain4, distance_three_point};
pub use mnc::{distance_mn_plus_c, distance_mn_plus_c_numeric, McState};

/// Blocks of norm below this are treated as missing links.
pub const LINK_THRESHOLD: f64 = 1e-14;

/// Points 0..N with Hilbert blocks of size `sizes[i]` and a Hermitian Δ with zero diagonal blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceProblem {
    pub sizes: Vec<usize>,
    pub delta: CMatrix,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct DistanceResult {
    pub value: f64,
    pub finite: bool,
    /// x* with x*_i − x*_j = value and ‖[Δ, x*]‖ ≤ 1.
    pub certificate: Vec<f64>,
    pub iterations: usize,
    pub constraint_norm: f64,
    pub gap: f64,
}

impl DistanceProblem {
    pub fn new(sizes: Vec<usize>, delta: CMatrix) -> Result<Self> {
        let p = Self { sizes, delta };
        p.validate()?;
        Ok(p)
    }

    /// One-dimensional points with the given N×N matrix of couplings.
    pub fn scalar(delta: CMatrix) -> Result<Self> {
        Self::new(vec![1; delta.nrows()], delta)
    }

    /// Real symmetric couplings from the upper triangle, e.g. `[(0, 1, Δ01), ...]`.
    pub fn from_links(n: usize, links: &[(usize, usize, f64)]) -> Result<Self> {
        let mut d = CMatrix::zeros(n, n);
        for &(i, j, v) in links {
            if i >= n || j >= n {
                return Err(Error::input("links", format!("point index out of range 0..{n}")));
            }
            d[(i, j)] = c(v, 0.0);
            d[(j, i)] = c(v, 0.0);
        }
        Self::scalar(d)
    }

    pub fn npoints(&self) -> usize {
        self.sizes.len()
    }

    pub fn offset(&self, i: usize) -> usize {
        self.sizes[..i].iter().sum()
    }

    pub fn block(&self, i: usize, j: usize) -> CMatrix {
        self.delta.view((self.offset(i), self.offset(j)), (self.sizes[i], self.sizes[j])).into_owned()
    }

    pub fn set_block(&mut self, i: usize, j: usize, b: &CMatrix) {
        let (oi, oj) = (self.offset(i), self.offset(j));
        self.delta.view_mut((oi, oj), (self.sizes[i], self.sizes[j])).copy_from(b);
        self.delta.view_mut((oj, oi), (self.sizes[j], self.sizes[i])).copy_from(&b.adjoint());
    }

    pub fn validate(&self) -> Result<()> {
        let n: usize = self.sizes.iter().sum();
        if self.sizes.iter().any(|&s| s == 0) {
            return Err(Error::input("sizes", "every point needs a nonempty block"));
        }
        if self.delta.nrows() != n || self.delta.ncols() != n {
            return Err(Error::input("delta", format!("expected a {n}x{n} matrix")));
        }
        if self.delta.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::input("delta", "non-finite entry"));
        }
        let herm = crate::linalg::frob(&(&self.delta - self.delta.adjoint()));
        if herm > 1e-12 * crate::linalg::frob(&self.delta).max(1.0) {
            return Err(Error::input("delta", "Delta must be Hermitian"));
        }
        for i in 0..self.npoints() {
            if self.block(i, i).iter().any(|z| z.norm() > 0.0) {
                return Err(Error::input(format!("delta[{i}][{i}]"), "diagonal block must vanish"));
            }
        }
        Ok(())
    }

    pub fn link_norm(&self, i: usize, j: usize) -> f64 {
        let v = opnorm(&self.block(i, j));
        if v < LINK_THRESHOLD {
            0.0
        } else {
            v
        }
    }

    /// Connected component labels of the link graph.
    pub fn components(&self) -> Vec<usize> {
        let n = self.npoints();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            label[s] = next;
            while let Some(u) = stack.pop() {
                for v in 0..n {
                    if label[v] == usize::MAX && self.link_norm(u, v) > 0.0 {
                        label[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// i[Δ, P_k] for the projector P_k onto point k.
    fn generator(&self, k: usize) -> CMatrix {
        let n = self.delta.nrows();
        let (o, s) = (self.offset(k), self.sizes[k]);
        let mut p = CMatrix::zeros(n, n);
        for a in o..o + s {
            p[(a, a)] = c(1.0, 0.0);
        }
        (&self.delta * &p - &p * &self.delta) * I
    }
}

/// sup x_i − x_j over real x with ‖[Δ, x]‖ ≤ 1.
pub fn distance_numeric(p: &DistanceProblem, i: usize, j: usize, tol: f64) -> Result<DistanceResult> {
    p.validate()?;
    if !(tol > 0.0 && tol <= 1e-3) {
        return Err(Error::input("tol", "tolerance must lie in (0, 1e-3]"));
    }
    let n = p.npoints();
    if i >= n || j >= n {
        return Err(Error::input("pair", format!("point index out of range 0..{n}")));
    }
    if i == j {
        return Ok(DistanceResult {
            value: 0.0,
            finite: true,
            certificate: vec![0.0; n],
            iterations: 0,
            constraint_norm: 0.0,
            gap: 0.0,
        });
    }
    let comp = p.components();
    if comp[i] != comp[j] {
        return Ok(DistanceResult {
            value: f64::INFINITY,
            finite: false,
            certificate: vec![],
            iterations: 0,
            constraint_norm: 0.0,
            gap: 0.0,
        });
    }
    // only the component of i and j matters; x_j is pinned to 0
    let mut pts: Vec<usize> = (0..n).filter(|&k| comp[k] == comp[i] && k != j).collect();
    pts.sort();
    let mut sub = p.clone();
    for a in 0..n {
        for b in 0..n {
            if a != b && p.link_norm(a, b) == 0.0 {
                let z = CMatrix::zeros(p.sizes[a], p.sizes[b]);
                sub.set_block(a, b, &z);
            }
        }
    }
    let gens: Vec<CMatrix> = pts.iter().map(|&k| sub.generator(k)).collect();
    let cvec: Vec<f64> = pts.iter().map(|&k| if k == i { 1.0 } else { 0.0 }).collect();
    let sol = lmi::maximize_linear(&gens, &cvec, tol);
    let mut x = vec![0.0; n];
    for (idx, &k) in pts.iter().enumerate() {
        x[k] = sol.v[idx];
    }
    let norm = opnorm(&sub.commutator_with(&x));
    Ok(DistanceResult {
        value: sol.value,
        finite: true,
        certificate: x,
        iterations: sol.iterations,
        constraint_norm: norm,
        gap: sol.gap,
    })
}

impl DistanceProblem {
    /// [Δ, x] for x acting as x_k on block k.
    pub fn commutator_with(&self, x: &[f64]) -> CMatrix {
        let mut d = self.delta.clone();
        for a in 0..self.npoints() {
            for b in 0..self.npoints() {
                let f = x[b] - x[a];
                let (oa, ob) = (self.offset(a), self.offset(b));
                for r in 0..self.sizes[a] {
                    for s in 0..self.sizes[b] {
                        d[(oa + r, ob + s)] *= f;
                    }
                }
            }
        }
        d
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct GeodesicBound {
    pub length: f64,
    pub connected: bool,
    pub path: Vec<usize>,
}

#[derive(PartialEq)]
struct Entry(f64, usize);
impl Eq for Entry {}
impl PartialOrd for Entry {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Entry {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        o.0.total_cmp(&self.0).then(o.1.cmp(&self.1))
    }
}

/// Shortest path in the link graph with edge length 1/‖Δ_ab‖.
pub fn geodesic_bound(p: &DistanceProblem, i: usize, j: usize) -> GeodesicBound {
    let n = p.npoints();
    let mut dist = vec![f64::INFINITY; n];
    let mut prev = vec![usize::MAX; n];
    let mut heap = BinaryHeap::new();
    dist[i] = 0.0;
    heap.push(Entry(0.0, i));
    while let Some(Entry(d, u)) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for v in 0..n {
            let w = p.link_norm(u, v);
            if w > 0.0 && d + 1.0 / w < dist[v] {
                dist[v] = d + 1.0 / w;
                prev[v] = u;
                heap.push(Entry(dist[v], v));
            }
        }
    }
    let mut path = vec![];
    if dist[j].is_finite() {
        let mut u = j;
        while u != usize::MAX {
            path.push(u);
            u = prev[u];
        }
        path.reverse();
    }
    GeodesicBound { length: dist[j], connected: dist[j].is_finite(), path }
}

/// N points on a line, Δ tridiagonal with blocks [[0, 1/L], [0, 0]].
pub fn lattice_dirac(n: usize, l: f64) -> Result<DistanceProblem> {
    if n < 2 {
        return Err(Error::input("N", "need at least two points"));
    }
    if !(l > 0.0) {
        return Err(Error::input("L", "lattice spacing must be positive"));
    }
    let mut p = DistanceProblem { sizes: vec![2; n], delta: CMatrix::zeros(2 * n, 2 * n) };
    let mut b = CMatrix::zeros(2, 2);
    b[(0, 1)] = c(1.0 / l, 0.0);
    for k in 0..n - 1 {
        p.set_block(k, k + 1, &b);
    }
    Ok(p)
}

/// Tridiagonal chain with the given nearest-neighbour couplings.
pub fn chain_problem(couplings: &[f64]) -> Result<DistanceProblem> {
    let links: Vec<(usize, usize, f64)> = couplings.iter().enumerate().map(|(k, &v)| (k, k + 1, v)).collect();
    DistanceProblem::from_links(couplings.len() + 1, &links)
}
