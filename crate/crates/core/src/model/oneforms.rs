//! One-form multiplicities: M_{ik,j} = Σ_p E^p ⊗ M^p_j with Σ_j n_j tr(M^p* M^q_j) = X δ_pq.

use serde::Serialize;

use crate::linalg::{c, frob, CMatrix, C64};
use crate::triple::FiniteTriple;

#[derive(Clone, Debug, PartialEq)]
pub struct OneFormPair {
    /// Representation pair, i < k.
    pub i: usize,
    pub k: usize,
    pub p: usize,
    /// Columns j carrying a block for this pair.
    pub columns: Vec<usize>,
    /// basis[q][c] = M^q on column columns[c], shape |μ_ij| × |μ_kj|.
    pub basis: Vec<Vec<CMatrix>>,
    /// e[q] = E^q, shape n_i × n_k.
    pub e: Vec<CMatrix>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OneFormSpace {
    pub x: f64,
    pub pairs: Vec<OneFormPair>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct OneFormSummary {
    pub pairs: Vec<(usize, usize, usize)>,
    pub dimension: usize,
}

impl OneFormSpace {
    /// Complex dimension Σ p_ik n_i n_k.
    pub fn dimension(&self, t: &FiniteTriple) -> usize {
        self.pairs.iter().map(|p| p.p * t.rep_dim(p.i) * t.rep_dim(p.k)).sum()
    }

    pub fn summary(&self, t: &FiniteTriple) -> OneFormSummary {
        OneFormSummary {
            pairs: self.pairs.iter().map(|p| (p.i, p.k, p.p)).collect(),
            dimension: self.dimension(t),
        }
    }

    pub fn pair_index(&self, i: usize, k: usize) -> Option<usize> {
        self.pairs.iter().position(|p| p.i == i && p.k == k)
    }
}

fn weighted_inner(t: &FiniteTriple, cols: &[usize], u: &[CMatrix], v: &[CMatrix]) -> C64 {
    let mut s = c(0.0, 0.0);
    for (n, &j) in cols.iter().enumerate() {
        let w = t.rep_dim(j) as f64;
        let tr: C64 = u[n].iter().zip(v[n].iter()).map(|(a, b)| a.conj() * b).sum();
        s += tr * w;
    }
    s
}

/// Gram-Schmidt over the family M^{ab} in (a, b) order.
pub fn one_form_space(t: &FiniteTriple, x: f64) -> OneFormSpace {
    let n = t.nrep();
    let mut pairs = vec![];
    for i in 0..n {
        for k in i + 1..n {
            let columns: Vec<usize> = (0..n).filter(|&j| t.blocks.contains_key(&(i, k, j))).collect();
            if columns.is_empty() {
                continue;
            }
            let (di, dk) = (t.rep_dim(i), t.rep_dim(k));
            let mut family: Vec<Vec<CMatrix>> = vec![];
            for a in 0..di {
                for b in 0..dk {
                    family.push(
                        columns
                            .iter()
                            .map(|&j| {
                                let mi = t.mu[i][j].unsigned_abs() as usize;
                                let mk = t.mu[k][j].unsigned_abs() as usize;
                                t.blocks[&(i, k, j)].view((a * mi, b * mk), (mi, mk)).into_owned()
                            })
                            .collect(),
                    );
                }
            }
            let scale = family
                .iter()
                .map(|v| weighted_inner(t, &columns, v, v).re.sqrt())
                .fold(0.0, f64::max);
            if scale == 0.0 {
                continue;
            }
            let mut basis: Vec<Vec<CMatrix>> = vec![];
            for v in &family {
                let mut r = v.clone();
                for q in &basis {
                    let proj = weighted_inner(t, &columns, q, &r) / x;
                    for (rc, qc) in r.iter_mut().zip(q) {
                        *rc -= qc * proj;
                    }
                }
                let nr = weighted_inner(t, &columns, &r, &r).re.sqrt();
                if nr < 1e-10 * scale {
                    continue;
                }
                let f = c(x.sqrt() / nr, 0.0);
                basis.push(r.into_iter().map(|m| m * f).collect());
            }
            let e: Vec<CMatrix> = basis
                .iter()
                .map(|q| {
                    CMatrix::from_fn(di, dk, |a, b| weighted_inner(t, &columns, q, &family[a * dk + b]) / x)
                })
                .collect();
            pairs.push(OneFormPair { i, k, p: basis.len(), columns, basis, e });
        }
    }
    OneFormSpace { x, pairs }
}

/// Largest mismatch between M_{ik,j} and Σ_p E^p ⊗ M^p_j.
pub fn reconstruction_residual(t: &FiniteTriple, s: &OneFormSpace) -> f64 {
    let mut r = 0.0f64;
    for p in &s.pairs {
        for (ci, &j) in p.columns.iter().enumerate() {
            let m = &t.blocks[&(p.i, p.k, j)];
            let mut acc = CMatrix::zeros(m.nrows(), m.ncols());
            for q in 0..p.p {
                acc += p.e[q].kronecker(&p.basis[q][ci]);
            }
            r = r.max(frob(&(m - acc)));
        }
    }
    r
}
