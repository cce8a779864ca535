//! S⁰-reality: a J-odd grading ε commuting with the algebra, its opposite and D.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{FiniteTriple, Mu, Representation};
use crate::error::Result;
use crate::linalg::{c, commutator, frob, hermitian_eigenvalues, randn, symmetric_eigen, CMatrix, RMatrix, I};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct S0Report {
    pub declared: bool,
    /// μ = ν + νᵀ with sign(ν) compatible with sign(μ), realizable under J.
    pub split_valid: bool,
    /// ‖[ε_ν, D]‖ for the declared split.
    pub residual: f64,
    /// Some J-odd grading commuting with D exists.
    pub structure_exists: bool,
    pub s0_real: bool,
}

/// Multiplicity-space operator for each sector, expanded to H.
fn expand(rep: &Representation, per_sector: &[CMatrix]) -> CMatrix {
    let mut out = CMatrix::zeros(rep.dim, rep.dim);
    for (s, e) in rep.sectors.iter().zip(per_sector) {
        for a in 0..s.di {
            for m in 0..s.mult {
                for m2 in 0..s.mult {
                    let v = e[(m, m2)];
                    if v == c(0.0, 0.0) {
                        continue;
                    }
                    for b in 0..s.dj {
                        out[(s.index(a, m, b), s.index(a, m2, b))] = v;
                    }
                }
            }
        }
    }
    out
}

/// ε_ν: on H_ij (i<j) slots below |ν_ij| are particles; on H_ji the complement; diagonal
/// sectors pair slots with [[0, i], [−i, 0]].
pub fn grading_from_split(t: &FiniteTriple, rep: &Representation, nu: &Mu) -> Option<CMatrix> {
    let n = t.nrep();
    if nu.len() != n || nu.iter().any(|r| r.len() != n) {
        return None;
    }
    for i in 0..n {
        for j in 0..n {
            if nu[i][j] + nu[j][i] != t.mu[i][j] || nu[i][j] * t.mu[i][j] < 0 {
                return None;
            }
        }
    }
    let mut blocks = vec![];
    for s in &rep.sectors {
        let m = s.mult;
        let mut e = CMatrix::zeros(m, m);
        if s.i == s.j {
            let half = nu[s.i][s.i].unsigned_abs() as usize;
            if m % 2 != 0 || 2 * half != m {
                return None;
            }
            for p in 0..half {
                e[(2 * p, 2 * p + 1)] = I;
                e[(2 * p + 1, 2 * p)] = -I;
            }
        } else {
            let lo = if s.i < s.j { nu[s.i][s.j] } else { nu[s.j][s.i] }.unsigned_abs() as usize;
            for k in 0..m {
                let particle = if s.i < s.j { k < lo } else { k >= lo };
                e[(k, k)] = c(if particle { 1.0 } else { -1.0 }, 0.0);
            }
        }
        blocks.push(e);
    }
    Some(expand(rep, &blocks))
}

/// Real basis of J-odd Hermitian multiplicity-space operators.
fn odd_basis(rep: &Representation) -> Vec<Vec<CMatrix>> {
    let ns = rep.sectors.len();
    let zero: Vec<CMatrix> = rep.sectors.iter().map(|s| CMatrix::zeros(s.mult, s.mult)).collect();
    let mut out = vec![];
    for (a, s) in rep.sectors.iter().enumerate() {
        let m = s.mult;
        if s.i < s.j {
            let b = rep.sector_of[&(s.j, s.i)];
            let mut herm = vec![];
            for x in 0..m {
                for y in x..m {
                    let mut h = CMatrix::zeros(m, m);
                    if x == y {
                        h[(x, x)] = c(1.0, 0.0);
                        herm.push(h);
                    } else {
                        h[(x, y)] = c(1.0, 0.0);
                        h[(y, x)] = c(1.0, 0.0);
                        herm.push(h.clone());
                        let mut g = CMatrix::zeros(m, m);
                        g[(x, y)] = I;
                        g[(y, x)] = -I;
                        herm.push(g);
                    }
                }
            }
            for h in herm {
                let mut v = zero.clone();
                v[b] = -h.map(|z| z.conj());
                v[a] = h;
                out.push(v);
            }
        } else if s.i == s.j {
            for x in 0..m {
                for y in x + 1..m {
                    let mut v = zero.clone();
                    v[a][(x, y)] = I;
                    v[a][(y, x)] = -I;
                    out.push(v);
                }
            }
        }
        let _ = ns;
    }
    out
}

/// Does any J-odd grading commute with D? Solve the linear constraint [ε, D] = 0 on the
/// J-odd Hermitian family and test a random solution for invertibility; its sign is a grading.
pub fn grading_exists(rep: &Representation, d: &CMatrix, tol: f64, seed: u64) -> bool {
    let basis = odd_basis(rep);
    if basis.is_empty() {
        return false;
    }
    let ops: Vec<CMatrix> = basis.iter().map(|b| expand(rep, b)).collect();
    let comms: Vec<CMatrix> = ops.iter().map(|e| commutator(e, d)).collect();
    let nb = ops.len();
    let mut g = RMatrix::zeros(nb, nb);
    for r in 0..nb {
        for s in r..nb {
            let v: f64 = comms[r].iter().zip(comms[s].iter()).map(|(x, y)| (x.conj() * y).re).sum();
            g[(r, s)] = v;
            g[(s, r)] = v;
        }
    }
    let (vals, vecs) = symmetric_eigen(&g);
    let gmax = vals.iter().cloned().fold(0.0, f64::max).max(1.0);
    let kernel: Vec<usize> = (0..nb).filter(|&k| vals[k] <= 1e-18f64.max(tol * tol) * gmax).collect();
    if kernel.is_empty() {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut h = CMatrix::zeros(rep.dim, rep.dim);
    for &k in &kernel {
        let w = randn(&mut rng);
        for r in 0..nb {
            let coef = w * vecs[(r, k)];
            if coef != 0.0 {
                h += &ops[r] * c(coef, 0.0);
            }
        }
    }
    let ev = hermitian_eigenvalues(&h);
    let scale = ev.iter().map(|x| x.abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        return false;
    }
    let min = ev.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
    min > 1e-6 * scale
}

pub fn s0_report(t: &FiniteTriple, rep: &Representation, d: &CMatrix, tol: f64, seed: u64) -> Result<S0Report> {
    let structure_exists = grading_exists(rep, d, 1e-7, seed);
    match &t.s0_split {
        Some(nu) => match grading_from_split(t, rep, nu) {
            Some(eps) => {
                let residual = frob(&commutator(&eps, d));
                Ok(S0Report {
                    declared: true,
                    split_valid: true,
                    residual,
                    structure_exists,
                    s0_real: residual <= tol,
                })
            }
            None => Ok(S0Report {
                declared: true,
                split_valid: false,
                residual: f64::INFINITY,
                structure_exists,
                s0_real: false,
            }),
        },
        None => Ok(S0Report {
            declared: false,
            split_valid: false,
            residual: if structure_exists { 0.0 } else { f64::INFINITY },
            structure_exists,
            s0_real: structure_exists,
        }),
    }
}
