//! Higgs fields: the real span of Hermitian one-forms, expressed in the one-form basis.

use nalgebra::DVector;
use serde::Serialize;

use super::oneforms::OneFormSpace;
use crate::linalg::{c, real_range, real_rank, CMatrix, RMatrix};
use crate::triple::{AlgebraElement, Field, FiniteTriple, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FieldKind {
    Complex,
    Real,
    Quaternionic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HiggsField {
    pub i: usize,
    pub k: usize,
    pub p: usize,
    pub shape: (usize, usize),
    pub kind: FieldKind,
    /// Fixed by an earlier field (e.g. a quaternionic conjugate).
    pub derived: bool,
    /// Columns j of the vertical links carrying this field.
    pub links: Vec<usize>,
    pub law: String,
}

/// Values Φ^q_ik for every pair (i < k) and multiplicity index q.
#[derive(Clone, Debug, PartialEq)]
pub struct HiggsValues {
    pub phi: Vec<Vec<CMatrix>>,
}

/// Coordinates of the Higgs configuration space and its canonical real basis.
#[derive(Clone, Debug)]
pub struct FieldSpace {
    pub space: OneFormSpace,
    /// Orthonormal real basis (columns) of admissible Φ inside the flattened coordinates.
    pub basis: RMatrix,
    pub layout: Vec<(usize, usize, usize, usize)>,
    pub ncoord: usize,
}

impl FieldSpace {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn flatten(&self, v: &HiggsValues) -> DVector<f64> {
        let mut out = DVector::zeros(self.ncoord);
        let mut pos = 0;
        for (pi, pair) in self.space.pairs.iter().enumerate() {
            for q in 0..pair.p {
                let m = &v.phi[pi][q];
                for a in 0..m.nrows() {
                    for b in 0..m.ncols() {
                        out[pos] = m[(a, b)].re;
                        out[pos + 1] = m[(a, b)].im;
                        pos += 2;
                    }
                }
            }
        }
        out
    }

    pub fn unflatten(&self, x: &DVector<f64>) -> HiggsValues {
        let mut phi = vec![];
        let mut pos = 0;
        for pair in &self.space.pairs {
            let (di, dk) = (pair.e[0].nrows(), pair.e[0].ncols());
            let mut qs = vec![];
            for _ in 0..pair.p {
                let mut m = CMatrix::zeros(di, dk);
                for a in 0..di {
                    for b in 0..dk {
                        m[(a, b)] = c(x[pos], x[pos + 1]);
                        pos += 2;
                    }
                }
                qs.push(m);
            }
            phi.push(qs);
        }
        HiggsValues { phi }
    }

    /// Φ from canonical coordinates θ.
    pub fn from_theta(&self, theta: &DVector<f64>) -> HiggsValues {
        self.unflatten(&(&self.basis * theta))
    }

    pub fn to_theta(&self, v: &HiggsValues) -> DVector<f64> {
        self.basis.transpose() * self.flatten(v)
    }

    /// Vacuum Φ = E.
    pub fn vacuum(&self) -> HiggsValues {
        HiggsValues { phi: self.space.pairs.iter().map(|p| p.e.clone()).collect() }
    }

    /// Distance of a configuration from the admissible subspace.
    pub fn admissibility_residual(&self, v: &HiggsValues) -> f64 {
        let x = self.flatten(v);
        (&x - &self.basis * (self.basis.transpose() * &x)).norm()
    }
}

fn one_form_coords(
    t: &FiniteTriple,
    space: &OneFormSpace,
    a: &AlgebraElement,
    b: &AlgebraElement,
) -> HiggsValues {
    // Hermitian part of π(a)[Δ, π(b)] projected on the M^q basis
    let mut phi = vec![];
    for pair in &space.pairs {
        let (ri, rk) = (t.reps[pair.i], t.reps[pair.k]);
        let (ai, ak, bi, bk) = (a.rep(ri), a.rep(rk), b.rep(ri), b.rep(rk));
        let mut qs = vec![];
        for e in &pair.e {
            let w_ik = &ai * (e * &bk - &bi * e);
            let ed = e.adjoint();
            let w_ki = &ak * (&ed * &bi - &bk * &ed);
            qs.push(w_ik + w_ki.adjoint());
        }
        phi.push(qs);
    }
    HiggsValues { phi }
}

pub fn field_space(t: &FiniteTriple, x: f64) -> FieldSpace {
    let space = super::oneforms::one_form_space(t, x);
    let mut layout = vec![];
    let mut ncoord = 0;
    for (pi, pair) in space.pairs.iter().enumerate() {
        for q in 0..pair.p {
            let sz = 2 * t.rep_dim(pair.i) * t.rep_dim(pair.k);
            layout.push((pi, q, ncoord, sz));
            ncoord += sz;
        }
    }
    let mut fs = FieldSpace { space, basis: RMatrix::zeros(ncoord, 0), layout, ncoord };
    if ncoord == 0 {
        return fs;
    }
    let rb = t.algebra.real_basis();
    let mut cols = vec![];
    for a in &rb {
        for b in &rb {
            let v = one_form_coords(t, &fs.space, a, b);
            let f = fs.flatten(&v);
            if f.norm() > 0.0 {
                cols.push(f);
            }
        }
    }
    if cols.is_empty() {
        return fs;
    }
    let g = RMatrix::from_columns(&cols);
    fs.basis = real_range(&g, 1e-10);
    fs
}

/// Field list with kinds and the derived-field flags.
pub fn higgs_fields(t: &FiniteTriple, fs: &FieldSpace) -> Vec<HiggsField> {
    let kind_of = |i: usize| t.algebra.summands[t.reps[i].summand].field;
    let mut out = vec![];
    let mut prev_rows: Vec<usize> = vec![];
    for &(pi, q, off, sz) in &fs.layout {
        let pair = &fs.space.pairs[pi];
        let (fi, fk) = (kind_of(pair.i), kind_of(pair.k));
        let kind = if fi == Field::C || fk == Field::C {
            FieldKind::Complex
        } else if fi == Field::R && fk == Field::R {
            FieldKind::Real
        } else {
            FieldKind::Quaternionic
        };
        let rows_now: Vec<usize> = prev_rows.iter().cloned().chain(off..off + sz).collect();
        let sub = |rows: &[usize]| {
            RMatrix::from_fn(rows.len(), fs.basis.ncols(), |r, cc| fs.basis[(rows[r], cc)])
        };
        let r_prev = if prev_rows.is_empty() { 0 } else { real_rank(&sub(&prev_rows), 1e-9) };
        let r_now = real_rank(&sub(&rows_now), 1e-9);
        let own = real_rank(&sub(&(off..off + sz).collect::<Vec<_>>()), 1e-9);
        out.push(HiggsField {
            i: pair.i,
            k: pair.k,
            p: q,
            shape: (t.rep_dim(pair.i), t.rep_dim(pair.k)),
            kind,
            derived: own > 0 && r_now == r_prev,
            links: pair.columns.clone(),
            law: format!("Phi_{}{} -> u_{} Phi u_{}^-1", pair.i, pair.k, pair.i, pair.k),
        });
        prev_rows = rows_now;
    }
    out
}

/// Gauge action Φ_ik ↦ π_i(u) Φ_ik π_k(u)⁻¹.
pub fn gauge_transform(t: &FiniteTriple, fs: &FieldSpace, v: &HiggsValues, u: &AlgebraElement) -> HiggsValues {
    let mut phi = vec![];
    for (pi, pair) in fs.space.pairs.iter().enumerate() {
        let ui = u.rep(t.reps[pair.i]);
        let uk = u.rep(t.reps[pair.k]).adjoint();
        phi.push(v.phi[pi].iter().map(|m| &ui * m * &uk).collect());
    }
    HiggsValues { phi }
}

/// Fluctuated operator D(Φ) = Σ Φ^q ⊗ M^q ⊗ I on vertical links plus its J-mirror.
pub fn yukawa_operator(t: &FiniteTriple, rep: &Representation, fs: &FieldSpace, v: &HiggsValues) -> CMatrix {
    let mut tt = t.clone();
    tt.blocks.clear();
    for (pi, pair) in fs.space.pairs.iter().enumerate() {
        for (ci, &j) in pair.columns.iter().enumerate() {
            let (r, cc) = t.block_shape(pair.i, pair.k, j);
            let mut m = CMatrix::zeros(r, cc);
            for q in 0..pair.p {
                m += v.phi[pi][q].kronecker(&pair.basis[q][ci]);
            }
            tt.blocks.insert((pair.i, pair.k, j), m);
        }
    }
    let delta = tt.delta(rep);
    &delta + rep.conj_by_j(&delta)
}

/// Coupling blocks between sectors, keyed by (to, from) sector pairs.
pub fn yukawa_blocks(
    t: &FiniteTriple,
    fs: &FieldSpace,
    v: &HiggsValues,
) -> crate::error::Result<Vec<((usize, usize), (usize, usize), CMatrix)>> {
    let rep = t.representation()?;
    let op = yukawa_operator(t, &rep, fs, v);
    let mut out = vec![];
    for (a, sa) in rep.sectors.iter().enumerate() {
        for (b, sb) in rep.sectors.iter().enumerate() {
            let blk = rep.block(&op, a, b);
            if blk.iter().any(|z| z.norm() > 0.0) {
                out.push(((sa.i, sa.j), (sb.i, sb.j), blk));
            }
        }
    }
    Ok(out)
}
