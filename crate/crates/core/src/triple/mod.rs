//! Finite spectral triples of KO-dimension 0 in block form.

pub mod algebra;
pub mod axioms;
pub mod diagram;
pub mod random;
pub mod s0;
pub mod sm;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{c, frob, opnorm, CMatrix};

pub use algebra::{AlgebraElement, AlgebraSpec, Field, Rep, Summand};

/// Signed multiplicity matrix over the representation index set.
pub type Mu = Vec<Vec<i64>>;

/// Key (i, k, j): block from sector (k, j) to sector (i, j). Stored with i < k.
pub type BlockKey = (usize, usize, usize);

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteTriple {
    pub algebra: AlgebraSpec,
    pub reps: Vec<Rep>,
    pub mu: Mu,
    /// M_{ik,j} of shape (n_i·|μ_ij|) × (n_k·|μ_kj|), algebra index major.
    pub blocks: BTreeMap<BlockKey, CMatrix>,
    /// Raw Dirac operator replacing Δ + JΔJ⁻¹, for triples that are not built from blocks.
    pub dirac_override: Option<CMatrix>,
    /// Declared particle half ν with μ = ν + νᵀ.
    pub s0_split: Option<Mu>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sector {
    pub i: usize,
    pub j: usize,
    pub mult: usize,
    pub di: usize,
    pub dj: usize,
    pub offset: usize,
    pub sign: i64,
}

impl Sector {
    pub fn dim(&self) -> usize {
        self.di * self.mult * self.dj
    }

    pub fn index(&self, a: usize, m: usize, b: usize) -> usize {
        self.offset + (a * self.mult + m) * self.dj + b
    }
}

/// Concrete Hilbert space H = ⊕ H_ij with χ and the real structure.
#[derive(Clone, Debug)]
pub struct Representation {
    pub sectors: Vec<Sector>,
    pub sector_of: BTreeMap<(usize, usize), usize>,
    pub dim: usize,
    /// J = K ∘ conj with K the real permutation e_idx ↦ e_{perm[idx]}.
    pub perm: Vec<usize>,
    pub rep_dims: Vec<usize>,
}

pub fn check_mu(mu: &Mu, nrep: usize) -> Result<()> {
    if mu.len() != nrep {
        return Err(Error::input("mu", format!("expected {nrep} rows, got {}", mu.len())));
    }
    for (i, row) in mu.iter().enumerate() {
        if row.len() != nrep {
            return Err(Error::input(format!("mu[{i}]"), format!("expected {nrep} entries")));
        }
        if row.iter().all(|&x| x == 0) {
            return Err(Error::input(format!("mu[{i}]"), "row of zeros: unrepresented summand"));
        }
    }
    for i in 0..nrep {
        for j in 0..nrep {
            if mu[i][j] != mu[j][i] {
                return Err(Error::input(
                    format!("mu[{i}][{j}]"),
                    "multiplicity matrix is not symmetric: no real structure exists",
                ));
            }
        }
    }
    Ok(())
}

/// Real-algebra sign constraint μ_ij·μ_{ī j̄} ≥ 0, conjugation acting on C-type reps.
pub fn check_real_sign_constraint(reps: &[Rep], mu: &Mu) -> Result<()> {
    let bar = |i: usize| -> Option<usize> {
        let r = reps[i];
        let target = if reps.iter().any(|x| x.summand == r.summand && x.conj != r.conj) {
            Rep { summand: r.summand, conj: !r.conj }
        } else {
            r
        };
        reps.iter().position(|x| *x == target)
    };
    for i in 0..reps.len() {
        for j in 0..reps.len() {
            if let (Some(ib), Some(jb)) = (bar(i), bar(j)) {
                if mu[i][j] * mu[ib][jb] < 0 {
                    return Err(Error::input(
                        format!("mu[{i}][{j}]"),
                        "sign constraint mu_ij * mu_(conj i)(conj j) >= 0 violated",
                    ));
                }
            }
        }
    }
    Ok(())
}

pub fn build_representation(algebra: &AlgebraSpec, reps: &[Rep], mu: &Mu) -> Result<Representation> {
    algebra.check_reps(reps)?;
    check_mu(mu, reps.len())?;
    check_real_sign_constraint(reps, mu)?;
    let rep_dims: Vec<usize> = reps.iter().map(|&r| algebra.rep_dim(r)).collect();
    let mut sectors = vec![];
    let mut sector_of = BTreeMap::new();
    let mut offset = 0;
    for i in 0..reps.len() {
        for j in 0..reps.len() {
            if mu[i][j] != 0 {
                let s = Sector {
                    i,
                    j,
                    mult: mu[i][j].unsigned_abs() as usize,
                    di: rep_dims[i],
                    dj: rep_dims[j],
                    offset,
                    sign: mu[i][j].signum(),
                };
                offset += s.dim();
                sector_of.insert((i, j), sectors.len());
                sectors.push(s);
            }
        }
    }
    let dim = offset;
    let mut perm = vec![0; dim];
    for s in &sectors {
        let t = &sectors[sector_of[&(s.j, s.i)]];
        for a in 0..s.di {
            for m in 0..s.mult {
                for b in 0..s.dj {
                    perm[s.index(a, m, b)] = t.index(b, m, a);
                }
            }
        }
    }
    Ok(Representation { sectors, sector_of, dim, perm, rep_dims })
}

impl Representation {
    pub fn chi(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for s in &self.sectors {
            for k in s.offset..s.offset + s.dim() {
                m[(k, k)] = c(s.sign as f64, 0.0);
            }
        }
        m
    }

    /// K as a matrix, so that J X J⁻¹ = K X̄ K.
    pub fn k_matrix(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for (idx, &p) in self.perm.iter().enumerate() {
            m[(p, idx)] = c(1.0, 0.0);
        }
        m
    }

    /// J X J⁻¹ for a linear operator X.
    pub fn conj_by_j(&self, x: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for r in 0..self.dim {
            for cc in 0..self.dim {
                out[(self.perm[r], self.perm[cc])] = x[(r, cc)].conj();
            }
        }
        out
    }

    /// Left action π(a) = ⊕ π_i(a) ⊗ I ⊗ I.
    pub fn pi(&self, reps: &[Rep], a: &AlgebraElement) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for s in &self.sectors {
            let p = a.rep(reps[s.i]);
            for x in 0..s.di {
                for y in 0..s.di {
                    let v = p[(x, y)];
                    if v == c(0.0, 0.0) {
                        continue;
                    }
                    for m in 0..s.mult {
                        for b in 0..s.dj {
                            out[(s.index(x, m, b), s.index(y, m, b))] = v;
                        }
                    }
                }
            }
        }
        out
    }

    /// Right action J π(b) J⁻¹ = ⊕ I ⊗ I ⊗ conj(π_j(b)).
    pub fn pi_opp(&self, reps: &[Rep], b: &AlgebraElement) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for s in &self.sectors {
            let p = b.rep(reps[s.j]);
            for x in 0..s.dj {
                for y in 0..s.dj {
                    let v = p[(x, y)].conj();
                    if v == c(0.0, 0.0) {
                        continue;
                    }
                    for a in 0..s.di {
                        for m in 0..s.mult {
                            out[(s.index(a, m, x), s.index(a, m, y))] = v;
                        }
                    }
                }
            }
        }
        out
    }

    /// Operator sub-block from sector `from` to sector `to`.
    pub fn block(&self, x: &CMatrix, to: usize, from: usize) -> CMatrix {
        let (t, f) = (&self.sectors[to], &self.sectors[from]);
        x.view((t.offset, f.offset), (t.dim(), f.dim())).into_owned()
    }
}

impl FiniteTriple {
    pub fn new(algebra: AlgebraSpec, reps: Option<Vec<Rep>>, mu: Mu) -> Result<Self> {
        let reps = reps.unwrap_or_else(|| algebra.default_reps());
        build_representation(&algebra, &reps, &mu)?;
        Ok(Self { algebra, reps, mu, blocks: BTreeMap::new(), dirac_override: None, s0_split: None })
    }

    pub fn nrep(&self) -> usize {
        self.reps.len()
    }

    pub fn rep_dim(&self, i: usize) -> usize {
        self.algebra.rep_dim(self.reps[i])
    }

    pub fn representation(&self) -> Result<Representation> {
        build_representation(&self.algebra, &self.reps, &self.mu)
    }

    pub fn block_shape(&self, i: usize, k: usize, j: usize) -> (usize, usize) {
        (
            self.rep_dim(i) * self.mu[i][j].unsigned_abs() as usize,
            self.rep_dim(k) * self.mu[k][j].unsigned_abs() as usize,
        )
    }

    /// Insert M_{ik,j}; a key with i > k is stored as the adjoint block.
    pub fn set_block(&mut self, i: usize, k: usize, j: usize, m: CMatrix) -> Result<()> {
        let n = self.nrep();
        let path = format!("blocks[{i},{k},{j}]");
        if i >= n || k >= n || j >= n {
            return Err(Error::input(path, "index out of range"));
        }
        if i == k {
            return Err(Error::input(path, "diagonal block i = k is not a vertical link"));
        }
        if self.mu[i][j] * self.mu[k][j] >= 0 {
            return Err(Error::input(
                path,
                "block between same-sign (or empty) vertices violates chirality",
            ));
        }
        let (r, cc) = self.block_shape(i, k, j);
        if m.shape() != (r, cc) {
            return Err(Error::input(
                path,
                format!("shape {:?} does not match expected ({r}, {cc})", m.shape()),
            ));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::input(path, "non-finite entry"));
        }
        if i < k {
            self.blocks.insert((i, k, j), m);
        } else {
            self.blocks.insert((k, i, j), m.adjoint());
        }
        Ok(())
    }

    /// M_{ik,j} in either orientation, zero if absent.
    pub fn get_block(&self, i: usize, k: usize, j: usize) -> CMatrix {
        let (r, cc) = self.block_shape(i, k, j);
        if i < k {
            self.blocks.get(&(i, k, j)).cloned().unwrap_or_else(|| CMatrix::zeros(r, cc))
        } else {
            self.blocks.get(&(k, i, j)).map(|m| m.adjoint()).unwrap_or_else(|| CMatrix::zeros(r, cc))
        }
    }

    /// Vertical part Δ of D.
    pub fn delta(&self, rep: &Representation) -> CMatrix {
        let mut d = CMatrix::zeros(rep.dim, rep.dim);
        for (&(i, k, j), m) in &self.blocks {
            let si = &rep.sectors[rep.sector_of[&(i, j)]];
            let sk = &rep.sectors[rep.sector_of[&(k, j)]];
            let blk = m.kronecker(&CMatrix::identity(si.dj, si.dj));
            d.view_mut((si.offset, sk.offset), (si.dim(), sk.dim())).copy_from(&blk);
            d.view_mut((sk.offset, si.offset), (sk.dim(), si.dim())).copy_from(&blk.adjoint());
        }
        d
    }

    pub fn assemble_dirac(&self) -> Result<CMatrix> {
        let rep = self.representation()?;
        if let Some(d) = &self.dirac_override {
            if d.shape() != (rep.dim, rep.dim) {
                return Err(Error::input("dirac", format!("expected {0}x{0} matrix", rep.dim)));
            }
            return Ok(d.clone());
        }
        let delta = self.delta(&rep);
        Ok(&delta + rep.conj_by_j(&delta))
    }

    /// Block-diagonal projector onto sectors whose left representation comes from summand s.
    pub fn summand_unit_op(&self, rep: &Representation, s: usize) -> CMatrix {
        rep.pi(&self.reps, &self.algebra.unit(s))
    }
}

/// Split a Dirac operator into vertical and horizontal parts and read the blocks back.
pub fn decompose_dirac(triple: &FiniteTriple, d: &CMatrix, tol: f64) -> Result<(CMatrix, CMatrix, FiniteTriple)> {
    let rep = triple.representation()?;
    if d.shape() != (rep.dim, rep.dim) {
        return Err(Error::input("dirac", "dimension mismatch"));
    }
    let scale = opnorm(d).max(1.0);
    let mut delta = CMatrix::zeros(rep.dim, rep.dim);
    let mut bad = vec![];
    for (a, sa) in rep.sectors.iter().enumerate() {
        for (b, sb) in rep.sectors.iter().enumerate() {
            let blk = rep.block(d, a, b);
            if frob(&blk) <= tol * scale {
                continue;
            }
            if sa.j == sb.j && sa.i != sb.i {
                delta.view_mut((sa.offset, sb.offset), (sa.dim(), sb.dim())).copy_from(&blk);
            } else if sa.i == sb.i && sa.j != sb.j {
                // horizontal, recovered through J
            } else {
                bad.push(format!("({},{})<-({},{})", sa.i, sa.j, sb.i, sb.j));
            }
        }
    }
    if !bad.is_empty() {
        return Err(Error::domain(format!(
            "decomposition failure: D has blocks outside vertical/horizontal links: {}",
            bad.join(", ")
        )));
    }
    let horiz = rep.conj_by_j(&delta);
    let res = frob(&(d - &delta - &horiz));
    if res > tol * scale * 10.0 {
        return Err(Error::domain(format!(
            "decomposition failure: D differs from Δ + JΔJ⁻¹ by {res:.3e}"
        )));
    }
    let mut out = triple.clone();
    out.blocks.clear();
    out.dirac_override = None;
    for i in 0..triple.nrep() {
        for k in i + 1..triple.nrep() {
            for j in 0..triple.nrep() {
                if triple.mu[i][j] * triple.mu[k][j] >= 0 {
                    continue;
                }
                let si = &rep.sectors[rep.sector_of[&(i, j)]];
                let sk = &rep.sectors[rep.sector_of[&(k, j)]];
                let (r, cc) = triple.block_shape(i, k, j);
                let m = CMatrix::from_fn(r, cc, |x, y| delta[(si.offset + x * si.dj, sk.offset + y * sk.dj)]);
                if frob(&m) > tol * scale {
                    out.blocks.insert((i, k, j), m);
                }
            }
        }
    }
    Ok((delta, horiz, out))
}
