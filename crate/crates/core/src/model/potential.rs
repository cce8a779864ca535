//! Scalar potential from closed loops on the diagram.

use serde::Serialize;

use super::constants::SpectralConstants;
use super::higgs::{FieldSpace, HiggsValues};
use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix, C64};
use crate::triple::{s0, FiniteTriple, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PhiFactor {
    pub pair: usize,
    pub q: usize,
    pub adjoint: bool,
    pub conj: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LoopTerm {
    /// Sector indices along the loop.
    pub walk: Vec<usize>,
    pub class: String,
    /// Number of distinct base points of the loop.
    pub weight: usize,
    /// tr(M-chain) times the trace of the untouched identity factor.
    pub coeff: [f64; 2],
    /// Φ chain on the left tensor factor (vertical steps).
    pub left: Vec<PhiFactor>,
    /// Conjugated Φ chain on the right tensor factor (horizontal steps).
    pub right: Vec<PhiFactor>,
}

impl LoopTerm {
    pub fn is_trace_pair(&self) -> bool {
        !self.left.is_empty() && !self.right.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PotentialCoefficients {
    pub mass_coefficient: f64,
    pub lambda_norm: f64,
    pub c: f64,
    pub particle_half: bool,
    pub quadratic: Vec<LoopTerm>,
    pub quartic: Vec<LoopTerm>,
}

#[derive(Clone, Copy, Debug)]
struct Edge {
    to: usize,
    pair: usize,
    vertical: bool,
    /// true when the step runs from k to i with i < k (Φ itself), false for Φ*.
    forward: bool,
    column: usize,
}

fn sector_edges(t: &FiniteTriple, rep: &Representation, fs: &FieldSpace, allowed: &[bool]) -> Vec<Vec<Edge>> {
    let mut adj = vec![vec![]; rep.sectors.len()];
    for (pi, pair) in fs.space.pairs.iter().enumerate() {
        for &j in &pair.columns {
            let (i, k) = (pair.i, pair.k);
            let si = rep.sector_of[&(i, j)];
            let sk = rep.sector_of[&(k, j)];
            let hi = rep.sector_of[&(j, i)];
            let hk = rep.sector_of[&(j, k)];
            // step s -> w uses block B(s <- w)
            let mut add = |s: usize, w: usize, vertical: bool, forward: bool| {
                if allowed[s] && allowed[w] {
                    adj[s].push(Edge { to: w, pair: pi, vertical, forward, column: j });
                }
            };
            add(si, sk, true, true);
            add(sk, si, true, false);
            add(hi, hk, false, true);
            add(hk, hi, false, false);
        }
    }
    let _ = t;
    adj
}

fn classify(walk: &[usize], steps: &[Edge]) -> String {
    let l = walk.len();
    let mut edges: Vec<(usize, usize, bool)> = (0..l)
        .map(|s| {
            let (a, b) = (walk[s], walk[(s + 1) % l]);
            (a.min(b), a.max(b), steps[s].vertical)
        })
        .collect();
    edges.sort();
    edges.dedup();
    let nv = edges.iter().filter(|e| e.2).count();
    let nh = edges.len() - nv;
    if l == 2 {
        return "mass".into();
    }
    match (edges.len(), nv, nh) {
        (1, 1, 0) => "1".into(),
        (1, 0, 1) => "1h".into(),
        (2, 2, 0) => "2".into(),
        (2, 0, 2) => "2h".into(),
        (2, 1, 1) => "3".into(),
        (4, 2, 2) => "4".into(),
        (4, 4, 0) => "5".into(),
        (4, 0, 4) => "5h".into(),
        _ => "other".into(),
    }
}

fn enumerate(
    t: &FiniteTriple,
    rep: &Representation,
    fs: &FieldSpace,
    allowed: &[bool],
    len: usize,
) -> Vec<LoopTerm> {
    let adj = sector_edges(t, rep, fs, allowed);
    let mut out = vec![];
    let mut walk = vec![];
    let mut steps: Vec<Edge> = vec![];
    let mut qs: Vec<usize> = vec![];
    fn rec(
        t: &FiniteTriple,
        rep: &Representation,
        fs: &FieldSpace,
        adj: &[Vec<Edge>],
        len: usize,
        walk: &mut Vec<usize>,
        steps: &mut Vec<Edge>,
        qs: &mut Vec<usize>,
        out: &mut Vec<LoopTerm>,
    ) {
        let cur = *walk.last().unwrap();
        for e in &adj[cur] {
            let last = walk.len() == len;
            if last && e.to != walk[0] {
                continue;
            }
            if !last && walk.len() == len - 1 && !adj[e.to].iter().any(|f| f.to == walk[0]) {
                continue;
            }
            for q in 0..fs.space.pairs[e.pair].p {
                steps.push(*e);
                qs.push(q);
                if last {
                    if let Some(term) = make_term(t, rep, fs, walk, steps, qs) {
                        out.push(term);
                    }
                } else {
                    walk.push(e.to);
                    rec(t, rep, fs, adj, len, walk, steps, qs, out);
                    walk.pop();
                }
                steps.pop();
                qs.pop();
            }
        }
    }
    for v0 in 0..rep.sectors.len() {
        if !allowed[v0] {
            continue;
        }
        walk.clear();
        walk.push(v0);
        rec(t, rep, fs, &adj, len, &mut walk, &mut steps, &mut qs, &mut out);
    }
    out
}

fn make_term(
    t: &FiniteTriple,
    rep: &Representation,
    fs: &FieldSpace,
    walk: &[usize],
    steps: &[Edge],
    qs: &[usize],
) -> Option<LoopTerm> {
    let l = walk.len();
    // keep the lexicographically least rotation only
    let key = |r: usize| -> Vec<(usize, usize, usize, bool, bool)> {
        (0..l)
            .map(|s| {
                let k = (s + r) % l;
                (walk[k], qs[k], steps[k].pair, steps[k].vertical, steps[k].forward)
            })
            .collect()
    };
    let k0 = key(0);
    let mut distinct = vec![k0.clone()];
    for r in 1..l {
        let kr = key(r);
        if kr < k0 {
            return None;
        }
        if !distinct.contains(&kr) {
            distinct.push(kr);
        }
    }
    let mut mchain: Option<CMatrix> = None;
    let mut left = vec![];
    let mut right = vec![];
    for s in 0..l {
        let e = &steps[s];
        let pair = &fs.space.pairs[e.pair];
        let ci = pair.columns.iter().position(|&j| j == e.column).unwrap();
        let mut m = pair.basis[qs[s]][ci].clone();
        if !e.forward {
            m = m.adjoint();
        }
        if !e.vertical {
            m = m.map(|z| z.conj());
        }
        mchain = Some(match mchain {
            None => m,
            Some(acc) => acc * m,
        });
        let f = PhiFactor { pair: e.pair, q: qs[s], adjoint: !e.forward, conj: !e.vertical };
        if e.vertical {
            left.push(f);
        } else {
            right.push(f);
        }
    }
    let s0 = &rep.sectors[walk[0]];
    let mut coeff = mchain.unwrap().trace();
    if left.is_empty() {
        coeff *= s0.di as f64;
    }
    if right.is_empty() {
        coeff *= s0.dj as f64;
    }
    let _ = t;
    Some(LoopTerm {
        walk: walk.to_vec(),
        class: classify(walk, steps),
        weight: distinct.len(),
        coeff: [coeff.re, coeff.im],
        left,
        right,
    })
}

fn factor(v: &HiggsValues, f: &PhiFactor) -> CMatrix {
    let mut m = v.phi[f.pair][f.q].clone();
    if f.adjoint {
        m = m.adjoint();
    }
    if f.conj {
        m = m.map(|z| z.conj());
    }
    m
}

fn chain_trace(v: &HiggsValues, fs: &[PhiFactor]) -> C64 {
    let mut acc = factor(v, &fs[0]);
    for f in &fs[1..] {
        acc = acc * factor(v, f);
    }
    acc.trace()
}

impl LoopTerm {
    pub fn value(&self, v: &HiggsValues) -> C64 {
        let mut z = c(self.coeff[0], self.coeff[1]);
        if !self.left.is_empty() {
            z *= chain_trace(v, &self.left);
        }
        if !self.right.is_empty() {
            z *= chain_trace(v, &self.right);
        }
        z * self.weight as f64
    }
}

impl PotentialCoefficients {
    fn sum(&self, terms: &[LoopTerm], v: &HiggsValues) -> f64 {
        let s: C64 = terms.iter().map(|t| t.value(v)).sum();
        if self.particle_half {
            2.0 * s.re
        } else {
            s.re
        }
    }

    /// tr(Φ̃²) from length-2 loops.
    pub fn trace_square(&self, v: &HiggsValues) -> f64 {
        self.sum(&self.quadratic, v)
    }

    /// tr(Φ̃⁴) from length-4 loops.
    pub fn trace_fourth(&self, v: &HiggsValues) -> f64 {
        self.sum(&self.quartic, v)
    }

    pub fn quartic_value(&self, v: &HiggsValues) -> f64 {
        self.lambda_norm * self.trace_fourth(v)
    }

    /// V = −(μ²/2)|θ|² + λ_norm tr(Φ̃⁴), with |θ|² = c·tr(Φ̃²).
    pub fn potential(&self, v: &HiggsValues) -> f64 {
        self.mass_coefficient * self.c * self.trace_square(v) + self.quartic_value(v)
    }

    /// Aggregated (class, coefficient) pairs: single-trace λ and trace-pair κ couplings.
    pub fn couplings(&self) -> (Vec<(String, [f64; 2])>, Vec<(String, [f64; 2])>) {
        let mut lam = vec![];
        let mut kap = vec![];
        let f = if self.particle_half { 2.0 } else { 1.0 };
        for t in &self.quartic {
            let z = [
                f * self.lambda_norm * t.weight as f64 * t.coeff[0],
                f * self.lambda_norm * t.weight as f64 * t.coeff[1],
            ];
            if t.is_trace_pair() {
                kap.push((t.class.clone(), z));
            } else {
                lam.push((t.class.clone(), z));
            }
        }
        (lam, kap)
    }
}

/// Sectors that are purely particle under the declared split, if every sector is pure.
fn particle_sectors(t: &FiniteTriple, rep: &Representation) -> Option<Vec<bool>> {
    let nu = t.s0_split.as_ref()?;
    let eps = s0::grading_from_split(t, rep, nu)?;
    let d = t.assemble_dirac().ok()?;
    let res = crate::linalg::frob(&crate::linalg::commutator(&eps, &d));
    if res > 1e-9 * crate::linalg::opnorm(&d).max(1.0) {
        return None;
    }
    let mut out = vec![];
    for s in &rep.sectors {
        let vals: Vec<f64> = (0..s.dim()).map(|k| eps[(s.offset + k, s.offset + k)].re).collect();
        if vals.iter().all(|&x| x == 1.0) {
            out.push(true);
        } else if vals.iter().all(|&x| x == -1.0) {
            out.push(false);
        } else {
            return None;
        }
    }
    Some(out)
}

pub fn scalar_potential_with(
    t: &FiniteTriple,
    fs: &FieldSpace,
    k: &SpectralConstants,
    use_particle_half: bool,
) -> Result<PotentialCoefficients> {
    if (fs.space.x - k.x).abs() > 1e-12 * k.x.abs().max(1.0) {
        return Err(Error::domain(format!(
            "one-form basis normalized to X = {} but the constants require X = {}; rebuild the field space with X",
            fs.space.x, k.x
        )));
    }
    let rep = t.representation()?;
    let half = if use_particle_half { particle_sectors(t, &rep) } else { None };
    let allowed = half.clone().unwrap_or_else(|| vec![true; rep.sectors.len()]);
    Ok(PotentialCoefficients {
        mass_coefficient: k.mass_coefficient(),
        lambda_norm: k.lambda_norm,
        c: k.c,
        particle_half: half.is_some(),
        quadratic: enumerate(t, &rep, fs, &allowed, 2),
        quartic: enumerate(t, &rep, fs, &allowed, 4),
    })
}

pub fn scalar_potential(t: &FiniteTriple, k: &SpectralConstants) -> Result<(super::higgs::FieldSpace, PotentialCoefficients)> {
    let fs = super::higgs::field_space(t, k.x);
    let p = scalar_potential_with(t, &fs, k, true)?;
    Ok((fs, p))
}
