use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use super::matpoly::MatNCPoly;
use super::theta::Theta;
use crate::error::{Error, Result};
use crate::linalg::c;

/// Increasing index tuples of length p in 0..n.
pub fn index_sets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= n {
        rec(0, n, p, &mut Vec::new(), &mut out);
    }
    out
}

/// Sign of the permutation sorting `idx`, or 0 if an index repeats.
pub fn perm_sign(idx: &[usize]) -> i32 {
    let mut s = 1;
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            if idx[i] == idx[j] {
                return 0;
            }
            if idx[i] > idx[j] {
                s = -s;
            }
        }
    }
    s
}

/// Levi-Civita symbol.
pub fn epsilon(idx: &[usize]) -> f64 {
    perm_sign(idx) as f64
}

fn sorted(idx: &[usize]) -> Vec<usize> {
    let mut v = idx.to_vec();
    v.sort_unstable();
    v
}

/// Matrix-valued p-form Σ_{I increasing} ω_I dx^I. Antisymmetry is built into the storage;
/// `component` returns ω for any index order.
#[derive(Clone, Debug)]
pub struct NCForm {
    pub theta: Arc<Theta>,
    pub size: usize,
    pub degree: usize,
    pub comps: BTreeMap<Vec<usize>, MatNCPoly>,
}

impl NCForm {
    pub fn zero(theta: &Arc<Theta>, size: usize, degree: usize) -> Result<Self> {
        if degree > theta.n {
            return Err(Error::input("degree", format!("degree {degree} exceeds dimension {}", theta.n)));
        }
        let comps = index_sets(theta.n, degree).into_iter().map(|i| (i, MatNCPoly::zero(theta, size))).collect();
        Ok(Self { theta: theta.clone(), size, degree, comps })
    }

    pub fn scalar(a: &MatNCPoly) -> Self {
        let mut comps = BTreeMap::new();
        comps.insert(Vec::new(), a.clone());
        Self { theta: a.theta.clone(), size: a.size, degree: 0, comps }
    }

    /// 1-form from components A_μ.
    pub fn one_form(a: &[MatNCPoly]) -> Result<Self> {
        let theta = a.first().ok_or_else(|| Error::input("A", "empty connection"))?.theta.clone();
        if a.len() != theta.n {
            return Err(Error::input("A", format!("expected {} components", theta.n)));
        }
        let mut f = Self::zero(&theta, a[0].size, 1)?;
        for (mu, m) in a.iter().enumerate() {
            f.comps.insert(vec![mu], m.clone());
        }
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.theta.n
    }

    /// ω_{idx} for an arbitrary index tuple.
    pub fn component(&self, idx: &[usize]) -> MatNCPoly {
        let s = perm_sign(idx);
        if s == 0 || idx.len() != self.degree {
            return MatNCPoly::zero(&self.theta, self.size);
        }
        self.comps[&sorted(idx)].scale(c(s as f64, 0.0))
    }

    /// Adds `s·m` to the component at `idx` (any order).
    fn accumulate(&mut self, idx: &[usize], s: f64, m: &MatNCPoly) -> Result<()> {
        let sg = perm_sign(idx);
        if sg == 0 {
            return Ok(());
        }
        let key = sorted(idx);
        let cur = &self.comps[&key];
        let next = cur.add(&m.scale(c(s * sg as f64, 0.0)))?;
        self.comps.insert(key, next);
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.degree != o.degree {
            return Err(Error::input("degree", "cannot add forms of different degree"));
        }
        let mut out = self.clone();
        for (k, m) in &o.comps {
            out.comps.insert(k.clone(), self.comps[k].add(m)?);
        }
        Ok(out)
    }

    pub fn max_abs(&self) -> f64 {
        self.comps.values().map(|m| m.max_abs()).fold(0.0, f64::max)
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.comps.keys().all(|k| perm_sign(k) == 1)
    }

    pub fn random<R: Rng + ?Sized>(theta: &Arc<Theta>, size: usize, degree: usize, nterms: usize, radius: i32, rng: &mut R) -> Result<Self> {
        let mut f = Self::zero(theta, size, degree)?;
        for m in f.comps.values_mut() {
            let mut x = MatNCPoly::zero(theta, size);
            for a in x.e.iter_mut() {
                *a = super::poly::NCPoly::random(theta, nterms, radius, rng);
            }
            *m = x;
        }
        Ok(f)
    }
}

pub fn wedge(w: &NCForm, h: &NCForm) -> Result<NCForm> {
    let n = w.n();
    if w.degree + h.degree > n {
        return NCForm::zero(&w.theta, w.size, n).map(|mut z| {
            z.comps.clear();
            z.degree = w.degree + h.degree;
            z
        });
    }
    let mut out = NCForm::zero(&w.theta, w.size, w.degree + h.degree)?;
    for (i, a) in &w.comps {
        for (j, b) in &h.comps {
            if i.iter().any(|x| j.contains(x)) {
                continue;
            }
            let idx: Vec<usize> = i.iter().chain(j.iter()).copied().collect();
            out.accumulate(&idx, 1.0, &a.mul(b)?)?;
        }
    }
    Ok(out)
}

/// dω = Σ ∂_ν ω_I dx^ν ∧ dx^I.
pub fn ext_d(w: &NCForm) -> Result<NCForm> {
    let n = w.n();
    if w.degree >= n {
        let mut z = NCForm::zero(&w.theta, w.size, n)?;
        z.comps.clear();
        z.degree = w.degree + 1;
        return Ok(z);
    }
    let mut out = NCForm::zero(&w.theta, w.size, w.degree + 1)?;
    for (i, a) in &w.comps {
        for nu in 0..n {
            if i.contains(&nu) {
                continue;
            }
            let mut idx = vec![nu];
            idx.extend_from_slice(i);
            out.accumulate(&idx, 1.0, &a.derive(nu)?)?;
        }
    }
    Ok(out)
}

/// *dx^I = ε(I, Iᶜ) dx^{Iᶜ} for the flat metric.
pub fn hodge(w: &NCForm) -> Result<NCForm> {
    let n = w.n();
    let mut out = NCForm::zero(&w.theta, w.size, n - w.degree)?;
    for (i, a) in &w.comps {
        let comp: Vec<usize> = (0..n).filter(|x| !i.contains(x)).collect();
        let full: Vec<usize> = i.iter().chain(comp.iter()).copied().collect();
        out.comps.insert(comp, a.scale(c(epsilon(&full), 0.0)));
    }
    Ok(out)
}
