use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::sync::Arc;

use rand::Rng;

use super::theta::{add_modes, is_zero_mode, mode, neg_mode, Mode, Theta, MAX_DIM};
use crate::error::{Error, Result};
use crate::grassmann::GrassmannPoly;
use crate::linalg::{c, random_complex, C64};

pub const PRUNE: f64 = 1e-15;
pub const MAX_TERMS: usize = 1_000_000;

/// Coefficient ring for torus polynomials. Products keep operand order, so
/// Grassmann-valued coefficients are handled correctly.
pub trait Coeff: Clone + Send + Sync + Debug + PartialEq {
    fn zero() -> Self;
    fn add_to(&mut self, o: &Self);
    fn times(&self, o: &Self) -> Self;
    fn scaled(&self, z: C64) -> Self;
    fn magnitude(&self) -> f64;
    fn cleanup(&mut self) {}
}

impl Coeff for C64 {
    fn zero() -> Self {
        c(0.0, 0.0)
    }
    fn add_to(&mut self, o: &Self) {
        *self += o;
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn scaled(&self, z: C64) -> Self {
        self * z
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl Coeff for GrassmannPoly {
    fn zero() -> Self {
        GrassmannPoly::zero()
    }
    fn add_to(&mut self, o: &Self) {
        self.add_assign_ref(o);
    }
    fn times(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn scaled(&self, z: C64) -> Self {
        self.scale(z)
    }
    fn magnitude(&self) -> f64 {
        self.max_abs()
    }
    fn cleanup(&mut self) {
        self.prune(PRUNE);
    }
}

/// Finite sum Σ a_p U^p on the θ-deformed torus.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T: Coeff> {
    pub theta: Arc<Theta>,
    pub terms: BTreeMap<Mode, T>,
}

pub type NCPoly = Poly<C64>;
/// Torus polynomial with Grassmann-valued coefficients (ghost sector).
pub type GPoly = Poly<GrassmannPoly>;

pub fn same_theta(a: &Arc<Theta>, b: &Arc<Theta>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn bounds<'a>(modes: impl Iterator<Item = &'a Mode>, n: usize) -> (Mode, Mode) {
    let mut lo = [i32::MAX; MAX_DIM];
    let mut hi = [i32::MIN; MAX_DIM];
    for m in modes {
        for j in 0..n {
            lo[j] = lo[j].min(m[j]);
            hi[j] = hi[j].max(m[j]);
        }
    }
    (lo, hi)
}

impl<T: Coeff> Poly<T> {
    pub fn zero(theta: &Arc<Theta>) -> Self {
        Self { theta: theta.clone(), terms: BTreeMap::new() }
    }

    pub fn monomial(theta: &Arc<Theta>, p: &[i32], a: T) -> Result<Self> {
        let m = mode(p)?;
        theta.check_mode(&m)?;
        let mut out = Self::zero(theta);
        out.insert(m, a);
        Ok(out)
    }

    pub fn constant(theta: &Arc<Theta>, a: T) -> Self {
        let mut out = Self::zero(theta);
        out.insert([0; MAX_DIM], a);
        out
    }

    pub fn n(&self) -> usize {
        self.theta.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `a` to the coefficient of U^m, pruning if it cancels.
    pub fn insert(&mut self, m: Mode, a: T) {
        match self.terms.get_mut(&m) {
            Some(v) => {
                v.add_to(&a);
                v.cleanup();
                if v.magnitude() < PRUNE {
                    self.terms.remove(&m);
                }
            }
            None => {
                let mut a = a;
                a.cleanup();
                if a.magnitude() >= PRUNE {
                    self.terms.insert(m, a);
                }
            }
        }
    }

    pub fn coeff(&self, m: &Mode) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
    }

    pub fn check_theta(&self, o: &Self) -> Result<()> {
        if !same_theta(&self.theta, &o.theta) {
            return Err(Error::input("theta", "operands live on different tori"));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_theta(o)?;
        let mut out = self.clone();
        for (m, a) in &o.terms {
            out.insert(*m, a.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(c(-1.0, 0.0)))
    }

    pub fn scale(&self, z: C64) -> Self {
        let mut out = Self::zero(&self.theta);
        for (m, a) in &self.terms {
            out.insert(*m, a.scaled(z));
        }
        out
    }

    /// Product with the deformed law U^p U^q = e^{iπθ(p,q)} U^{p+q}.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_theta(o)?;
        if self.is_empty() || o.is_empty() {
            return Ok(Self::zero(&self.theta));
        }
        let theta = &*self.theta;
        let n = theta.n;
        let (alo, ahi) = bounds(self.terms.keys(), n);
        let (blo, bhi) = bounds(o.terms.keys(), n);
        let mut ext = [1usize; MAX_DIM];
        let mut vol: usize = 1;
        for j in 0..n {
            ext[j] = (ahi[j] - alo[j] + bhi[j] - blo[j] + 1) as usize;
            vol = vol.saturating_mul(ext[j]);
        }
        let b: Vec<(&Mode, &T)> = o.terms.iter().collect();
        let mut table: Vec<Vec<C64>> = vec![Vec::new(); n];
        let phases = |p: &Mode, table: &mut Vec<Vec<C64>>| {
            // e^{iπθ(p,q)} factorizes over the components of q
            for j in 0..n {
                let t = std::f64::consts::PI * (0..n).map(|i| p[i] as f64 * theta.get(i, j)).sum::<f64>();
                table[j] = (blo[j]..=bhi[j]).map(|k| C64::from_polar(1.0, t * k as f64)).collect();
            }
        };
        let phase_of = |q: &Mode, table: &Vec<Vec<C64>>| {
            let mut ph = c(1.0, 0.0);
            for j in 0..n {
                ph *= table[j][(q[j] - blo[j]) as usize];
            }
            ph
        };
        let mut out = Self::zero(&self.theta);
        if vol <= 1 << 22 {
            let mut lo = [0i32; MAX_DIM];
            for j in 0..n {
                lo[j] = alo[j] + blo[j];
            }
            let idx = |m: &Mode| {
                let mut i = 0usize;
                for j in 0..n {
                    i = i * ext[j] + (m[j] - lo[j]) as usize;
                }
                i
            };
            let mut acc: Vec<Option<T>> = vec![None; vol];
            for (p, x) in &self.terms {
                phases(p, &mut table);
                for (q, y) in &b {
                    let v = x.times(y).scaled(phase_of(q, &table));
                    match &mut acc[idx(&add_modes(p, q))] {
                        Some(e) => e.add_to(&v),
                        slot => *slot = Some(v),
                    }
                }
            }
            for (i, v) in acc.into_iter().enumerate() {
                if let Some(mut v) = v {
                    v.cleanup();
                    if v.magnitude() >= PRUNE {
                        let mut m = [0i32; MAX_DIM];
                        let mut r = i;
                        for j in (0..n).rev() {
                            m[j] = lo[j] + (r % ext[j]) as i32;
                            r /= ext[j];
                        }
                        out.terms.insert(m, v);
                    }
                }
            }
        } else {
            let mut acc: HashMap<Mode, T> = HashMap::new();
            for (p, x) in &self.terms {
                phases(p, &mut table);
                for (q, y) in &b {
                    let v = x.times(y).scaled(phase_of(q, &table));
                    acc.entry(add_modes(p, q)).and_modify(|e| e.add_to(&v)).or_insert(v);
                }
                if acc.len() > MAX_TERMS {
                    return Err(Error::domain(format!("Fourier support exceeds {MAX_TERMS} terms")));
                }
            }
            for (m, mut v) in acc {
                v.cleanup();
                if v.magnitude() >= PRUNE {
                    out.terms.insert(m, v);
                }
            }
        }
        if out.len() > MAX_TERMS {
            return Err(Error::domain(format!("Fourier support exceeds {MAX_TERMS} terms")));
        }
        Ok(out)
    }

    pub fn comm(&self, o: &Self) -> Result<Self> {
        self.mul(o)?.sub(&o.mul(self)?)
    }

    /// ∂_μ U^p = 2iπ p_μ U^p.
    pub fn derive(&self, mu: usize) -> Result<Self> {
        if mu >= self.n() {
            return Err(Error::input("mu", format!("derivation index {mu} >= dimension {}", self.n())));
        }
        let mut out = Self::zero(&self.theta);
        for (m, a) in &self.terms {
            if m[mu] != 0 {
                out.insert(*m, a.scaled(c(0.0, 2.0 * std::f64::consts::PI * m[mu] as f64)));
            }
        }
        Ok(out)
    }

    /// τ(U^p) = δ_p.
    pub fn trace(&self) -> T {
        self.coeff(&[0; MAX_DIM])
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|a| a.magnitude()).fold(0.0, f64::max)
    }

    pub fn l1(&self) -> f64 {
        self.terms.values().map(|a| a.magnitude()).sum()
    }

    pub fn modes(&self) -> impl Iterator<Item = &Mode> {
        self.terms.keys()
    }

    pub fn map_coeffs<S: Coeff>(&self, f: impl Fn(&T) -> S) -> Poly<S> {
        let mut out = Poly::<S>::zero(&self.theta);
        for (m, a) in &self.terms {
            out.insert(*m, f(a));
        }
        out
    }
}

impl NCPoly {
    pub fn one(theta: &Arc<Theta>) -> Self {
        Self::constant(theta, c(1.0, 0.0))
    }

    /// (Σ a_p U^p)* = Σ conj(a_p) U^{-p}.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(&self.theta);
        for (m, a) in &self.terms {
            out.insert(neg_mode(m), a.conj());
        }
        out
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.sub(&self.star()).map(|d| d.max_abs() <= tol).unwrap_or(false)
    }

    pub fn lift(&self) -> GPoly {
        self.map_coeffs(|a| GrassmannPoly::scalar(*a))
    }

    pub fn random<R: Rng + ?Sized>(theta: &Arc<Theta>, nterms: usize, radius: i32, rng: &mut R) -> Self {
        let mut out = Self::zero(theta);
        for _ in 0..nterms {
            let mut m = [0i32; MAX_DIM];
            for x in m.iter_mut().take(theta.n) {
                *x = rng.random_range(-radius..=radius);
            }
            out.insert(m, random_complex(rng));
        }
        out
    }
}

pub fn nc_mul(a: &NCPoly, b: &NCPoly) -> Result<NCPoly> {
    a.mul(b)
}

pub fn nc_star(a: &NCPoly) -> NCPoly {
    a.star()
}

pub fn nc_trace(a: &NCPoly) -> C64 {
    a.trace()
}

pub fn nc_derive(a: &NCPoly, mu: usize) -> Result<NCPoly> {
    a.derive(mu)
}

pub fn nc_comm(a: &NCPoly, b: &NCPoly) -> Result<NCPoly> {
    a.comm(b)
}

/// Largest coefficient of a − b.
pub fn distance(a: &NCPoly, b: &NCPoly) -> Result<f64> {
    Ok(a.sub(b)?.max_abs())
}

pub fn has_zero_mode<T: Coeff>(a: &Poly<T>) -> bool {
    a.terms.keys().any(is_zero_mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn product_phase_third() {
        let t = Arc::new(Theta::two(1.0 / 3.0));
        let u1 = NCPoly::monomial(&t, &[1, 0], c(1.0, 0.0)).unwrap();
        let u2 = NCPoly::monomial(&t, &[0, 1], c(1.0, 0.0)).unwrap();
        let p = u1.mul(&u2).unwrap();
        let want = C64::from_polar(1.0, PI / 3.0);
        assert!((p.coeff(&mode(&[1, 1]).unwrap()) - want).norm() < 1e-15);
        let cm = u1.comm(&u2).unwrap();
        let s = 2.0 * (PI / 3.0).sin();
        assert!((cm.coeff(&mode(&[1, 1]).unwrap()) - c(0.0, s)).norm() < 1e-14);
    }

    #[test]
    fn unitary_monomials() {
        let t = Arc::new(Theta::two(0.29));
        let u = NCPoly::monomial(&t, &[2, -3], c(1.0, 0.0)).unwrap();
        assert!((u.mul(&u.star()).unwrap().trace() - c(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(u.trace(), c(0.0, 0.0));
    }

    #[test]
    fn commutative_at_zero_theta() {
        let t = Arc::new(Theta::zero(3).unwrap());
        let mut rng = rand::rng();
        let a = NCPoly::random(&t, 5, 2, &mut rng);
        let b = NCPoly::random(&t, 5, 2, &mut rng);
        assert!(a.comm(&b).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn theta_mismatch() {
        let a = NCPoly::one(&Arc::new(Theta::two(0.1)));
        let b = NCPoly::one(&Arc::new(Theta::two(0.2)));
        assert!(a.mul(&b).is_err());
    }
}
