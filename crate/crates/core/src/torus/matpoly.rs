use std::sync::Arc;

use rand::Rng;

use super::poly::NCPoly;
use super::theta::Theta;
use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix, C64};

/// N×N matrix over the torus algebra, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct MatNCPoly {
    pub theta: Arc<Theta>,
    pub size: usize,
    pub e: Vec<NCPoly>,
}

impl MatNCPoly {
    pub fn zero(theta: &Arc<Theta>, size: usize) -> Self {
        Self { theta: theta.clone(), size, e: vec![NCPoly::zero(theta); size * size] }
    }

    pub fn identity(theta: &Arc<Theta>, size: usize) -> Self {
        let mut m = Self::zero(theta, size);
        for i in 0..size {
            m.e[i * size + i] = NCPoly::one(theta);
        }
        m
    }

    pub fn scalar(a: &NCPoly) -> Self {
        Self { theta: a.theta.clone(), size: 1, e: vec![a.clone()] }
    }

    /// Constant matrix M times the algebra element a.
    pub fn from_matrix(theta: &Arc<Theta>, m: &CMatrix, a: &NCPoly) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::input("matrix", "not square"));
        }
        let size = m.nrows();
        let mut out = Self::zero(theta, size);
        for i in 0..size {
            for j in 0..size {
                out.e[i * size + j] = a.scale(m[(i, j)]);
            }
        }
        Ok(out)
    }

    pub fn get(&self, i: usize, j: usize) -> &NCPoly {
        &self.e[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, a: NCPoly) {
        self.e[i * self.size + j] = a;
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.size != o.size {
            return Err(Error::input("size", format!("matrix sizes {} and {} differ", self.size, o.size)));
        }
        if !super::poly::same_theta(&self.theta, &o.theta) {
            return Err(Error::input("theta", "operands live on different tori"));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let e = self.e.iter().zip(&o.e).map(|(a, b)| a.add(b)).collect::<Result<Vec<_>>>()?;
        Ok(Self { theta: self.theta.clone(), size: self.size, e })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(c(-1.0, 0.0)))
    }

    pub fn scale(&self, z: C64) -> Self {
        Self { theta: self.theta.clone(), size: self.size, e: self.e.iter().map(|a| a.scale(z)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let n = self.size;
        let mut out = Self::zero(&self.theta, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = NCPoly::zero(&self.theta);
                for k in 0..n {
                    let (a, b) = (self.get(i, k), o.get(k, j));
                    if a.is_empty() || b.is_empty() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b)?)?;
                }
                out.e[i * n + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn mul3(&self, b: &Self, d: &Self) -> Result<Self> {
        self.mul(b)?.mul(d)
    }

    pub fn comm(&self, o: &Self) -> Result<Self> {
        self.mul(o)?.sub(&o.mul(self)?)
    }

    /// Conjugate transpose with entrywise star.
    pub fn star(&self) -> Self {
        let n = self.size;
        let mut out = Self::zero(&self.theta, n);
        for i in 0..n {
            for j in 0..n {
                out.e[j * n + i] = self.get(i, j).star();
            }
        }
        out
    }

    pub fn derive(&self, mu: usize) -> Result<Self> {
        let e = self.e.iter().map(|a| a.derive(mu)).collect::<Result<Vec<_>>>()?;
        Ok(Self { theta: self.theta.clone(), size: self.size, e })
    }

    /// Matrix trace, still an algebra element.
    pub fn tr(&self) -> NCPoly {
        let mut acc = NCPoly::zero(&self.theta);
        for i in 0..self.size {
            acc = acc.add(self.get(i, i)).expect("shared theta");
        }
        acc
    }

    /// ∫ tr.
    pub fn integrate(&self) -> C64 {
        (0..self.size).map(|i| self.get(i, i).trace()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.e.iter().map(|a| a.max_abs()).fold(0.0, f64::max)
    }

    /// Σ of absolute Fourier coefficients; bounds the C*-norm from above.
    pub fn l1(&self) -> f64 {
        self.e.iter().map(|a| a.l1()).sum()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.sub(&self.star()).map(|d| d.max_abs() <= tol).unwrap_or(false)
    }

    pub fn is_antihermitian(&self, tol: f64) -> bool {
        self.add(&self.star()).map(|d| d.max_abs() <= tol).unwrap_or(false)
    }

    /// ℓ¹ size of e² − e.
    pub fn idempotency_defect(&self) -> Result<f64> {
        Ok(self.mul(self)?.sub(self)?.l1())
    }

    pub fn total_terms(&self) -> usize {
        self.e.iter().map(|a| a.len()).sum()
    }

    /// Random antihermitian matrix with entries of the given support.
    pub fn random_antihermitian<R: Rng + ?Sized>(
        theta: &Arc<Theta>,
        size: usize,
        nterms: usize,
        radius: i32,
        rng: &mut R,
    ) -> Self {
        let mut m = Self::zero(theta, size);
        for i in 0..size {
            for j in 0..size {
                m.e[i * size + j] = NCPoly::random(theta, nterms, radius, rng);
            }
        }
        m.sub(&m.star()).unwrap().scale(c(0.5, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_is_involution() {
        let t = Arc::new(Theta::two(0.3));
        let mut rng = rand::rng();
        let a = MatNCPoly::random_antihermitian(&t, 2, 4, 2, &mut rng);
        assert!(a.is_antihermitian(1e-15));
        assert!(a.star().star().sub(&a).unwrap().max_abs() < 1e-15);
    }
}
