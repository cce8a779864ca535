use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 8;

/// Integer Fourier mode. Only the first `n` slots are used; the rest stay zero.
pub type Mode = [i32; MAX_DIM];

pub fn mode(p: &[i32]) -> Result<Mode> {
    if p.len() > MAX_DIM {
        return Err(Error::input("p", format!("mode of length {} exceeds {MAX_DIM}", p.len())));
    }
    let mut m = [0i32; MAX_DIM];
    m[..p.len()].copy_from_slice(p);
    Ok(m)
}

pub fn add_modes(a: &Mode, b: &Mode) -> Mode {
    let mut m = [0i32; MAX_DIM];
    for k in 0..MAX_DIM {
        m[k] = a[k] + b[k];
    }
    m
}

pub fn neg_mode(a: &Mode) -> Mode {
    let mut m = *a;
    for x in m.iter_mut() {
        *x = -*x;
    }
    m
}

pub fn is_zero_mode(a: &Mode) -> bool {
    a.iter().all(|&x| x == 0)
}

/// Deformation matrix of the torus, stored row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Theta {
    pub n: usize,
    pub m: Vec<f64>,
}

impl Theta {
    pub fn new(n: usize, m: Vec<f64>) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::input("theta.n", format!("dimension {n} outside 1..={MAX_DIM}")));
        }
        if m.len() != n * n {
            return Err(Error::input("theta.matrix", format!("expected {} entries, got {}", n * n, m.len())));
        }
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (m[i * n + j], m[j * n + i]);
                if !a.is_finite() {
                    return Err(Error::input(format!("theta.matrix[{i}][{j}]"), "not finite"));
                }
                if (a + b).abs() > 1e-14 {
                    return Err(Error::input(format!("theta.matrix[{i}][{j}]"), "theta must be antisymmetric"));
                }
            }
        }
        Ok(Self { n, m })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut m = Vec::with_capacity(n * n);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::input(format!("theta.matrix[{i}]"), "matrix is not square"));
            }
            m.extend_from_slice(r);
        }
        Self::new(n, m)
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, vec![0.0; n * n])
    }

    /// n = 2 torus with θ₁₂ = t.
    pub fn two(t: f64) -> Self {
        Self { n: 2, m: vec![0.0, t, -t, 0.0] }
    }

    /// θ with θ₁₂ = a, θ₃₄ = b and zero elsewhere.
    pub fn block4(a: f64, b: f64) -> Self {
        let mut m = vec![0.0; 16];
        m[1] = a;
        m[4] = -a;
        m[2 * 4 + 3] = b;
        m[3 * 4 + 2] = -b;
        Self { n: 4, m }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m[i * self.n + j]
    }

    /// θ(p, q) = pᵀθq.
    pub fn form(&self, p: &Mode, q: &Mode) -> f64 {
        let n = self.n;
        let mut s = 0.0;
        for i in 0..n {
            if p[i] == 0 {
                continue;
            }
            let mut r = 0.0;
            for j in 0..n {
                r += self.m[i * n + j] * q[j] as f64;
            }
            s += p[i] as f64 * r;
        }
        s
    }

    pub fn sin(&self, p: &Mode, q: &Mode) -> f64 {
        (std::f64::consts::PI * self.form(p, q)).sin()
    }

    pub fn check_mode(&self, p: &Mode) -> Result<()> {
        if p[self.n..].iter().any(|&x| x != 0) {
            return Err(Error::input("p", format!("mode has components beyond dimension {}", self.n)));
        }
        Ok(())
    }
}

/// U^p is central iff θp is an integer vector.
pub fn center_test(p: &[i32], theta: &Theta) -> Result<bool> {
    if p.len() != theta.n {
        return Err(Error::input("p", format!("expected {} components", theta.n)));
    }
    let pm = mode(p)?;
    for i in 0..theta.n {
        let mut e = [0i32; MAX_DIM];
        e[i] = 1;
        let v = theta.form(&e, &pm);
        if (v - v.round()).abs() > 1e-12 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An integer matrix M induces an automorphism U^p -> U^{Mp} iff MᵀθM − θ is integral.
pub fn modular_compatible(mm: &[Vec<i64>], theta: &Theta) -> Result<bool> {
    let n = theta.n;
    if mm.len() != n || mm.iter().any(|r| r.len() != n) {
        return Err(Error::input("M", format!("expected a {n}x{n} integer matrix")));
    }
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for a in 0..n {
                for b in 0..n {
                    s += mm[a][i] as f64 * theta.get(a, b) * mm[b][j] as f64;
                }
            }
            let d = s - theta.get(i, j);
            if (d - d.round()).abs() > 1e-12 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn center_third() {
        let t = Theta::two(1.0 / 3.0);
        assert!(center_test(&[0, 0], &t).unwrap());
        assert!(center_test(&[3, 0], &t).unwrap());
        assert!(!center_test(&[1, 0], &t).unwrap());
    }

    #[test]
    fn sl2_is_compatible() {
        let t = Theta::two(0.37);
        assert!(modular_compatible(&[vec![2, 1], vec![1, 1]], &t).unwrap());
        assert!(modular_compatible(&[vec![0, -1], vec![1, 0]], &t).unwrap());
        assert!(!modular_compatible(&[vec![2, 0], vec![0, 1]], &t).unwrap());
    }

    #[test]
    fn rejects_symmetric() {
        assert!(Theta::new(2, vec![0.0, 1.0, 1.0, 0.0]).is_err());
    }
}
