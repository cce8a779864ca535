//! Distances between pure states of Mₙ(ℂ) ⊕ ℂ with Δ = [[0, m], [m*, 0]].

use super::lmi::maximize_linear;
use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix, C64, I};

/// Gate tolerance for the proportionality and overlap tests.
pub const GATE_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub enum McState {
    /// The unique pure state of ℂ.
    Point,
    /// Vector state of Mₙ(ℂ).
    Vector(Vec<C64>),
}

fn unit(v: &[C64], path: &str) -> Result<Vec<C64>> {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::input(path, "state vector must be nonzero and finite"));
    }
    Ok(v.iter().map(|z| z / n).collect())
}

fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn check_dims(m: &[C64], s: &McState, path: &str) -> Result<()> {
    if let McState::Vector(v) = s {
        if v.len() != m.len() {
            return Err(Error::input(path, format!("expected a vector of length {}", m.len())));
        }
    }
    Ok(())
}

pub fn distance_mn_plus_c(m: &[C64], a: &McState, b: &McState) -> Result<f64> {
    if m.is_empty() {
        return Err(Error::input("m", "m must have at least one component"));
    }
    check_dims(m, a, "state1")?;
    check_dims(m, b, "state2")?;
    let mn = m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    match (a, b) {
        (McState::Point, McState::Point) => Ok(0.0),
        (McState::Point, McState::Vector(x)) | (McState::Vector(x), McState::Point) => {
            if mn == 0.0 {
                return Ok(f64::INFINITY);
            }
            let x = unit(x, "state")?;
            let mh: Vec<C64> = m.iter().map(|z| z / mn).collect();
            if (1.0 - inner(&mh, &x).norm()).abs() <= GATE_TOL {
                Ok(1.0 / mn)
            } else {
                Ok(f64::INFINITY)
            }
        }
        (McState::Vector(x), McState::Vector(z)) => {
            let (x, z) = (unit(x, "state1")?, unit(z, "state2")?);
            let ov = inner(&x, &z).norm_sqr().min(1.0);
            if 1.0 - ov <= GATE_TOL {
                return Ok(0.0);
            }
            if mn == 0.0 {
                return Ok(f64::INFINITY);
            }
            // the block of ξξ* − ζζ* orthogonal to m is unconstrained by [Δ, ·]
            let n = m.len();
            let mh: Vec<C64> = m.iter().map(|w| w / mn).collect();
            let w = CMatrix::from_fn(n, n, |r, s| x[r] * x[s].conj() - z[r] * z[s].conj());
            let mv = CMatrix::from_column_slice(n, 1, &mh);
            let p = CMatrix::identity(n, n) - &mv * mv.adjoint();
            let perp = &p * &w * &p;
            if crate::linalg::frob(&perp) > GATE_TOL {
                return Ok(f64::INFINITY);
            }
            Ok(2.0 / mn * (1.0 - ov).sqrt())
        }
    }
}

/// Real coordinates of Hermitian n×n matrices: diagonal, then Re and Im of the upper triangle.
fn hermitian_basis(n: usize) -> Vec<CMatrix> {
    let mut out = vec![];
    for a in 0..n {
        let mut e = CMatrix::zeros(n, n);
        e[(a, a)] = c(1.0, 0.0);
        out.push(e);
    }
    for a in 0..n {
        for b in a + 1..n {
            let mut e = CMatrix::zeros(n, n);
            e[(a, b)] = c(1.0, 0.0);
            e[(b, a)] = c(1.0, 0.0);
            out.push(e);
            let mut f = CMatrix::zeros(n, n);
            f[(a, b)] = -I;
            f[(b, a)] = I;
            out.push(f);
        }
    }
    out
}

/// Brute-force oracle: optimize over self-adjoint (y, λ) ∈ Mₙ(ℂ) ⊕ ℂ directly.
pub fn distance_mn_plus_c_numeric(m: &[C64], a: &McState, b: &McState, tol: f64) -> Result<f64> {
    let n = m.len();
    check_dims(m, a, "state1")?;
    check_dims(m, b, "state2")?;
    let mut delta = CMatrix::zeros(n + 1, n + 1);
    for k in 0..n {
        delta[(k, n)] = m[k];
        delta[(n, k)] = m[k].conj();
    }
    let basis = hermitian_basis(n);
    let mut gens = vec![];
    let mut coords = vec![];
    let eval = |s: &McState, y: &CMatrix, lam: f64| -> Result<f64> {
        Ok(match s {
            McState::Point => lam,
            McState::Vector(v) => {
                let v = unit(v, "state")?;
                let yv = y * CMatrix::from_column_slice(n, 1, &v);
                inner(&v, yv.as_slice()).re
            }
        })
    };
    for e in &basis {
        let mut a_op = CMatrix::zeros(n + 1, n + 1);
        a_op.view_mut((0, 0), (n, n)).copy_from(e);
        gens.push((&delta * &a_op - &a_op * &delta) * I);
        coords.push(eval(a, e, 0.0)? - eval(b, e, 0.0)?);
    }
    let mut lam_op = CMatrix::zeros(n + 1, n + 1);
    lam_op[(n, n)] = c(1.0, 0.0);
    gens.push((&delta * &lam_op - &lam_op * &delta) * I);
    let z = CMatrix::zeros(n, n);
    coords.push(eval(a, &z, 1.0)? - eval(b, &z, 1.0)?);
    // sup |φ(x) − ψ(x)| is attained on either sign of the objective
    let s = maximize_linear(&gens, &coords, tol);
    Ok(s.value.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[f64]) -> McState {
        McState::Vector(x.iter().map(|&r| c(r, 0.0)).collect())
    }

    #[test]
    fn point_state() {
        let m = [c(1.0, 0.0), c(0.0, 0.0)];
        assert_eq!(distance_mn_plus_c(&m, &McState::Point, &v(&[1.0, 0.0])).unwrap(), 1.0);
        assert!(distance_mn_plus_c(&m, &McState::Point, &v(&[1.0, 1.0])).unwrap().is_infinite());
        let num = distance_mn_plus_c_numeric(&m, &McState::Point, &v(&[1.0, 0.0]), 1e-9).unwrap();
        assert!((num - 1.0).abs() < 1e-7);
    }

    #[test]
    fn two_vector_states() {
        let m = [c(1.0, 0.0), c(0.0, 0.0)];
        let d = distance_mn_plus_c(&m, &v(&[1.0, 1.0]), &v(&[1.0, -1.0])).unwrap();
        assert!((d - 2.0).abs() < 1e-15);
        let num = distance_mn_plus_c_numeric(&m, &v(&[1.0, 1.0]), &v(&[1.0, -1.0]), 1e-9).unwrap();
        assert!((num - d).abs() < 1e-6 * d, "{num}");
        assert!(distance_mn_plus_c(&m, &v(&[1.0, 0.0]), &v(&[1.0, 1.0])).unwrap().is_infinite());
        assert!(distance_mn_plus_c_numeric(&m, &v(&[1.0, 0.0]), &v(&[1.0, 1.0]), 1e-9).unwrap().is_infinite());
    }

    #[test]
    fn zero_m() {
        let m = [c(0.0, 0.0), c(0.0, 0.0)];
        assert!(distance_mn_plus_c(&m, &McState::Point, &v(&[1.0, 0.0])).unwrap().is_infinite());
    }
}
