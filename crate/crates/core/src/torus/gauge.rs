//! Connections, curvature, Yang-Mills and Chern-Simons functionals.

use std::f64::consts::PI;
use std::sync::Arc;

use rand::Rng;

use super::forms::epsilon;
use super::matpoly::MatNCPoly;
use super::poly::NCPoly;
use super::theta::Theta;
use crate::error::{Error, Result};
use crate::linalg::{c, random_unitary, CMatrix};

/// Tolerance on ‖e² − e‖₁ before a matrix is accepted as a projector.
pub const PROJECTOR_TOL: f64 = 1e-5;

/// Curvature table, `f[μ][ν]`.
pub type Curvature = Vec<Vec<MatNCPoly>>;

fn check_connection(a: &[MatNCPoly]) -> Result<(Arc<Theta>, usize)> {
    let first = a.first().ok_or_else(|| Error::input("A", "connection has no components"))?;
    let theta = first.theta.clone();
    if a.len() != theta.n {
        return Err(Error::input("A", format!("expected {} components, got {}", theta.n, a.len())));
    }
    for (mu, m) in a.iter().enumerate() {
        if m.size != first.size {
            return Err(Error::input(format!("A[{mu}]"), "inconsistent matrix size"));
        }
    }
    Ok((theta, first.size))
}

fn check_projector(e: &MatNCPoly, size: usize) -> Result<()> {
    if e.size != size {
        return Err(Error::input("e", "projector size differs from connection size"));
    }
    let d = e.idempotency_defect()?;
    if d > PROJECTOR_TOL {
        return Err(Error::domain(format!("projector error: ||e^2 - e||_1 = {d:.3e}")));
    }
    Ok(())
}

/// eXe, or X itself on the free module.
fn compress(x: &MatNCPoly, e: Option<&MatNCPoly>) -> Result<MatNCPoly> {
    match e {
        Some(e) => e.mul3(x, e),
        None => Ok(x.clone()),
    }
}

pub fn curvature(a: &[MatNCPoly], e: Option<&MatNCPoly>, g: f64) -> Result<Curvature> {
    let (theta, size) = check_connection(a)?;
    if let Some(e) = e {
        check_projector(e, size)?;
    }
    let n = theta.n;
    let ea: Vec<MatNCPoly> = a.iter().map(|x| compress(x, e)).collect::<Result<_>>()?;
    let de: Option<Vec<MatNCPoly>> = match e {
        Some(e) => Some((0..n).map(|mu| e.derive(mu)).collect::<Result<_>>()?),
        None => None,
    };
    let mut f = vec![vec![MatNCPoly::zero(&theta, size); n]; n];
    for mu in 0..n {
        for nu in mu + 1..n {
            let mut x = compress(&ea[nu].derive(mu)?.sub(&ea[mu].derive(nu)?)?, e)?;
            if let (Some(e), Some(de)) = (e, &de) {
                let w = de[mu].mul(&de[nu])?.sub(&de[nu].mul(&de[mu])?)?;
                x = x.add(&e.mul(&w)?)?;
            }
            x = x.add(&ea[mu].comm(&ea[nu])?.scale(c(g, 0.0)))?;
            f[nu][mu] = x.scale(c(-1.0, 0.0));
            f[mu][nu] = x;
        }
    }
    Ok(f)
}

/// −(1/4) Σ ∫tr F_{μν}F_{μν}; pass `prefactor = -0.5` for the other common normalization.
pub fn ym_action_with(a: &[MatNCPoly], e: Option<&MatNCPoly>, g: f64, prefactor: f64) -> Result<f64> {
    let f = curvature(a, e, g)?;
    let n = f.len();
    let mut s = 0.0;
    for mu in 0..n {
        for nu in 0..n {
            if mu != nu {
                s += f[mu][nu].mul(&f[mu][nu])?.integrate().re;
            }
        }
    }
    Ok(prefactor * s)
}

pub fn ym_action(a: &[MatNCPoly], e: Option<&MatNCPoly>, g: f64) -> Result<f64> {
    ym_action_with(a, e, g, -0.25)
}

/// e∂_μF_{μν}e + g[eA_μe, F_{μν}] for each ν. Zero iff A is stationary.
pub fn eom_residual(a: &[MatNCPoly], e: Option<&MatNCPoly>, g: f64) -> Result<Vec<MatNCPoly>> {
    let (theta, size) = check_connection(a)?;
    let f = curvature(a, e, g)?;
    let n = theta.n;
    let ea: Vec<MatNCPoly> = a.iter().map(|x| compress(x, e)).collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(n);
    for nu in 0..n {
        let mut r = MatNCPoly::zero(&theta, size);
        for mu in 0..n {
            if mu == nu {
                continue;
            }
            r = r.add(&compress(&f[mu][nu].derive(mu)?, e)?)?;
            r = r.add(&ea[mu].comm(&f[mu][nu])?.scale(c(g, 0.0)))?;
        }
        out.push(r);
    }
    Ok(out)
}

/// Largest coefficient of the cyclic sums e∂_μF_{ρσ}e + g[eA_μe, F_{ρσ}] + cyclic.
pub fn bianchi_residual(a: &[MatNCPoly], e: Option<&MatNCPoly>, g: f64) -> Result<f64> {
    let (theta, size) = check_connection(a)?;
    let f = curvature(a, e, g)?;
    let n = theta.n;
    let ea: Vec<MatNCPoly> = a.iter().map(|x| compress(x, e)).collect::<Result<_>>()?;
    let mut worst: f64 = 0.0;
    for m in 0..n {
        for r in m + 1..n {
            for s in r + 1..n {
                let mut acc = MatNCPoly::zero(&theta, size);
                for (x, y, z) in [(m, r, s), (r, s, m), (s, m, r)] {
                    acc = acc.add(&compress(&f[y][z].derive(x)?, e)?)?;
                    acc = acc.add(&ea[x].comm(&f[y][z])?.scale(c(g, 0.0)))?;
                }
                worst = worst.max(acc.max_abs());
            }
        }
    }
    Ok(worst)
}

fn check_unitary(u: &MatNCPoly) -> Result<()> {
    let d = u.mul(&u.star())?.sub(&MatNCPoly::identity(&u.theta, u.size))?.max_abs();
    if d > 1e-12 {
        return Err(Error::domain(format!("u is not unitary: ||uu* - 1|| = {d:.3e}")));
    }
    Ok(())
}

/// A'_μ = u A_μ u⁻¹ + (1/g) u ∂_μ u⁻¹.
pub fn gauge_transform(a: &[MatNCPoly], u: &MatNCPoly, g: f64) -> Result<Vec<MatNCPoly>> {
    let (_, size) = check_connection(a)?;
    if u.size != size {
        return Err(Error::input("u", "size differs from connection"));
    }
    if g == 0.0 {
        return Err(Error::input("g", "coupling must be nonzero"));
    }
    check_unitary(u)?;
    let ui = u.star();
    a.iter()
        .enumerate()
        .map(|(mu, am)| u.mul3(am, &ui)?.add(&u.mul(&ui.derive(mu)?)?.scale(c(1.0 / g, 0.0))))
        .collect()
}

/// (k/4π) ε^{λμν} ∫tr(A_λ∂_μA_ν + (2/3)A_λA_μA_ν), n = 3 only.
pub fn cs_action(a: &[MatNCPoly], k: f64) -> Result<f64> {
    let (theta, _) = check_connection(a)?;
    if theta.n != 3 {
        return Err(Error::domain(format!("Chern-Simons needs dimension 3, got {}", theta.n)));
    }
    let mut s = 0.0;
    for l in 0..3 {
        for m in 0..3 {
            for n in 0..3 {
                let eps = epsilon(&[l, m, n]);
                if eps == 0.0 {
                    continue;
                }
                let quad = a[l].mul(&a[n].derive(m)?)?.integrate();
                let cubic = a[l].mul3(&a[m], &a[n])?.integrate();
                s += eps * (quad + cubic * c(2.0 / 3.0, 0.0)).re;
            }
        }
    }
    Ok(k / (4.0 * PI) * s)
}

/// −(k/12π) ε^{λμν} ∫tr(u∂_λu⁻¹ u∂_μu⁻¹ u∂_νu⁻¹), which equals S_CS[A^u] − S_CS[A] at g = 1.
pub fn cs_gauge_defect(u: &MatNCPoly, k: f64) -> Result<f64> {
    if u.theta.n != 3 {
        return Err(Error::domain(format!("Chern-Simons needs dimension 3, got {}", u.theta.n)));
    }
    check_unitary(u)?;
    let ui = u.star();
    let w: Vec<MatNCPoly> = (0..3).map(|mu| u.mul(&ui.derive(mu)?)).collect::<Result<_>>()?;
    let mut s = 0.0;
    for l in 0..3 {
        for m in 0..3 {
            for n in 0..3 {
                let eps = epsilon(&[l, m, n]);
                if eps != 0.0 {
                    s += eps * w[l].mul3(&w[m], &w[n])?.integrate().re;
                }
            }
        }
    }
    Ok(-k / (12.0 * PI) * s)
}

/// diag(z_i U^{p_i}) with |z_i| = 1.
pub fn diagonal_monomial_unitary(theta: &Arc<Theta>, modes: &[Vec<i32>], phases: &[f64]) -> Result<MatNCPoly> {
    if modes.len() != phases.len() {
        return Err(Error::input("phases", "one phase per mode required"));
    }
    let n = modes.len();
    let mut u = MatNCPoly::zero(theta, n);
    for (i, (p, ph)) in modes.iter().zip(phases).enumerate() {
        u.set(i, i, NCPoly::monomial(theta, p, crate::linalg::C64::from_polar(1.0, *ph))?);
    }
    Ok(u)
}

/// V·diag(U^{p_i})·W with random constant unitaries V, W.
pub fn random_monomial_unitary<R: Rng + ?Sized>(theta: &Arc<Theta>, size: usize, radius: i32, rng: &mut R) -> Result<MatNCPoly> {
    let modes: Vec<Vec<i32>> = (0..size)
        .map(|_| (0..theta.n).map(|_| rng.random_range(-radius..=radius)).collect())
        .collect();
    let phases: Vec<f64> = (0..size).map(|_| rng.random_range(0.0..2.0 * PI)).collect();
    let d = diagonal_monomial_unitary(theta, &modes, &phases)?;
    let one = NCPoly::one(theta);
    let v: CMatrix = random_unitary(size, rng);
    let w: CMatrix = random_unitary(size, rng);
    MatNCPoly::from_matrix(theta, &v, &one)?.mul3(&d, &MatNCPoly::from_matrix(theta, &w, &one)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_connection() {
        let t = Arc::new(Theta::two(0.3));
        let a = vec![MatNCPoly::zero(&t, 2); 2];
        assert_eq!(ym_action(&a, None, 1.0).unwrap(), 0.0);
        assert!(eom_residual(&a, None, 1.0).unwrap().iter().all(|r| r.max_abs() == 0.0));
    }

    #[test]
    fn pure_gauge_from_monomial() {
        let t = Arc::new(Theta::new(3, vec![0.0, 0.2, 0.1, -0.2, 0.0, 0.4, -0.1, -0.4, 0.0]).unwrap());
        let a = vec![MatNCPoly::zero(&t, 1); 3];
        let u = MatNCPoly::scalar(&NCPoly::monomial(&t, &[1, -2, 3], c(1.0, 0.0)).unwrap());
        let g = 0.7;
        let ap = gauge_transform(&a, &u, g).unwrap();
        for (mu, p) in [1.0, -2.0, 3.0].iter().enumerate() {
            let want = c(0.0, -2.0 * PI * p / g);
            assert!((ap[mu].get(0, 0).trace() - want).norm() < 1e-13);
            assert_eq!(ap[mu].get(0, 0).len(), 1);
        }
    }

    #[test]
    fn action_is_nonnegative_and_gauge_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let t = Arc::new(Theta::new(3, vec![0.0, 0.31, -0.2, -0.31, 0.0, 0.17, 0.2, -0.17, 0.0]).unwrap());
        let a: Vec<MatNCPoly> = (0..3).map(|_| MatNCPoly::random_antihermitian(&t, 2, 3, 1, &mut rng)).collect();
        let s = ym_action(&a, None, 0.8).unwrap();
        assert!(s > 0.0);
        let u = random_monomial_unitary(&t, 2, 1, &mut rng).unwrap();
        let s2 = ym_action(&gauge_transform(&a, &u, 0.8).unwrap(), None, 0.8).unwrap();
        assert!((s - s2).abs() < 1e-8 * s.abs().max(1.0), "{s} vs {s2}");
    }

    #[test]
    fn cs_defect_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let t = Arc::new(Theta::new(3, vec![0.0, 0.25, 0.1, -0.25, 0.0, -0.3, -0.1, 0.3, 0.0]).unwrap());
        let a: Vec<MatNCPoly> = (0..3).map(|_| MatNCPoly::random_antihermitian(&t, 2, 3, 1, &mut rng)).collect();
        let u1 = random_monomial_unitary(&t, 2, 1, &mut rng).unwrap();
        let u2 = random_monomial_unitary(&t, 2, 1, &mut rng).unwrap();
        let u = u1.mul(&u2).unwrap();
        let lhs = cs_action(&gauge_transform(&a, &u, 1.0).unwrap(), 3.0).unwrap() - cs_action(&a, 3.0).unwrap();
        let rhs = cs_gauge_defect(&u, 3.0).unwrap();
        assert!((lhs - rhs).abs() < 1e-8, "{lhs} vs {rhs}");
    }
}
