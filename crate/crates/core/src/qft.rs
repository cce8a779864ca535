//! Momentum-space Feynman rules for Yang-Mills on the noncommutative torus.
//!
//! Euclidean metric, phases sin(πθ(p,q)), vertices are −∂ⁿS with respect to the mode
//! coefficients A_μ^p of A_μ = Σ A_μ^p U^p.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::torus::poly::NCPoly;
use crate::torus::theta::{mode, Mode, Theta};
use crate::torus::MatNCPoly;
use crate::linalg::{c, C64};

fn dim_check(theta: &Theta, ps: &[&[i32]]) -> Result<Vec<Mode>> {
    ps.iter()
        .enumerate()
        .map(|(k, p)| {
            if p.len() != theta.n {
                return Err(Error::input(format!("p[{k}]"), format!("expected {} components", theta.n)));
            }
            mode(p)
        })
        .collect()
}

fn conserved(ps: &[Mode]) -> bool {
    (0..ps[0].len()).all(|j| ps.iter().map(|p| p[j] as i64).sum::<i64>() == 0)
}

fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

fn p2(p: &[i32]) -> f64 {
    p.iter().map(|&x| (x as f64) * (x as f64)).sum()
}

/// −(4π²/p²)(δ_μν − (1 − α) p_μp_ν/p²).
pub fn gluon_propagator(p: &[i32], mu: usize, nu: usize, alpha: f64) -> Result<f64> {
    if p.iter().all(|&x| x == 0) {
        return Err(Error::domain("zero mode has no propagator"));
    }
    if mu >= p.len() || nu >= p.len() {
        return Err(Error::input("mu", "index out of range"));
    }
    let q = p2(p);
    Ok(-4.0 * PI * PI / q * (delta(mu, nu) - (1.0 - alpha) * p[mu] as f64 * p[nu] as f64 / q))
}

pub fn ghost_propagator(p: &[i32]) -> Result<f64> {
    if p.iter().all(|&x| x == 0) {
        return Err(Error::domain("zero mode has no propagator"));
    }
    Ok(-4.0 * PI * PI / p2(p))
}

/// −4πg[(p−r)_ν δ_μρ + (q−p)_ρ δ_μν + (r−q)_μ δ_νρ] sin(πθ(p,q)) δ(p+q+r).
pub fn vertex3(theta: &Theta, p: &[i32], q: &[i32], r: &[i32], idx: [usize; 3], g: f64) -> Result<f64> {
    let m = dim_check(theta, &[p, q, r])?;
    if !conserved(&m) {
        return Ok(0.0);
    }
    let [mu, nu, rho] = idx;
    let t = (p[nu] - r[nu]) as f64 * delta(mu, rho)
        + (q[rho] - p[rho]) as f64 * delta(mu, nu)
        + (r[mu] - q[mu]) as f64 * delta(nu, rho);
    Ok(-4.0 * PI * g * t * theta.sin(&m[0], &m[1]))
}

/// −4g² Σ over the three pairings of sin(πθ(a,b)) sin(πθ(c,d)) (δ_ac δ_bd − δ_ad δ_bc).
pub fn vertex4(theta: &Theta, ps: [&[i32]; 4], idx: [usize; 4], g: f64) -> Result<f64> {
    let m = dim_check(theta, &ps)?;
    if !conserved(&m) {
        return Ok(0.0);
    }
    let mut s = 0.0;
    for (a, b, cc, d) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
        let tensor = delta(idx[a], idx[cc]) * delta(idx[b], idx[d]) - delta(idx[a], idx[d]) * delta(idx[b], idx[cc]);
        if tensor != 0.0 {
            s += theta.sin(&m[a], &m[b]) * theta.sin(&m[cc], &m[d]) * tensor;
        }
    }
    Ok(-4.0 * g * g * s)
}

/// Ghost p, gluon (q, μ), antighost r: 4πg r_μ sin(πθ(p,q)) δ(p+q+r).
pub fn ghost_vertex(theta: &Theta, p: &[i32], q: &[i32], r: &[i32], mu: usize, g: f64) -> Result<f64> {
    let m = dim_check(theta, &[p, q, r])?;
    if !conserved(&m) {
        return Ok(0.0);
    }
    Ok(4.0 * PI * g * r[mu] as f64 * theta.sin(&m[0], &m[1]))
}

/// Polynomial pieces of S_YM = S2 + S3 + S4 at coupling g, computed on the torus algebra.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ActionPieces {
    pub quadratic: f64,
    pub cubic: f64,
    pub quartic: f64,
}

/// S_YM split by order in A for a U(1) field (one NCPoly per direction).
pub fn action_pieces(a: &[NCPoly], g: f64) -> Result<ActionPieces> {
    let s = action_pieces_complex(a, g)?;
    Ok(ActionPieces { quadratic: s[0].re, cubic: s[1].re, quartic: s[2].re })
}

/// Same split, kept complex so that non-Hermitian test fields can be compared exactly.
pub fn action_pieces_complex(a: &[NCPoly], g: f64) -> Result<[C64; 3]> {
    let n = a.len();
    let mut s = [c(0.0, 0.0); 3];
    for mu in 0..n {
        for nu in 0..n {
            if mu == nu {
                continue;
            }
            let f0 = a[nu].derive(mu)?.sub(&a[mu].derive(nu)?)?;
            let f1 = a[mu].comm(&a[nu])?.scale(c(g, 0.0));
            s[0] += f0.mul(&f0)?.trace();
            s[1] += f0.mul(&f1)?.trace() * c(2.0, 0.0);
            s[2] += f1.mul(&f1)?.trace();
        }
    }
    Ok(s.map(|x| x * -0.25))
}

/// Σ_{p,q,r} V3 A^p A^q A^r / 3!, with `a[μ]` the mode coefficients.
pub fn contract_vertex3(theta: &Theta, a: &[NCPoly], g: f64) -> Result<C64> {
    let n = a.len();
    let mut s = c(0.0, 0.0);
    for (i, ai) in a.iter().enumerate() {
        for (j, aj) in a.iter().enumerate() {
            for (k, ak) in a.iter().enumerate() {
                for (p, x) in &ai.terms {
                    for (q, y) in &aj.terms {
                        let mut r = [0i32; crate::torus::theta::MAX_DIM];
                        for t in 0..n {
                            r[t] = -p[t] - q[t];
                        }
                        if let Some(z) = ak.terms.get(&r) {
                            let v = vertex3(theta, &p[..n], &q[..n], &r[..n], [i, j, k], g)?;
                            s += x * y * z * v;
                        }
                    }
                }
            }
        }
    }
    Ok(s / 6.0)
}

/// Σ V4 AAAA / 4!.
pub fn contract_vertex4(theta: &Theta, a: &[NCPoly], g: f64) -> Result<C64> {
    let n = a.len();
    let mut s = c(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    for (p, x) in &a[i].terms {
                        for (q, y) in &a[j].terms {
                            for (r, z) in &a[k].terms {
                                let mut t4 = [0i32; crate::torus::theta::MAX_DIM];
                                for t in 0..n {
                                    t4[t] = -p[t] - q[t] - r[t];
                                }
                                if let Some(w) = a[l].terms.get(&t4) {
                                    let v = vertex4(theta, [&p[..n], &q[..n], &r[..n], &t4[..n]], [i, j, k, l], g)?;
                                    s += x * y * z * w * v;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(s / 24.0)
}

/// Cubic ghost term g τ(C̄ ∂_μ[A_μ, C]) with commuting stand-ins for the ghost modes.
pub fn ghost_cubic_action(a: &[NCPoly], cfield: &NCPoly, cbar: &NCPoly, g: f64) -> Result<C64> {
    let mut s = c(0.0, 0.0);
    for (mu, am) in a.iter().enumerate() {
        s += cbar.mul(&am.comm(cfield)?.derive(mu)?)?.trace() * g;
    }
    Ok(s)
}

/// Σ V_gh c_p A_μ^q c̄_r over conserving triples.
pub fn contract_ghost_vertex(theta: &Theta, a: &[NCPoly], cfield: &NCPoly, cbar: &NCPoly, g: f64) -> Result<C64> {
    let n = a.len();
    let mut s = c(0.0, 0.0);
    for (mu, am) in a.iter().enumerate() {
        for (p, x) in &cfield.terms {
            for (q, y) in &am.terms {
                let mut r = [0i32; crate::torus::theta::MAX_DIM];
                for t in 0..n {
                    r[t] = -p[t] - q[t];
                }
                if let Some(z) = cbar.terms.get(&r) {
                    s += x * y * z * ghost_vertex(theta, &p[..n], &q[..n], &r[..n], mu, g)?;
                }
            }
        }
    }
    Ok(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct ReconstructionReport {
    pub cubic_action: f64,
    pub cubic_from_vertex: f64,
    pub quartic_action: f64,
    pub quartic_from_vertex: f64,
    pub ghost_action: f64,
    pub ghost_from_vertex: f64,
    pub max_error: f64,
}

/// Vertices contracted with the fields reproduce −S3, −S4 and −S_gh.
pub fn reconstruction_check(a: &[NCPoly], cfield: &NCPoly, cbar: &NCPoly, g: f64) -> Result<ReconstructionReport> {
    let theta = a.first().ok_or_else(|| Error::input("A", "no components"))?.theta.clone();
    let pieces = action_pieces_complex(a, g)?;
    let v3 = contract_vertex3(&theta, a, g)?;
    let v4 = contract_vertex4(&theta, a, g)?;
    let gh = ghost_cubic_action(a, cfield, cbar, g)?;
    let vg = contract_ghost_vertex(&theta, a, cfield, cbar, g)?;
    let errs = [
        (v3 + pieces[1]).norm(),
        (v4 + pieces[2]).norm(),
        (vg + gh).norm(),
    ];
    Ok(ReconstructionReport {
        cubic_action: pieces[1].re,
        cubic_from_vertex: -v3.re,
        quartic_action: pieces[2].re,
        quartic_from_vertex: -v4.re,
        ghost_action: gh.re,
        ghost_from_vertex: -vg.re,
        max_error: errs.iter().cloned().fold(0.0, f64::max),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LoopProbe {
    pub cutoff: i32,
    pub partial: f64,
    pub doubled_cutoff: i32,
    pub partial_doubled: f64,
    pub internal_modes: usize,
}

/// Gluon-loop magnitude Σ_k Σ_{indices} |V3(p,k,−p−k)|² |D(k)| |D(p+k)| (Feynman gauge) over
/// nonzero internal modes with |k|∞ ≤ K; reported at K and 2K.
pub fn loop_sum_probe(theta: &Theta, p_ext: &[i32], k: i32, g: f64) -> Result<LoopProbe> {
    if theta.n != 4 {
        return Err(Error::domain("loop probe is defined for n = 4"));
    }
    if p_ext.len() != 4 || p_ext.iter().all(|&x| x == 0) {
        return Err(Error::input("p_ext", "need a nonzero 4-vector"));
    }
    if k < 1 {
        return Err(Error::input("K", "cutoff must be positive"));
    }
    // one slab per first coordinate, summed in slab order so the result does not depend on the pool size
    let slab = |kk: i32, a: i32| -> Result<(f64, usize)> {
        let mut s = 0.0;
        let mut count = 0;
        for b in -kk..=kk {
            for cc in -kk..=kk {
                for d in -kk..=kk {
                    let q = [a, b, cc, d];
                    let r: Vec<i32> = (0..4).map(|j| -p_ext[j] - q[j]).collect();
                    if q.iter().all(|&x| x == 0) || r.iter().all(|&x| x == 0) {
                        continue;
                    }
                    count += 1;
                    let prop = ghost_propagator(&q)?.abs() * ghost_propagator(&r)?.abs();
                    let mut v2 = 0.0;
                    for mu in 0..4 {
                        for nu in 0..4 {
                            for rho in 0..4 {
                                let v = vertex3(theta, p_ext, &q, &r, [mu, nu, rho], g)?;
                                v2 += v * v;
                            }
                        }
                    }
                    s += v2 * prop;
                }
            }
        }
        Ok((s, count))
    };
    let sum = |kk: i32| -> Result<(f64, usize)> {
        let parts: Vec<Result<(f64, usize)>> = (-kk..=kk).into_par_iter().map(|a| slab(kk, a)).collect();
        let mut total = (0.0, 0);
        for p in parts {
            let (s, n) = p?;
            total.0 += s;
            total.1 += n;
        }
        Ok(total)
    };
    let (s1, _) = sum(k)?;
    let (s2, count) = sum(2 * k)?;
    Ok(LoopProbe { cutoff: k, partial: s1, doubled_cutoff: 2 * k, partial_doubled: s2, internal_modes: count })
}

/// Distinct values of sin(πθ(p,q)) over |p|∞, |q|∞ ≤ radius, rounded to 1e-12.
pub fn sin_value_set(theta: &Theta, radius: i32) -> Vec<f64> {
    let n = theta.n;
    let mut modes: Vec<Mode> = vec![[0; crate::torus::theta::MAX_DIM]];
    for j in 0..n {
        let mut next = Vec::new();
        for m in &modes {
            for v in -radius..=radius {
                let mut x = *m;
                x[j] = v;
                next.push(x);
            }
        }
        modes = next;
    }
    let mut vals: Vec<i64> = Vec::new();
    for p in &modes {
        for q in &modes {
            vals.push((theta.sin(p, q) * 1e12).round() as i64);
        }
    }
    vals.sort_unstable();
    vals.dedup();
    vals.into_iter().map(|v| v as f64 * 1e-12).collect()
}

/// Scalar fields A_μ from a U(1) connection.
pub fn abelian_components(a: &[MatNCPoly]) -> Result<Vec<NCPoly>> {
    a.iter()
        .enumerate()
        .map(|(mu, m)| {
            if m.size != 1 {
                return Err(Error::input(format!("A[{mu}]"), "Feynman rules are for N = 1"));
            }
            Ok(m.get(0, 0).clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn feynman_gauge_propagator() {
        assert!((gluon_propagator(&[1, 0, 0, 0], 0, 0, 1.0).unwrap() + 4.0 * PI * PI).abs() < 1e-12);
        assert!((ghost_propagator(&[0, 1, 0]).unwrap() + 4.0 * PI * PI).abs() < 1e-12);
        assert!(gluon_propagator(&[0, 0], 0, 0, 1.0).is_err());
    }

    #[test]
    fn vanish_at_zero_theta() {
        let t = Theta::zero(4).unwrap();
        let v = vertex3(&t, &[1, 0, 2, 0], &[0, 1, -1, 0], &[-1, -1, -1, 0], [0, 1, 1], 1.0).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn non_conserving_is_zero() {
        let t = Theta::two(0.3);
        assert_eq!(vertex3(&t, &[1, 0], &[0, 1], &[0, 0], [0, 0, 1], 1.0).unwrap(), 0.0);
    }
}
