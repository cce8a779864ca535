//! Projectors, Chern pairings and the orientation cycle.

use std::f64::consts::PI;
use std::collections::HashMap;
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use super::forms::perm_sign;
use super::matpoly::MatNCPoly;
use super::poly::NCPoly;
use super::theta::{add_modes, mode, neg_mode, Mode, Theta, MAX_DIM};
use crate::error::{Error, Result};
use crate::linalg::{c, kron, CMatrix, C64, I};

fn bounding_box(a: &NCPoly, n: usize) -> ([i32; MAX_DIM], [i32; MAX_DIM]) {
    let mut lo = [0i32; MAX_DIM];
    let mut hi = [0i32; MAX_DIM];
    for (k, m) in a.terms.keys().enumerate() {
        for j in 0..n {
            if k == 0 || m[j] < lo[j] {
                lo[j] = m[j];
            }
            if k == 0 || m[j] > hi[j] {
                hi[j] = m[j];
            }
        }
    }
    (lo, hi)
}

/// Dense copy of z on its bounding box, for constant-time lookups.
struct DenseIndex {
    n: usize,
    lo: [i32; MAX_DIM],
    ext: [usize; MAX_DIM],
    data: Vec<C64>,
}

impl DenseIndex {
    fn build(z: &NCPoly) -> Option<Self> {
        let n = z.theta.n;
        let (lo, hi) = bounding_box(z, n);
        let mut ext = [1usize; MAX_DIM];
        let mut vol = 1usize;
        for j in 0..n {
            ext[j] = (hi[j] - lo[j] + 1) as usize;
            vol = vol.checked_mul(ext[j])?;
        }
        if vol > 1 << 24 {
            return None;
        }
        let mut d = Self { n, lo, ext, data: vec![c(0.0, 0.0); vol] };
        for (m, v) in &z.terms {
            let i = d.index(m).unwrap();
            d.data[i] = *v;
        }
        Some(d)
    }

    #[inline]
    fn index(&self, m: &Mode) -> Option<usize> {
        let mut i = 0usize;
        for j in 0..self.n {
            let k = m[j] - self.lo[j];
            if k < 0 || k as usize >= self.ext[j] {
                return None;
            }
            i = i * self.ext[j] + k as usize;
        }
        Some(i)
    }
}

/// τ(xyz) without forming the product.
pub fn triple_trace(x: &NCPoly, y: &NCPoly, z: &NCPoly) -> C64 {
    if x.is_empty() || y.is_empty() || z.is_empty() {
        return c(0.0, 0.0);
    }
    let theta = &*x.theta;
    let n = theta.n;
    let dense = DenseIndex::build(z);
    let hashed: Option<HashMap<Mode, C64>> = match dense {
        Some(_) => None,
        None => Some(z.terms.iter().map(|(m, v)| (*m, *v)).collect()),
    };
    let lookup = |r: &Mode| -> Option<C64> {
        match (&dense, &hashed) {
            (Some(d), _) => d.index(r).map(|i| d.data[i]).filter(|v| *v != c(0.0, 0.0)),
            (_, Some(h)) => h.get(r).copied(),
            _ => None,
        }
    };
    let (ylo, yhi) = bounding_box(y, n);
    let ys: Vec<(&Mode, &C64)> = y.terms.iter().collect();
    let mut s = c(0.0, 0.0);
    let mut table: Vec<Vec<C64>> = vec![Vec::new(); n];
    for (p, a) in &x.terms {
        // e^{iπθ(p,q)} factorizes over the components of q
        for j in 0..n {
            let t = PI * (0..n).map(|i| p[i] as f64 * theta.get(i, j)).sum::<f64>();
            table[j] = (ylo[j]..=yhi[j]).map(|k| C64::from_polar(1.0, t * k as f64)).collect();
        }
        let mut acc = c(0.0, 0.0);
        for (q, b) in &ys {
            let r = neg_mode(&add_modes(p, q));
            if let Some(w) = lookup(&r) {
                let mut ph = c(1.0, 0.0);
                for j in 0..n {
                    ph *= table[j][(q[j] - ylo[j]) as usize];
                }
                acc += *b * w * ph;
            }
        }
        s += *a * acc;
    }
    s
}

/// ∫tr(XYZ) for matrices.
pub fn triple_trace_mat(x: &MatNCPoly, y: &MatNCPoly, z: &MatNCPoly) -> C64 {
    let n = x.size;
    let mut s = c(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (a, b, d) = (x.get(i, j), y.get(j, k), z.get(k, i));
                if !(a.is_empty() || b.is_empty() || d.is_empty()) {
                    s += triple_trace(a, b, d);
                }
            }
        }
    }
    s
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct TopologicalCharge {
    /// First Chern table c_{μν}.
    pub c: Vec<Vec<f64>>,
    /// Second pairing, n = 4 only.
    pub q: Option<f64>,
    /// ∫tr e.
    pub rank: f64,
    /// ‖e² − e‖₁.
    pub defect: f64,
    /// First-order error estimate on c.
    pub c_error: f64,
    pub q_error: Option<f64>,
}

pub fn topological_charge(e: &MatNCPoly) -> Result<TopologicalCharge> {
    let n = e.theta.n;
    let defect = e.idempotency_defect()?;
    let de: Vec<MatNCPoly> = (0..n).map(|mu| e.derive(mu)).collect::<Result<_>>()?;
    let mut table = vec![vec![0.0; n]; n];
    for mu in 0..n {
        for nu in mu + 1..n {
            let v = (triple_trace_mat(e, &de[mu], &de[nu]) - triple_trace_mat(e, &de[nu], &de[mu])) / c(0.0, 2.0 * PI);
            table[mu][nu] = v.re;
            table[nu][mu] = -v.re;
        }
    }
    let dmax = de.iter().map(|d| d.l1()).fold(0.0, f64::max);
    let c_error = 3.0 * defect * dmax * dmax / PI;
    let (q, q_error) = if n == 4 {
        let mut w = std::collections::BTreeMap::new();
        for a in 0..4 {
            for b in a + 1..4 {
                w.insert((a, b), de[a].mul(&de[b])?.sub(&de[b].mul(&de[a])?)?);
            }
        }
        let mut s = c(0.0, 0.0);
        for ((a, b), wab) in &w {
            for ((cc, d), wcd) in &w {
                let eps = perm_sign(&[*a, *b, *cc, *d]);
                if eps != 0 {
                    s += triple_trace_mat(e, wab, wcd) * c(eps as f64, 0.0);
                }
            }
        }
        let q = s.re / (8.0 * PI * PI);
        (Some(q), Some(5.0 * 24.0 * defect * dmax.powi(4) / (8.0 * PI * PI)))
    } else {
        (None, None)
    };
    Ok(TopologicalCharge { c: table, q, rank: e.integrate().re, defect, c_error, q_error })
}

/// exp(−1/x) step: 0 at 0, 1 at 1, all derivatives vanish at both ends.
pub fn smooth_step(t: f64) -> f64 {
    let psi = |x: f64| if x <= 0.0 { 0.0 } else { (-1.0 / x).exp() };
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        psi(t) / (psi(t) + psi(1.0 - t))
    }
}

/// Profiles (f, g) on the circle [0, 1).
pub fn pr_profiles(lambda: f64, ramp: f64, x: f64) -> (f64, f64) {
    let x = x.rem_euclid(1.0);
    let g = if x < ramp {
        smooth_step(x / ramp)
    } else if x < lambda {
        1.0
    } else if x < lambda + ramp {
        1.0 - smooth_step((x - lambda) / ramp)
    } else {
        0.0
    };
    let f = if x >= lambda && x < lambda + ramp { (g - g * g).max(0.0).sqrt() } else { 0.0 };
    (f, g)
}

/// Fourier coefficients a_k = ∫ h(x) e^{−2iπkx} dx for |k| ≤ kmax.
fn fourier(h: &[f64], kmax: usize) -> Vec<(i32, C64)> {
    let m = h.len();
    let mut buf: Vec<Complex<f64>> = h.iter().map(|&v| Complex::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let mut out = Vec::with_capacity(2 * kmax + 1);
    for k in -(kmax as i64)..=(kmax as i64) {
        let idx = k.rem_euclid(m as i64) as usize;
        out.push((k as i32, C64::new(buf[idx].re, buf[idx].im) / m as f64));
    }
    out
}

#[derive(Clone, Debug)]
pub struct PowersRieffel {
    pub e: NCPoly,
    pub lambda: f64,
    pub truncation: usize,
    pub ramp: f64,
    pub integral: f64,
    /// ‖e² − e‖₁, an upper bound on the operator norm.
    pub defect: f64,
    pub hermitian_defect: f64,
}

/// Projector f(V₁)V₂ + g(V₁) + (f(V₁)V₂)* with V₁ = U^{v1}, V₂ = U^{v2}; needs
/// V₁V₂ = e^{2iπλ}V₂V₁. `ramp_fraction` scales the ramp width min(λ, 1−λ).
pub fn powers_rieffel_on(
    theta: &Arc<Theta>,
    v1: &[i32],
    v2: &[i32],
    lambda: f64,
    k: usize,
    ramp_fraction: f64,
) -> Result<PowersRieffel> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::input("lambda", format!("{lambda} is not in (0, 1)")));
    }
    if k < 8 {
        return Err(Error::input("K", "truncation must be at least 8"));
    }
    if !(ramp_fraction > 0.0 && ramp_fraction <= 1.0) {
        return Err(Error::input("ramp_fraction", "must lie in (0, 1]"));
    }
    let (m1, m2) = (mode(v1)?, mode(v2)?);
    theta.check_mode(&m1)?;
    theta.check_mode(&m2)?;
    let d = theta.form(&m1, &m2) - lambda;
    if (d - d.round()).abs() > 1e-12 {
        return Err(Error::input("theta", "V1 V2 = exp(2i pi lambda) V2 V1 does not hold"));
    }
    let ramp = ramp_fraction * lambda.min(1.0 - lambda);
    let grid = (64 * k).next_power_of_two().max(8192);
    let (fs, gs): (Vec<f64>, Vec<f64>) = (0..grid).map(|j| pr_profiles(lambda, ramp, j as f64 / grid as f64)).unzip();
    let fa = fourier(&fs, k);
    let mut ga = fourier(&gs, k);
    // the mean of g is λ exactly; pin it instead of using the quadrature value
    ga[k].1 = c(lambda, 0.0);
    let power = |kk: i32, base: &Mode| {
        let mut p = [0i32; MAX_DIM];
        for i in 0..p.len() {
            p[i] = kk * base[i];
        }
        p
    };
    let mut fv = NCPoly::zero(theta);
    let mut gv = NCPoly::zero(theta);
    for ((kk, a), (_, b)) in fa.iter().zip(&ga) {
        fv.insert(power(*kk, &m1), *a);
        gv.insert(power(*kk, &m1), *b);
    }
    let x = fv.mul(&NCPoly::monomial(theta, v2, c(1.0, 0.0))?)?;
    let e = x.add(&gv)?.add(&x.star())?;
    let defect = e.mul(&e)?.sub(&e)?.l1();
    let hermitian_defect = e.sub(&e.star())?.max_abs();
    Ok(PowersRieffel { integral: e.trace().re, e, lambda, truncation: k, ramp, defect, hermitian_defect })
}

/// Standard instance on the 2-torus with θ₂₁ = λ, V₁ = U₂, V₂ = U₁; c₁₂ = +1.
pub fn powers_rieffel(lambda: f64, k: usize) -> Result<PowersRieffel> {
    let theta = Arc::new(Theta::two(-lambda));
    powers_rieffel_on(&theta, &[0, 1], &[1, 0], lambda, k, 1.0)
}

/// e'e'' on the 4-torus with θ₁₂ = a, θ₃₄ = −b. e' uses V₁ = U₁, V₂ = U₂ and e'' uses
/// V₁ = U₄, V₂ = U₃, so that c₁₂ = −1, c₃₄ = +1 and the second pairing is +1.
pub fn block_product_projector(a: f64, b: f64, k: usize) -> Result<(NCPoly, PowersRieffel, PowersRieffel)> {
    let theta = Arc::new(Theta::block4(a, -b));
    let e1 = powers_rieffel_on(&theta, &[1, 0, 0, 0], &[0, 1, 0, 0], a, k, 1.0)?;
    let e2 = powers_rieffel_on(&theta, &[0, 0, 0, 1], &[0, 0, 1, 0], b, k, 1.0)?;
    let e = e1.e.mul(&e2.e)?;
    Ok((e, e1, e2))
}

/// Euclidean Clifford generators of size 2^{⌊n/2⌋}. Odd n appends the chirality of the even part.
pub fn clifford(n: usize) -> Vec<CMatrix> {
    let s1 = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    let s2 = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), -I, I, c(0.0, 0.0)]);
    let s3 = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]);
    let m = n / 2;
    let id = |k: usize| CMatrix::identity(1 << k, 1 << k);
    let mut out = Vec::new();
    for j in 0..m {
        let mut left = id(0);
        for _ in 0..j {
            left = kron(&left, &s3);
        }
        for s in [&s1, &s2] {
            out.push(kron(&kron(&left, s), &id(m - j - 1)));
        }
    }
    if n % 2 == 1 {
        out.push(chirality(&out));
    }
    out
}

/// (−i)^m γ₁⋯γ_{2m}.
pub fn chirality(g: &[CMatrix]) -> CMatrix {
    let dim = 1usize << (g.len() / 2);
    let mut p = CMatrix::identity(dim, dim);
    for x in g {
        p = &p * x;
    }
    p * (-I).powu((g.len() / 2) as u32)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct OrientabilityReport {
    pub n: usize,
    pub residual: f64,
    /// Extra factor applied on top of i^{⌊n/2⌋}/((2iπ)^n n!); 1 for even n.
    pub odd_correction: [f64; 2],
}

/// π(c') for the Hochschild cycle c = Σ_σ ε(σ) (U_{σ(1)}⋯U_{σ(n)})⁻¹ ⊗ U_{σ(1)} ⊗ ⋯ ⊗ U_{σ(n)},
/// compared to γ^{n+1} (even n) or 1 (odd n).
pub fn orientability_cycle(theta: &Arc<Theta>) -> Result<OrientabilityReport> {
    let n = theta.n;
    let gam = clifford(n);
    let dim = gam[0].nrows();
    let mut acc = MatNCPoly::zero(theta, dim);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut perms = Vec::new();
    permutations(&mut perm, 0, &mut perms);
    let units: Vec<NCPoly> = (0..n)
        .map(|k| {
            let mut p = vec![0; n];
            p[k] = 1;
            NCPoly::monomial(theta, &p, c(1.0, 0.0))
        })
        .collect::<Result<_>>()?;
    for sigma in &perms {
        let sign = perm_sign(sigma) as f64;
        let mut word = NCPoly::one(theta);
        let mut cl = CMatrix::identity(dim, dim);
        for &k in sigma {
            word = word.mul(&units[k])?;
            // [D, U_k] = 2iπ (iγ^k) ⊗ U_k
            cl = cl * (&gam[k] * c(0.0, 2.0 * PI) * I);
        }
        let alg = word.star().mul(&word)?;
        acc = acc.add(&MatNCPoly::from_matrix(theta, &(cl * c(sign, 0.0)), &alg)?)?;
    }
    let fact: f64 = (1..=n).map(|x| x as f64).product();
    let mut norm = I.powu((n / 2) as u32) / (c(0.0, 2.0 * PI).powu(n as u32) * fact);
    let odd_correction = if n % 2 == 1 { -I } else { c(1.0, 0.0) };
    norm *= odd_correction;
    let target = if n % 2 == 0 { chirality(&gam) } else { CMatrix::identity(dim, dim) };
    let want = MatNCPoly::from_matrix(theta, &target, &NCPoly::one(theta))?;
    let residual = acc.scale(norm).sub(&want)?.max_abs();
    Ok(OrientabilityReport { n, residual, odd_correction: [odd_correction.re, odd_correction.im] })
}

fn permutations(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clifford_relations() {
        for n in 1..=6 {
            let g = clifford(n);
            for a in 0..n {
                for b in 0..n {
                    let ac = &g[a] * &g[b] + &g[b] * &g[a];
                    let want = if a == b { CMatrix::identity(g[0].nrows(), g[0].nrows()) * c(2.0, 0.0) } else { CMatrix::zeros(g[0].nrows(), g[0].nrows()) };
                    assert!((ac - want).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn orientability_small() {
        for n in 2..=4 {
            let mut m = vec![0.0; n * n];
            for i in 0..n {
                for j in i + 1..n {
                    m[i * n + j] = 0.1 * (i + 2 * j) as f64;
                    m[j * n + i] = -m[i * n + j];
                }
            }
            let t = Arc::new(Theta::new(n, m).unwrap());
            assert!(orientability_cycle(&t).unwrap().residual < 1e-12);
        }
    }

    #[test]
    fn smooth_step_symmetry() {
        for i in 0..=20 {
            let t = i as f64 / 20.0;
            assert!((smooth_step(t) + smooth_step(1.0 - t) - 1.0).abs() < 1e-15);
        }
    }
}
