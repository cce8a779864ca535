//! BRS transformations with Grassmann-valued ghost modes.
//!
//! s(A_μ) = (1/g)∂_μC + [A_μ, C], s(C) = −C², s(C̄) = B, s(B) = 0.
//! s acts from the left; X + η·s(X) with a fresh generator η realizes s on any functional.

use std::sync::Arc;

use rand::Rng;

use super::poly::{has_zero_mode, GPoly, NCPoly};
use super::theta::{is_zero_mode, Mode, Theta, MAX_DIM};
use crate::error::{Error, Result};
use crate::grassmann::{GrassmannPoly, MAX_GENERATORS};
use crate::linalg::{c, random_complex, C64};

#[derive(Clone, Debug)]
pub struct BrsFields {
    pub a: Vec<GPoly>,
    pub c: GPoly,
    pub cbar: GPoly,
    pub b: GPoly,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct BrsReport {
    pub generators: usize,
    /// Largest coefficient of s²A_μ.
    pub s2_a: f64,
    /// Largest coefficient of s²C.
    pub s2_c: f64,
    /// Largest coefficient of s(S_YM).
    pub ym_variation: f64,
    /// Largest coefficient of s(S_GF + S_FP).
    pub gauge_fixing_variation: f64,
}

fn check(f: &BrsFields) -> Result<Arc<Theta>> {
    let theta = f.c.theta.clone();
    if f.a.len() != theta.n {
        return Err(Error::input("A", format!("expected {} components", theta.n)));
    }
    if has_zero_mode(&f.c) || has_zero_mode(&f.cbar) {
        return Err(Error::input("C", "ghosts have no zero mode"));
    }
    for x in f.a.iter().chain([&f.cbar, &f.b]) {
        f.c.check_theta(x)?;
    }
    Ok(theta)
}

fn left_times(eta: &GrassmannPoly, x: &GPoly) -> GPoly {
    x.map_coeffs(|a| eta.mul_ref(a))
}

/// Images (sA, sC, sC̄, sB).
pub fn brs_variation(f: &BrsFields, g: f64) -> Result<BrsFields> {
    let theta = check(f)?;
    if g == 0.0 {
        return Err(Error::input("g", "coupling must be nonzero"));
    }
    let sa = (0..theta.n)
        .map(|mu| f.c.derive(mu)?.scale(c(1.0 / g, 0.0)).add(&f.a[mu].comm(&f.c)?))
        .collect::<Result<Vec<_>>>()?;
    let sc = f.c.mul(&f.c)?.scale(c(-1.0, 0.0));
    Ok(BrsFields { a: sa, c: sc, cbar: f.b.clone(), b: GPoly::zero(&theta) })
}

/// X + η·s(X) for every field.
pub fn brs_shift(f: &BrsFields, eta: &GrassmannPoly, g: f64) -> Result<BrsFields> {
    let s = brs_variation(f, g)?;
    Ok(BrsFields {
        a: f.a.iter().zip(&s.a).map(|(x, y)| x.add(&left_times(eta, y))).collect::<Result<_>>()?,
        c: f.c.add(&left_times(eta, &s.c))?,
        cbar: f.cbar.add(&left_times(eta, &s.cbar))?,
        b: f.b.clone(),
    })
}

/// −(1/4) Σ τ(F_{μν}F_{μν}) with Grassmann-valued coefficients.
pub fn ym_action_graded(a: &[GPoly], g: f64) -> Result<GrassmannPoly> {
    let n = a.len();
    let mut s = GrassmannPoly::zero();
    for mu in 0..n {
        for nu in 0..n {
            if mu == nu {
                continue;
            }
            let f = a[nu].derive(mu)?.sub(&a[mu].derive(nu)?)?.add(&a[mu].comm(&a[nu])?.scale(c(g, 0.0)))?;
            s.add_assign_ref(&f.mul(&f)?.trace().scale(c(-0.25, 0.0)));
        }
    }
    Ok(s)
}

/// ∫(αg²/2 B² + g ∂_μB A_μ) + τ(C̄ ∂_μ(∂_μC + g[A_μ, C])).
pub fn gauge_fixing_action(f: &BrsFields, g: f64, alpha: f64) -> Result<GrassmannPoly> {
    let n = f.a.len();
    let mut s = f.b.mul(&f.b)?.trace().scale(c(alpha * g * g / 2.0, 0.0));
    for mu in 0..n {
        s.add_assign_ref(&f.b.derive(mu)?.mul(&f.a[mu])?.trace().scale(c(g, 0.0)));
        let dc = f.c.derive(mu)?.add(&f.a[mu].comm(&f.c)?.scale(c(g, 0.0)))?;
        s.add_assign_ref(&f.cbar.mul(&dc.derive(mu)?)?.trace());
    }
    Ok(s)
}

fn eta_part(x: &GrassmannPoly, eta: usize) -> f64 {
    x.left_derivative(eta).max_abs()
}

fn eta_part_poly(x: &GPoly, eta: usize) -> f64 {
    x.terms.values().map(|a| eta_part(a, eta)).fold(0.0, f64::max)
}

/// Generator layout used by [`BrsFields::random`]: C modes, then C̄ modes, then η₁, η₂.
pub fn generator_count(ghost_modes: usize) -> usize {
    2 * ghost_modes + 2
}

impl BrsFields {
    /// Random configuration with `m` ghost modes, each carrying its own generator.
    pub fn random<R: Rng + ?Sized>(theta: &Arc<Theta>, m: usize, radius: i32, rng: &mut R) -> Result<Self> {
        let ngen = generator_count(m);
        if ngen > MAX_GENERATORS {
            return Err(Error::domain(format!(
                "Grassmann capacity exhausted: {m} ghost modes need {ngen} generators (cap {MAX_GENERATORS})"
            )));
        }
        let draw_modes = |count: usize, rng: &mut R| -> Vec<Mode> {
            let mut out: Vec<Mode> = Vec::new();
            while out.len() < count {
                let mut p = [0i32; MAX_DIM];
                for x in p.iter_mut().take(theta.n) {
                    *x = rng.random_range(-radius..=radius);
                }
                if !is_zero_mode(&p) && !out.contains(&p) {
                    out.push(p);
                }
            }
            out
        };
        let ghost = |modes: &[Mode], first: usize, rng: &mut R| -> Result<GPoly> {
            let mut x = GPoly::zero(theta);
            for (k, p) in modes.iter().enumerate() {
                let z: C64 = random_complex(rng);
                x.insert(*p, GrassmannPoly::generator_in(first + k, ngen)?.scale(z));
            }
            Ok(x)
        };
        let cm = draw_modes(m, rng);
        let bm = draw_modes(m, rng);
        let c_field = ghost(&cm, 0, rng)?;
        let cbar = ghost(&bm, m, rng)?;
        let a = (0..theta.n).map(|_| NCPoly::random(theta, m, radius, rng).lift()).collect();
        let b = NCPoly::random(theta, m, radius, rng).lift();
        Ok(Self { a, c: c_field, cbar, b })
    }
}

/// Nilpotency and invariance checks using generators `eta1`, `eta2` that do not occur in the fields.
pub fn brs_check(f: &BrsFields, g: f64, alpha: f64, eta1: usize, eta2: usize) -> Result<BrsReport> {
    let ngen = eta1.max(eta2) + 1;
    let e1 = GrassmannPoly::generator_in(eta1, ngen)?;
    let e2 = GrassmannPoly::generator_in(eta2, ngen)?;
    let shifted = brs_shift(f, &e1, g)?;
    // s(sX) is the η₁ part of sX evaluated on shifted fields
    let s_shift = brs_variation(&shifted, g)?;
    let s2_a = s_shift.a.iter().map(|x| eta_part_poly(x, eta1)).fold(0.0, f64::max);
    let s2_c = eta_part_poly(&s_shift.c, eta1);
    let ym = eta_part(&ym_action_graded(&shifted.a, g)?, eta1);
    let gf = eta_part(&gauge_fixing_action(&shifted, g, alpha)?, eta1);
    // a second shift exercises the algebra with both auxiliary generators present
    let twice = brs_shift(&shifted, &e2, g)?;
    let ym2 = eta_part(&ym_action_graded(&twice.a, g)?, eta2);
    Ok(BrsReport {
        generators: ngen,
        s2_a,
        s2_c,
        ym_variation: ym.max(ym2),
        gauge_fixing_variation: gf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn theta3() -> Arc<Theta> {
        Arc::new(Theta::new(3, vec![0.0, 0.3, -0.17, -0.3, 0.0, 0.41, 0.17, -0.41, 0.0]).unwrap())
    }

    #[test]
    fn single_mode_ghost_is_nilpotent() {
        let t = theta3();
        let cg = GPoly::monomial(&t, &[1, 2, 0], GrassmannPoly::generator_in(0, 2).unwrap()).unwrap();
        let f = BrsFields { a: vec![GPoly::zero(&t); 3], c: cg, cbar: GPoly::zero(&t), b: GPoly::zero(&t) };
        assert!(brs_variation(&f, 1.0).unwrap().c.is_empty());
    }

    #[test]
    fn random_three_modes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let t = theta3();
        let f = BrsFields::random(&t, 3, 1, &mut rng).unwrap();
        let r = brs_check(&f, 0.9, 1.3, 6, 7).unwrap();
        assert!(r.s2_a < 1e-12 && r.s2_c < 1e-12, "{r:?}");
        assert!(r.ym_variation < 1e-10 && r.gauge_fixing_variation < 1e-10, "{r:?}");
    }

    #[test]
    fn capacity_error() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(BrsFields::random(&theta3(), 12, 2, &mut rng).is_err());
    }

    #[test]
    fn zero_mode_rejected() {
        let t = theta3();
        let cg = GPoly::monomial(&t, &[0, 0, 0], GrassmannPoly::generator_in(0, 2).unwrap()).unwrap();
        let f = BrsFields { a: vec![GPoly::zero(&t); 3], c: cg, cbar: GPoly::zero(&t), b: GPoly::zero(&t) };
        assert!(brs_variation(&f, 1.0).is_err());
    }
}
