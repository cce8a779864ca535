//! Dimension-0 axiom validation.

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{s0, Field, FiniteTriple, Representation};
use crate::error::Result;
use crate::linalg::{c, commutator, eye, frob, opnorm, real_lstsq, CMatrix, RMatrix, C64, I};
use crate::model::intersection::{intersection_form, IntersectionForm};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AxiomReport {
    pub checks: Vec<Check>,
    pub intersection: IntersectionForm,
    pub s0: s0::S0Report,
    /// Some p_ik > 1: outside the p ≤ 1 gauge reconstruction.
    pub has_one_form_multiplicity: bool,
    pub all_pass: bool,
}

impl AxiomReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Every axiom except S⁰-reality.
    pub fn axioms_pass(&self) -> bool {
        self.checks.iter().filter(|c| c.name != "s0_reality").all(|c| c.pass)
    }
}

#[derive(Clone, Debug)]
pub struct ValidateOptions {
    pub tol: f64,
    pub seed: u64,
    pub pairs: usize,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        Self { tol: 1e-9, seed: 0, pairs: 20 }
    }
}

fn element_scale(a: &super::AlgebraElement) -> f64 {
    a.parts.iter().map(opnorm).fold(0.0, f64::max).max(1e-300)
}

/// Least-squares residual of χ in the real span of π(x)Jπ(y)J⁻¹ over central x, y.
pub fn orientability_residual(t: &FiniteTriple) -> f64 {
    let mut basis: Vec<(usize, C64)> = vec![];
    for (s, sm) in t.algebra.summands.iter().enumerate() {
        basis.push((s, c(1.0, 0.0)));
        if sm.field == Field::C {
            basis.push((s, I));
        }
    }
    let v = |i: usize, (s, z): (usize, C64)| -> C64 {
        let r = t.reps[i];
        if r.summand != s {
            c(0.0, 0.0)
        } else if r.conj {
            z.conj()
        } else {
            z
        }
    };
    let n = t.nrep();
    let support: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| t.mu[i][j] != 0).collect();
    let nb = basis.len();
    let mut a = RMatrix::zeros(2 * support.len(), nb * nb);
    let mut b = DVector::zeros(2 * support.len());
    for (row, &(i, j)) in support.iter().enumerate() {
        b[2 * row] = t.mu[i][j].signum() as f64;
        for (x, &bx) in basis.iter().enumerate() {
            for (y, &by) in basis.iter().enumerate() {
                let z = v(i, bx) * v(j, by).conj();
                a[(2 * row, x * nb + y)] = z.re;
                a[(2 * row + 1, x * nb + y)] = z.im;
            }
        }
    }
    real_lstsq(&a, &b).1
}

pub fn validate_axioms(t: &FiniteTriple, opts: &ValidateOptions) -> Result<AxiomReport> {
    let rep: Representation = t.representation()?;
    let d = t.assemble_dirac()?;
    let dim = rep.dim;
    let chi = rep.chi();
    let k = rep.k_matrix();
    let dn = opnorm(&d).max(1.0);
    let tol = opts.tol;
    let mut checks = vec![];
    let mut push = |name: &str, residual: f64, scale: f64| {
        checks.push(Check { name: name.to_string(), residual, pass: residual <= tol * scale });
    };

    push("hermiticity", frob(&(&d - d.adjoint())), dn);
    push("chi_anticommutes_d", frob(&(&chi * &d + &d * &chi)), dn);
    push("j_commutes_d", frob(&(&d - rep.conj_by_j(&d))), dn);
    push("j_squared", frob(&(&k * &k - eye(dim))), 1.0);
    push("chi_squared", frob(&(&chi * &chi - eye(dim))), 1.0);
    push("j_commutes_chi", frob(&(rep.conj_by_j(&chi) - &chi)), 1.0);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (mut order0, mut order1) = (0.0f64, 0.0f64);
    for _ in 0..opts.pairs {
        let a = t.algebra.random_element(&mut rng);
        let b = t.algebra.random_element(&mut rng);
        let s = element_scale(&a) * element_scale(&b);
        let pa = rep.pi(&t.reps, &a);
        let pb = rep.pi_opp(&t.reps, &b);
        order0 = order0.max(frob(&commutator(&pa, &pb)) / s);
        order1 = order1.max(frob(&commutator(&commutator(&d, &pa), &pb)) / s);
    }
    push("order_zero", order0, 1.0);
    push("first_order", order1, dn);
    push("orientability", orientability_residual(t), 1.0);

    let intersection = intersection_form(&t.algebra, &t.reps, &t.mu);
    checks.push(Check {
        name: "poincare_duality".into(),
        residual: if intersection.det == 0 { 1.0 } else { 0.0 },
        pass: intersection.det != 0,
    });

    let s0r = s0::s0_report(t, &rep, &d, tol * dn, opts.seed)?;
    checks.push(Check { name: "s0_reality".into(), residual: s0r.residual, pass: s0r.s0_real });

    let has_mult = t.dirac_override.is_none()
        && crate::model::oneforms::one_form_space(t, 1.0).pairs.iter().any(|p| p.p > 1);
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(AxiomReport { checks, intersection, s0: s0r, has_one_form_multiplicity: has_mult, all_pass })
}

/// χ realized as Σ_p π(x_p) J π(y_p) J⁻¹ via the rank-one sign decomposition: returns the mismatch.
pub fn chi_realization_residual(t: &FiniteTriple) -> Result<f64> {
    let rep = t.representation()?;
    let mut acc = CMatrix::zeros(rep.dim, rep.dim);
    // sign(μ) = Σ_{s,t} sign(μ_st) e_s e_tᵀ with e_s the unit of the rep's summand, restricted to
    // rep-level projectors; reps of one summand are separated by the central scalars 1 and i.
    let n = t.nrep();
    for i in 0..n {
        for j in 0..n {
            if t.mu[i][j] == 0 {
                continue;
            }
            let pi = rep_projector(t, &rep, i, true);
            let pj = rep_projector(t, &rep, j, false);
            acc += (pi * pj) * c(t.mu[i][j].signum() as f64, 0.0);
        }
    }
    Ok(frob(&(acc - rep.chi())))
}

/// Projector onto sectors with left (or right) representation i, built from central algebra elements.
fn rep_projector(t: &FiniteTriple, rep: &Representation, i: usize, left: bool) -> CMatrix {
    let r = t.reps[i];
    let unit = t.algebra.unit(r.summand);
    let op = |a: &super::AlgebraElement| if left { rep.pi(&t.reps, a) } else { rep.pi_opp(&t.reps, a) };
    let has_partner = t.reps.iter().any(|x| x.summand == r.summand && x.conj != r.conj);
    if !has_partner {
        return op(&unit);
    }
    // (1 ∓ i·(i·1)) / 2 separates fundamental and conjugate sectors
    let mut iu = unit.clone();
    for p in iu.parts.iter_mut() {
        *p *= I;
    }
    let p1 = op(&unit);
    let pi_ = op(&iu);
    // on a fundamental left sector π(i·1) = i, on a conjugate one −i; on the right the sign flips
    let s = if r.conj ^ !left { c(-1.0, 0.0) } else { c(1.0, 0.0) };
    (&p1 - pi_ * (I * s)) * c(0.5, 0.0)
}
