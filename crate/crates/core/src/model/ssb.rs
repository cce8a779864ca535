//! Symmetry breaking: gauge boson masses against fermion masses at a vacuum.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{commutator, opnorm, symmetric_eigen, CMatrix, RMatrix};
use crate::triple::{AlgebraElement, FiniteTriple};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct MassBound {
    pub m_b_max: f64,
    pub m_f_max: f64,
    /// m_b²/m_f², NaN when m_f = 0.
    pub ratio: f64,
    pub boson_masses_sq: Vec<f64>,
    pub holds: bool,
}

/// Antihermitian parts of the real algebra basis, dropping repeats.
pub fn gauge_generators(t: &FiniteTriple) -> Vec<AlgebraElement> {
    t.algebra
        .real_basis()
        .into_iter()
        .map(|x| {
            let xd = x.adjoint();
            AlgebraElement { parts: x.parts.iter().zip(&xd.parts).map(|(a, b)| (a - b) * crate::linalg::c(0.5, 0.0)).collect() }
        })
        .filter(|x| x.parts.iter().any(|p| p.iter().any(|z| z.norm() > 1e-12)))
        .collect()
}

/// m_b² = (3/2) tr([Ã,Ṽ]*[Ã,Ṽ]) / tr(Ã*Ã) extremized over the gauge directions Ã = π(X) + Jπ(X)J⁻¹.
/// `vacuum` defaults to the Dirac operator of the triple.
pub fn mass_bound_check(
    t: &FiniteTriple,
    vacuum: Option<&CMatrix>,
    generators: Option<&[AlgebraElement]>,
) -> Result<MassBound> {
    let rep = t.representation()?;
    let v = match vacuum {
        Some(v) => v.clone(),
        None => t.assemble_dirac()?,
    };
    if v.nrows() != rep.dim || v.ncols() != rep.dim {
        return Err(Error::input("vacuum", format!("expected {}x{} operator", rep.dim, rep.dim)));
    }
    let owned;
    let gens = match generators {
        Some(g) => g,
        None => {
            owned = gauge_generators(t);
            &owned[..]
        }
    };
    let a: Vec<CMatrix> = gens
        .iter()
        .map(|x| {
            let p = rep.pi(&t.reps, x);
            let jp = rep.conj_by_j(&p);
            p + jp
        })
        .collect();
    let c: Vec<CMatrix> = a.iter().map(|ai| commutator(ai, &v)).collect();
    let g = a.len();
    let k = RMatrix::from_fn(g, g, |i, j| (2.0 / 3.0) * (a[i].adjoint() * &a[j]).trace().re);
    let mb = RMatrix::from_fn(g, g, |i, j| (c[i].adjoint() * &c[j]).trace().re);
    let (kv, ku) = symmetric_eigen(&k);
    let kmax = kv.iter().cloned().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..g).filter(|&i| kv[i] > 1e-10 * kmax.max(1e-300)).collect();
    let w = RMatrix::from_fn(g, keep.len(), |r, s| ku[(r, keep[s])] / kv[keep[s]].sqrt());
    let red = w.transpose() * mb * &w;
    let red = (&red + red.transpose()) * 0.5;
    let (mut masses, _) = if keep.is_empty() { (vec![], RMatrix::zeros(0, 0)) } else { symmetric_eigen(&red) };
    for m in masses.iter_mut() {
        if *m < 0.0 {
            *m = 0.0;
        }
    }
    let mb2 = masses.iter().cloned().fold(0.0, f64::max);
    let mf = opnorm(&v);
    let ratio = if mf > 0.0 { mb2 / (mf * mf) } else { f64::NAN };
    Ok(MassBound {
        m_b_max: mb2.sqrt(),
        m_f_max: mf,
        ratio,
        boson_masses_sq: masses,
        holds: mb2 <= 6.0 * mf * mf * (1.0 + 1e-9) + 1e-12,
    })
}
