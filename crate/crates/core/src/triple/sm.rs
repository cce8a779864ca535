//! Standard-model triple and related reference instances.

use nalgebra::DVector;

use super::{AlgebraSpec, Field, FiniteTriple, Mu, Rep};
use crate::linalg::{c, CMatrix, C64};

#[derive(Clone, Debug, PartialEq)]
pub struct SmMasses {
    pub lepton: [f64; 3],
    pub up: [f64; 3],
    pub down: [f64; 3],
    /// θ12, θ13, θ23, δ of the standard CKM parametrization.
    pub ckm: [f64; 4],
}

impl Default for SmMasses {
    fn default() -> Self {
        Self {
            lepton: [0.000511, 0.1057, 1.777],
            up: [0.0022, 1.27, 173.0],
            down: [0.0047, 0.095, 4.18],
            ckm: [0.2273, 0.0036, 0.0415, 1.2],
        }
    }
}

pub fn ckm_matrix(angles: [f64; 4]) -> CMatrix {
    let [t12, t13, t23, d] = angles;
    let (s12, c12) = t12.sin_cos();
    let (s13, c13) = t13.sin_cos();
    let (s23, c23) = t23.sin_cos();
    let e = C64::from_polar(1.0, d);
    let r = |x: f64| c(x, 0.0);
    CMatrix::from_row_slice(
        3,
        3,
        &[
            r(c12 * c13),
            r(s12 * c13),
            r(s13) * e.conj(),
            r(-s12 * c23) - r(c12 * s23 * s13) * e,
            r(c12 * c23) - r(s12 * s23 * s13) * e,
            r(s23 * c13),
            r(s12 * s23) - r(c12 * c23 * s13) * e,
            r(-c12 * s23) - r(s12 * c23 * s13) * e,
            r(c23 * c13),
        ],
    )
}

fn diag3(x: [f64; 3]) -> CMatrix {
    CMatrix::from_diagonal(&DVector::from_iterator(3, x.iter().map(|&v| c(v, 0.0))))
}

pub fn sm_algebra() -> AlgebraSpec {
    AlgebraSpec::new(vec![(Field::C, 1), (Field::H, 1), (Field::C, 3)]).unwrap()
}

/// Representation order (C, H, C̄, M3).
pub fn sm_reps() -> Vec<Rep> {
    vec![
        Rep { summand: 0, conj: false },
        Rep { summand: 1, conj: false },
        Rep { summand: 0, conj: true },
        Rep { summand: 2, conj: false },
    ]
}

pub fn sm_mu() -> Mu {
    let b = vec![vec![0, 0, 1, 1], vec![0, 0, -1, -1], vec![1, -1, 0, 1], vec![1, -1, 1, 0]];
    b.into_iter().map(|r| r.into_iter().map(|x| 3 * x).collect()).collect()
}

pub fn sm_nu() -> Mu {
    let b = vec![vec![0, 0, 1, 1], vec![0, 0, -1, -1], vec![0, 0, 0, 1], vec![0, 0, 0, 0]];
    b.into_iter().map(|r| r.into_iter().map(|x| 3 * x).collect()).collect()
}

fn e(k: usize) -> CMatrix {
    let mut v = CMatrix::zeros(2, 1);
    v[(k, 0)] = c(1.0, 0.0);
    v
}

pub fn standard_model(m: &SmMasses) -> FiniteTriple {
    let mut t = FiniteTriple::new(sm_algebra(), Some(sm_reps()), sm_mu()).unwrap();
    let md = ckm_matrix(m.ckm) * diag3(m.down);
    t.set_block(1, 0, 2, e(0).kronecker(&diag3(m.lepton))).unwrap();
    t.set_block(1, 0, 3, e(0).kronecker(&diag3(m.up))).unwrap();
    t.set_block(1, 2, 3, e(1).kronecker(&md)).unwrap();
    t.s0_split = Some(sm_nu());
    t
}

pub fn standard_model_default() -> FiniteTriple {
    standard_model(&SmMasses::default())
}

/// Standard model plus the vertical link (M3, C̄)–(H, C̄) and its J-mirror.
pub fn standard_model_leptoquark(m: &SmMasses, strength: f64) -> FiniteTriple {
    let mut t = standard_model(m);
    let mut blk = CMatrix::zeros(6, 9);
    for g in 0..3 {
        blk[(g, 3 * g)] = c(strength, 0.0);
    }
    t.set_block(1, 3, 2, blk).unwrap();
    t
}

/// Commutative algebra C^n, fundamental representations only, J = complex conjugation.
/// `signs` gives the chirality of each point.
pub fn commutative(signs: &[i64], dirac: Option<CMatrix>) -> FiniteTriple {
    let n = signs.len();
    let alg = AlgebraSpec::new(vec![(Field::C, 1); n]).unwrap();
    let reps = (0..n).map(|s| Rep { summand: s, conj: false }).collect();
    let mut mu = vec![vec![0; n]; n];
    for (i, &s) in signs.iter().enumerate() {
        mu[i][i] = s;
    }
    let mut t = FiniteTriple::new(alg, Some(reps), mu).unwrap();
    t.dirac_override = dirac;
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eye, frob};

    #[test]
    fn ckm_unitary() {
        let v = ckm_matrix(SmMasses::default().ckm);
        assert!(frob(&(v.adjoint() * &v - eye(3))) < 1e-14);
    }

    #[test]
    fn sm_dimension_is_90() {
        let t = standard_model_default();
        assert_eq!(t.representation().unwrap().dim, 90);
    }
}
