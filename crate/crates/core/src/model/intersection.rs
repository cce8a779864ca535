//! Intersection form of a finite triple on K-theory classes of the summands.

use serde::Serialize;

use crate::linalg::bareiss_det;
use crate::triple::{AlgebraSpec, Field, Mu, Rep};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct IntersectionForm {
    /// Summand indices in order of first appearance among the representations.
    pub summands: Vec<usize>,
    pub matrix: Vec<Vec<i64>>,
    pub det: i128,
}

/// ∩_st = f_s f_t Σ_{i∈s, j∈t} μ_ij, conjugate representations merged into their summand,
/// f = 2 for quaternionic summands.
pub fn intersection_form(algebra: &AlgebraSpec, reps: &[Rep], mu: &Mu) -> IntersectionForm {
    let mut summands = vec![];
    for r in reps {
        if !summands.contains(&r.summand) {
            summands.push(r.summand);
        }
    }
    let pos = |s: usize| summands.iter().position(|&x| x == s).unwrap();
    let f = |s: usize| if algebra.summands[s].field == Field::H { 2 } else { 1 };
    let n = summands.len();
    let mut m = vec![vec![0i64; n]; n];
    for (i, ri) in reps.iter().enumerate() {
        for (j, rj) in reps.iter().enumerate() {
            m[pos(ri.summand)][pos(rj.summand)] += f(ri.summand) * f(rj.summand) * mu[i][j];
        }
    }
    let det = bareiss_det(&m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect::<Vec<_>>());
    IntersectionForm { summands, matrix: m, det }
}

/// Multiplicity matrix of the standard model with n right neutrinos of multiplicity ε added
/// to the diagonal (C̄, C̄) entry.
pub fn sm_mu_with_right_neutrinos(n_gen: i64, eps: i64) -> Mu {
    let mut mu = crate::triple::sm::sm_mu();
    mu[2][2] += n_gen * eps;
    mu
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triple::sm;

    #[test]
    fn sm_form() {
        let f = intersection_form(&sm::sm_algebra(), &sm::sm_reps(), &sm::sm_mu());
        assert_eq!(f.matrix, vec![vec![6, -6, 6], vec![-6, 0, -6], vec![6, -6, 0]]);
        assert_ne!(f.det, 0);
    }

    #[test]
    fn neutrino_locus() {
        for n in 1..=3 {
            for e in 1..=2 {
                let mu = sm_mu_with_right_neutrinos(n, e);
                let f = intersection_form(&sm::sm_algebra(), &sm::sm_reps(), &mu);
                assert_eq!(f.det == 0, (n, e) == (3, 2));
            }
        }
    }
}
