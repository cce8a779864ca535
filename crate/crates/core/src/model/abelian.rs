//! Abelian sector: U(1) factors of complex summands, their kinetic matrix and unimodularity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{real_nullspace, real_rank, RMatrix};
use crate::triple::{AlgebraSpec, Field, Mu, Rep};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct UnimodularityCheck {
    pub lambda: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AbelianReport {
    /// Complex summands carrying a U(1).
    pub summands: Vec<usize>,
    pub q: Vec<Vec<f64>>,
    pub kernel: Vec<Vec<f64>>,
    pub n: usize,
    pub n_prime: usize,
    pub parameter_count: usize,
    pub p_check: Option<UnimodularityCheck>,
}

/// Charge of representation i under the U(1) of each complex summand.
pub fn charge_matrix(algebra: &AlgebraSpec, reps: &[Rep]) -> (Vec<usize>, RMatrix) {
    let summands: Vec<usize> =
        (0..algebra.summands.len()).filter(|&s| algebra.summands[s].field == Field::C).collect();
    let r = RMatrix::from_fn(reps.len(), summands.len(), |i, s| {
        if reps[i].summand == summands[s] {
            if reps[i].conj {
                -1.0
            } else {
                1.0
            }
        } else {
            0.0
        }
    });
    (summands, r)
}

/// Q_ij = 2δ_ij Σ_k |μ_ik| n_i n_k − 2|μ_ij| n_i n_j on representations.
pub fn q_rep(algebra: &AlgebraSpec, reps: &[Rep], mu: &Mu) -> RMatrix {
    let n = reps.len();
    let d: Vec<f64> = reps.iter().map(|&r| algebra.rep_dim(r) as f64).collect();
    RMatrix::from_fn(n, n, |i, j| {
        let mut v = -2.0 * mu[i][j].abs() as f64 * d[i] * d[j];
        if i == j {
            v += 2.0 * (0..n).map(|k| mu[i][k].abs() as f64 * d[i] * d[k]).sum::<f64>();
        }
        v
    })
}

pub fn abelian_sector(
    algebra: &AlgebraSpec,
    reps: &[Rep],
    mu: &Mu,
    p: Option<&RMatrix>,
    linear_constraints: Option<&RMatrix>,
) -> Result<AbelianReport> {
    let (summands, r) = charge_matrix(algebra, reps);
    let q = r.transpose() * q_rep(algebra, reps, mu) * &r;
    let n = summands.len();
    let ker = real_nullspace(&q, 1e-10);
    let kernel: Vec<Vec<f64>> = (0..ker.ncols()).map(|c| ker.column(c).iter().cloned().collect()).collect();
    let mut p_check = None;
    let n_prime = if let Some(p) = p {
        if p.nrows() != n {
            return Err(Error::input("unimodularity.P", format!("expected {n} rows")));
        }
        for c in 0..p.ncols() {
            let col = p.column(c).into_owned();
            let qn = (&q * &col).norm();
            if qn <= 1e-10 * col.norm().max(1e-300) * q.norm().max(1.0) {
                return Err(Error::input(
                    format!("unimodularity.P[:,{c}]"),
                    "column lies in ker Q: no kinetic term",
                ));
            }
        }
        let ptqp = p.transpose() * &q * p;
        let lambda = ptqp.trace() / p.ncols().max(1) as f64;
        let residual = (&ptqp - RMatrix::identity(p.ncols(), p.ncols()) * lambda).norm();
        p_check = Some(UnimodularityCheck { lambda, residual });
        p.ncols()
    } else {
        let mut rows = ker.transpose();
        if let Some(l) = linear_constraints {
            rows = RMatrix::from_fn(rows.nrows() + l.nrows(), n, |i, j| {
                if i < ker.ncols() {
                    ker[(j, i)]
                } else {
                    l[(i - ker.ncols(), j)]
                }
            });
        }
        n - real_rank(&rows, 1e-10)
    };
    Ok(AbelianReport {
        summands,
        q: (0..n).map(|i| (0..n).map(|j| q[(i, j)]).collect()).collect(),
        kernel,
        n,
        n_prime,
        parameter_count: n_prime * (n - n_prime),
        p_check,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triple::sm;

    #[test]
    fn sm_q_is_scalar() {
        let a = abelian_sector(&sm::sm_algebra(), &sm::sm_reps(), &sm::sm_mu(), None, None).unwrap();
        assert_eq!(a.n, 2);
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 72.0 } else { 0.0 };
                assert!((a.q[i][j] - want).abs() < 1e-12);
            }
        }
        assert!(a.kernel.is_empty());
    }

    #[test]
    fn decoupled_summand() {
        let alg = AlgebraSpec::new(vec![(Field::C, 1)]).unwrap();
        let reps = vec![Rep { summand: 0, conj: false }];
        let a = abelian_sector(&alg, &reps, &vec![vec![1]], None, None).unwrap();
        assert!(a.q[0][0].abs() < 1e-15);
        assert_eq!(a.kernel.len(), 1);
        let p = RMatrix::from_element(1, 1, 1.0);
        assert!(abelian_sector(&alg, &reps, &vec![vec![1]], Some(&p), None).is_err());
    }

    #[test]
    fn fully_linked_constant_kernel() {
        let alg = AlgebraSpec::new(vec![(Field::C, 1), (Field::C, 2), (Field::C, 1)]).unwrap();
        let reps: Vec<Rep> = (0..3).map(|s| Rep { summand: s, conj: false }).collect();
        let mu = vec![vec![0, 1, -1], vec![1, 0, 1], vec![-1, 1, 0]];
        let a = abelian_sector(&alg, &reps, &mu, None, None).unwrap();
        assert_eq!(a.kernel.len(), 1);
        let k = &a.kernel[0];
        assert!((k[0] - k[1]).abs() < 1e-10 && (k[1] - k[2]).abs() < 1e-10);
    }
}
