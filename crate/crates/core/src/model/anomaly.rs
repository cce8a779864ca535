//! Mixed gravitational and gauge anomalies of the abelian sector for an S⁰-real triple.

use serde::Serialize;

use crate::linalg::RMatrix;
use crate::triple::{AlgebraSpec, Field, Mu, Rep};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AnomalyReport {
    /// Σ_ij ε_ij n_i n_j (b_i − b_j); NaN without charges.
    pub mixed: f64,
    /// Σ_ij ε_ij n_i n_j (b_i − b_j)³; NaN without charges.
    pub cubic: f64,
    /// Σ_j n_j (ε_ij − ε_ji) for complex representations with n_i ≥ 3 (charge independent).
    pub rigid: Vec<(usize, f64)>,
    /// Σ_j n_j (ε_ij − ε_ji)(b_i − b_j) for n_i ≥ 2 complex or quaternionic.
    pub linear: Vec<(usize, f64)>,
    /// Linear conditions as rows over the summand charges B_s (mixed row first).
    pub linear_rows: Vec<Vec<f64>>,
    pub rigid_ok: bool,
    pub anomaly_free: bool,
}

/// `charges` are U(1) charges per complex summand, in the order of `charge_matrix`.
pub fn anomaly_check(algebra: &AlgebraSpec, reps: &[Rep], eps: &Mu, charges: Option<&[f64]>) -> AnomalyReport {
    let n = reps.len();
    let d: Vec<f64> = reps.iter().map(|&r| algebra.rep_dim(r) as f64).collect();
    let (_, r) = super::abelian::charge_matrix(algebra, reps);
    let ns = r.ncols();
    let e = |i: usize, j: usize| eps[i][j] as f64;
    let field = |i: usize| algebra.summands[reps[i].summand].field;

    let mut rigid: Vec<(usize, f64)> = vec![];
    for i in 0..n {
        if field(i) == Field::C && d[i] >= 3.0 {
            rigid.push((i, (0..n).map(|j| d[j] * (e(i, j) - e(j, i))).sum()));
        }
    }
    let lin_idx: Vec<usize> =
        (0..n).filter(|&i| (field(i) == Field::C && d[i] >= 2.0) || field(i) == Field::H).collect();

    let mut rows = vec![];
    let mixed_row: Vec<f64> = (0..ns)
        .map(|s| {
            let mut v = 0.0;
            for i in 0..n {
                for j in 0..n {
                    v += e(i, j) * d[i] * d[j] * (r[(i, s)] - r[(j, s)]);
                }
            }
            v
        })
        .collect();
    rows.push(mixed_row.clone());
    for &i in &lin_idx {
        rows.push(
            (0..ns)
                .map(|s| (0..n).map(|j| d[j] * (e(i, j) - e(j, i)) * (r[(i, s)] - r[(j, s)])).sum())
                .collect(),
        );
    }

    let (mixed, cubic, linear) = match charges {
        Some(b) => {
            let bi: Vec<f64> = (0..n).map(|i| (0..ns).map(|s| r[(i, s)] * b[s]).sum()).collect();
            let mut mixed = 0.0;
            let mut cubic = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let w = e(i, j) * d[i] * d[j];
                    mixed += w * (bi[i] - bi[j]);
                    cubic += w * (bi[i] - bi[j]).powi(3);
                }
            }
            let linear = lin_idx
                .iter()
                .map(|&i| (i, (0..n).map(|j| d[j] * (e(i, j) - e(j, i)) * (bi[i] - bi[j])).sum()))
                .collect();
            (mixed, cubic, linear)
        }
        None => (f64::NAN, f64::NAN, vec![]),
    };
    let rigid_ok = rigid.iter().all(|(_, v)| v.abs() < 1e-9);
    let anomaly_free = rigid_ok
        && charges.is_some()
        && mixed.abs() < 1e-9
        && cubic.abs() < 1e-9
        && linear.iter().all(|(_, v): &(usize, f64)| v.abs() < 1e-9);
    AnomalyReport { mixed, cubic, rigid, linear, linear_rows: rows, rigid_ok, anomaly_free }
}

/// Linear conditions as a matrix, for the abelian reduction.
pub fn linear_constraint_matrix(rep: &AnomalyReport) -> RMatrix {
    let nr = rep.linear_rows.len();
    let nc = rep.linear_rows.first().map(|r| r.len()).unwrap_or(0);
    RMatrix::from_fn(nr, nc, |i, j| rep.linear_rows[i][j])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triple::sm;

    #[test]
    fn sm_conditions_fix_ratio() {
        let (alg, reps, nu) = (sm::sm_algebra(), sm::sm_reps(), sm::sm_nu());
        let ok = anomaly_check(&alg, &reps, &nu, Some(&[3.0, 1.0]));
        assert!(ok.anomaly_free, "{ok:?}");
        let bad = anomaly_check(&alg, &reps, &nu, Some(&[1.0, 1.0]));
        assert!(!bad.anomaly_free);
        assert!(bad.rigid_ok);
    }
}
