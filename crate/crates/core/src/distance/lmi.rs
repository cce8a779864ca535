//! Maximize a linear functional over { v : ‖Σ v_k A_k‖ ≤ 1 } with A_k Hermitian.
//!
//! Rewritten as min s subject to −sI ⪯ A(v) ⪯ sI, cᵀv = 1 and solved with a log-barrier
//! Newton method. The optimum of the original problem is 1/s*.

use nalgebra::{Cholesky, DVector};

use crate::linalg::{symmetric_eigen, CMatrix, RMatrix};

#[derive(Clone, Debug)]
pub struct LmiSolution {
    /// sup cᵀv, or +∞.
    pub value: f64,
    /// Maximizer with ‖A(v)‖ ≤ 1 (empty when infinite).
    pub v: Vec<f64>,
    pub iterations: usize,
    /// Upper bound on value − optimum, relative.
    pub gap: f64,
    pub constraint_norm: f64,
}

fn combine(a: &[CMatrix], w: &[f64], n: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for (ak, &wk) in a.iter().zip(w) {
        if wk != 0.0 {
            m += ak * crate::linalg::c(wk, 0.0);
        }
    }
    m
}

struct Barrier {
    a0: CMatrix,
    a: Vec<CMatrix>,
    n: usize,
}

impl Barrier {
    fn op(&self, z: &[f64]) -> CMatrix {
        &self.a0 + combine(&self.a, z, self.n)
    }

    /// −log det(sI − A) − log det(sI + A), None outside the domain.
    fn value(&self, z: &[f64], s: f64) -> Option<f64> {
        let a = self.op(z);
        let id = CMatrix::identity(self.n, self.n) * crate::linalg::c(s, 0.0);
        let mut v = 0.0;
        for m in [&id - &a, &id + &a] {
            let ch = Cholesky::new(m)?;
            let l = ch.l_dirty();
            for i in 0..self.n {
                v -= 2.0 * l[(i, i)].re.ln();
            }
        }
        Some(v)
    }

    fn derivatives(&self, z: &[f64], s: f64) -> Option<(DVector<f64>, RMatrix)> {
        let a = self.op(z);
        let k = self.a.len();
        let id = CMatrix::identity(self.n, self.n);
        let mut g = DVector::zeros(k + 1);
        let mut h = RMatrix::zeros(k + 1, k + 1);
        for sign in [-1.0, 1.0] {
            // F = sI + sign·A, ∂_k F = sign·A_k, ∂_s F = I
            let f = &id * crate::linalg::c(s, 0.0) + &a * crate::linalg::c(sign, 0.0);
            let finv = Cholesky::new(f)?.inverse();
            let mut b: Vec<CMatrix> = self.a.iter().map(|ak| &finv * ak * crate::linalg::c(sign, 0.0)).collect();
            b.push(finv.clone());
            for p in 0..=k {
                g[p] -= b[p].trace().re;
                for q in p..=k {
                    let mut t = 0.0;
                    for i in 0..self.n {
                        for j in 0..self.n {
                            t += (b[p][(i, j)] * b[q][(j, i)]).re;
                        }
                    }
                    h[(p, q)] += t;
                    if q != p {
                        h[(q, p)] += t;
                    }
                }
            }
        }
        Some((g, h))
    }
}

/// Real Gram matrix Re tr(A_k A_l).
fn gram(a: &[CMatrix]) -> RMatrix {
    let k = a.len();
    RMatrix::from_fn(k, k, |p, q| {
        let mut t = 0.0;
        for (x, y) in a[p].iter().zip(a[q].iter()) {
            t += (x * y.conj()).re;
        }
        t
    })
}

/// sup cᵀv subject to ‖Σ v_k A_k‖ ≤ 1.
pub fn maximize_linear(a: &[CMatrix], c: &[f64], tol: f64) -> LmiSolution {
    let k = a.len();
    assert_eq!(k, c.len());
    let cn = c.iter().map(|x| x * x).sum::<f64>().sqrt();
    if cn == 0.0 {
        return LmiSolution { value: 0.0, v: vec![0.0; k], iterations: 0, gap: 0.0, constraint_norm: 0.0 };
    }
    let n = a.first().map(|m| m.nrows()).unwrap_or(0);
    let cv = DVector::from_column_slice(c);
    // kernel directions of v ↦ A(v) make the supremum infinite unless c is orthogonal to them
    let (ev, evec) = symmetric_eigen(&gram(a));
    let emax = ev.iter().cloned().fold(0.0, f64::max);
    let cut = 1e-12 * emax.max(1e-300);
    let mut range = vec![];
    for (i, &e) in ev.iter().enumerate() {
        let u = evec.column(i).into_owned();
        if e <= cut {
            if u.dot(&cv).abs() > 1e-9 * cn {
                return LmiSolution {
                    value: f64::INFINITY,
                    v: vec![],
                    iterations: 0,
                    gap: 0.0,
                    constraint_norm: 0.0,
                };
            }
        } else {
            range.push(u);
        }
    }
    // v = v0 + N z with v0 = c/|c|² and N spanning range ∩ c⊥
    let v0 = &cv / (cn * cn);
    let mut nb: Vec<DVector<f64>> = vec![];
    let chat = &cv / cn;
    for u in &range {
        let mut w = u - &chat * chat.dot(u);
        for b in &nb {
            w -= b * b.dot(&w);
        }
        let nw = w.norm();
        if nw > 1e-8 {
            nb.push(w / nw);
        }
    }
    let a0 = combine(a, v0.as_slice(), n);
    let ak: Vec<CMatrix> = nb.iter().map(|b| combine(a, b.as_slice(), n)).collect();
    let bar = Barrier { a0, a: ak, n };
    let m = nb.len();

    let mut z = vec![0.0; m];
    let mut s = crate::linalg::opnorm(&bar.a0) * 1.5 + 1e-3;
    let scale = s;
    let mut t = 1.0 / scale;
    let mut iters = 0;
    let degree = 2.0 * n as f64;
    loop {
        // centering
        for _ in 0..200 {
            let Some((g0, h)) = bar.derivatives(&z, s) else { break };
            let mut g = g0;
            g[m] += t;
            let Some(ch) = Cholesky::new(h.clone() + RMatrix::identity(m + 1, m + 1) * 1e-14 * h.trace().abs().max(1e-300))
            else {
                break;
            };
            let dx = -ch.solve(&g);
            let dec = -g.dot(&dx);
            iters += 1;
            if dec / 2.0 < 1e-12 {
                break;
            }
            let f0 = t * s + bar.value(&z, s).unwrap_or(f64::INFINITY);
            let mut step = 1.0;
            let mut moved = false;
            while step > 1e-12 {
                let zn: Vec<f64> = (0..m).map(|i| z[i] + step * dx[i]).collect();
                let sn = s + step * dx[m];
                if let Some(b) = bar.value(&zn, sn) {
                    if t * sn + b <= f0 - 0.25 * step * dec {
                        z = zn;
                        s = sn;
                        moved = true;
                        break;
                    }
                }
                step *= 0.5;
            }
            if !moved {
                break;
            }
        }
        let gap = degree / t;
        if gap <= tol * 1e-2 * s || t > 1e16 / scale {
            break;
        }
        t *= 8.0;
    }
    let gap = degree / t;
    let mut v = v0.clone();
    for (zi, b) in z.iter().zip(&nb) {
        v += b * *zi;
    }
    // rescale to the unit ball: value = 1/‖A(v)‖ exactly for this feasible point
    let norm = crate::linalg::opnorm(&combine(a, v.as_slice(), n));
    let v: Vec<f64> = v.iter().map(|x| x / norm).collect();
    LmiSolution {
        value: 1.0 / norm,
        v,
        iterations: iters,
        gap: (gap / (s - gap).max(1e-300)).max(0.0),
        constraint_norm: 1.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    #[test]
    fn scalar_bound() {
        // ‖v·diag(2, −1)‖ ≤ 1 ⇒ sup v = 1/2
        let a = vec![CMatrix::from_diagonal(&DVector::from_vec(vec![c(2.0, 0.0), c(-1.0, 0.0)]))];
        let r = maximize_linear(&a, &[1.0], 1e-9);
        assert!((r.value - 0.5).abs() < 1e-9);
    }

    #[test]
    fn kernel_direction_is_infinite() {
        let a = vec![CMatrix::identity(2, 2), CMatrix::zeros(2, 2)];
        assert!(maximize_linear(&a, &[0.0, 1.0], 1e-9).value.is_infinite());
        assert!((maximize_linear(&a, &[1.0, 0.0], 1e-9).value - 1.0).abs() < 1e-9);
    }
}
