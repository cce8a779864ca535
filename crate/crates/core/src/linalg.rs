//! Dense complex linear algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type RMatrix = DMatrix<f64>;

pub const I: C64 = C64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn eye(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn zeros(r: usize, c: usize) -> CMatrix {
    CMatrix::zeros(r, c)
}

pub fn dagger(m: &CMatrix) -> CMatrix {
    m.adjoint()
}

pub fn conj(m: &CMatrix) -> CMatrix {
    m.map(|z| z.conj())
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b + b * a
}

pub fn frob(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn trace(m: &CMatrix) -> C64 {
    m.trace()
}

/// Largest singular value. Zero-size matrices have norm 0.
pub fn opnorm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    if m.iter().all(|z| z.norm_sqr() == 0.0) {
        return 0.0;
    }
    m.clone().singular_values().max()
}

/// [`opnorm`] with an input error on non-finite entries.
pub fn opnorm_checked(m: &CMatrix) -> Result<f64> {
    check_finite(m, "m")?;
    Ok(opnorm(m))
}

pub fn check_finite(m: &CMatrix, path: &str) -> Result<()> {
    match m.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        Some(k) => Err(Error::input(format!("{path}[{},{}]", k % m.nrows(), k / m.nrows()), "non-finite entry")),
        None => Ok(()),
    }
}

pub fn real_opnorm(m: &RMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone().singular_values().max()
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigen(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = h.nrows();
    if n == 0 {
        return (vec![], zeros(0, 0));
    }
    let sym = (h + h.adjoint()) * c(0.5, 0.0);
    let eig = sym.symmetric_eigen();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let vals = idx.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = zeros(n, n);
    for (k, &i) in idx.iter().enumerate() {
        vecs.set_column(k, &eig.eigenvectors.column(i));
    }
    (vals, vecs)
}

/// [`hermitian_eigen`] after checking Hermiticity within 1e-10·max(1, ‖h‖).
pub fn hermitian_eigen_checked(h: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    check_finite(h, "m")?;
    if !h.is_square() {
        return Err(Error::input("m", "matrix is not square"));
    }
    let skew = frob(&(h - h.adjoint()));
    if skew > 1e-10 * frob(h).max(1.0) {
        return Err(Error::input("m", format!("matrix is not Hermitian (‖m − m*‖ = {skew:.3e})")));
    }
    Ok(hermitian_eigen(h))
}

pub fn hermitian_eigenvalues(h: &CMatrix) -> Vec<f64> {
    hermitian_eigen(h).0
}

/// Real symmetric eigenpairs, ascending.
pub fn symmetric_eigen(s: &RMatrix) -> (Vec<f64>, RMatrix) {
    let n = s.nrows();
    if n == 0 {
        return (vec![], RMatrix::zeros(0, 0));
    }
    let sym = (s + s.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let vals = idx.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = RMatrix::zeros(n, n);
    for (k, &i) in idx.iter().enumerate() {
        vecs.set_column(k, &eig.eigenvectors.column(i));
    }
    (vals, vecs)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn kron3(a: &CMatrix, b: &CMatrix, d: &CMatrix) -> CMatrix {
    a.kronecker(b).kronecker(d)
}

pub fn direct_sum(blocks: &[CMatrix]) -> CMatrix {
    let r: usize = blocks.iter().map(|b| b.nrows()).sum();
    let cc: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = zeros(r, cc);
    let (mut i, mut j) = (0, 0);
    for b in blocks {
        out.view_mut((i, j), (b.nrows(), b.ncols())).copy_from(b);
        i += b.nrows();
        j += b.ncols();
    }
    out
}

/// Singular values of a real matrix with the full right-singular basis.
fn full_svd(a: &RMatrix) -> (Vec<f64>, RMatrix) {
    let (m, n) = a.shape();
    let padded = if m < n {
        let mut p = RMatrix::zeros(n, n);
        p.view_mut((0, 0), (m, n)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let vt = svd.v_t.unwrap();
    let mut sv: Vec<f64> = svd.singular_values.iter().cloned().collect();
    sv.resize(n, 0.0);
    (sv, vt)
}

/// Orthonormal basis (as columns) of the kernel of a real matrix.
/// A singular value counts as zero below `tol * max(1, sigma_max)`.
pub fn real_nullspace(a: &RMatrix, tol: f64) -> RMatrix {
    let n = a.ncols();
    if n == 0 {
        return RMatrix::zeros(0, 0);
    }
    if a.nrows() == 0 {
        return RMatrix::identity(n, n);
    }
    let (sv, vt) = full_svd(a);
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let cut = tol * smax.max(1.0);
    let cols: Vec<usize> = (0..n).filter(|&k| sv[k] <= cut).collect();
    let mut out = RMatrix::zeros(n, cols.len());
    for (c_, &k) in cols.iter().enumerate() {
        for r in 0..n {
            out[(r, c_)] = vt[(k, r)];
        }
    }
    out
}

pub fn real_rank(a: &RMatrix, tol: f64) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    let sv = a.clone().singular_values();
    let smax = sv.max();
    sv.iter().filter(|&&s| s > tol * smax.max(1.0)).count()
}

/// Orthonormal basis of the column span of a real matrix.
pub fn real_range(a: &RMatrix, tol: f64) -> RMatrix {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return RMatrix::zeros(m, 0);
    }
    let svd = a.clone().svd(true, false);
    let u = svd.u.unwrap();
    let smax = svd.singular_values.max();
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] > tol * smax.max(1.0))
        .collect();
    let mut out = RMatrix::zeros(m, keep.len());
    for (c_, &k) in keep.iter().enumerate() {
        out.set_column(c_, &u.column(k));
    }
    out
}

/// Least-squares solution of `a x = b` (minimum norm) and the residual norm.
pub fn real_lstsq(a: &RMatrix, b: &DVector<f64>) -> (DVector<f64>, f64) {
    if a.ncols() == 0 {
        return (DVector::zeros(0), b.norm());
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let x = svd
        .solve(b, 1e-12 * smax.max(1e-300))
        .unwrap_or_else(|_| DVector::zeros(a.ncols()));
    let r = (a * &x - b).norm();
    (x, r)
}

pub fn randn<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

pub fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    c(randn(rng), randn(rng)) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn random_matrix<R: Rng + ?Sized>(r: usize, cc: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(r, cc, |_, _| random_complex(rng))
}

pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let g = random_matrix(n, n, rng);
    (&g + g.adjoint()) * c(0.5, 0.0)
}

/// Haar-distributed unitary via QR with phase correction.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    if n == 0 {
        return zeros(0, 0);
    }
    let g = random_matrix(n, n, rng);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= ph;
        }
    }
    q
}

pub fn random_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RMatrix {
    if n == 0 {
        return RMatrix::zeros(0, 0);
    }
    let g = RMatrix::from_fn(n, n, |_, _| randn(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}

pub fn to_complex(m: &RMatrix) -> CMatrix {
    m.map(|x| c(x, 0.0))
}

/// Exact determinant of an integer matrix (fraction-free Bareiss).
pub fn bareiss_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Hermitian matrix sign function. Eigenvalues below `tol` in modulus map to 0.
pub fn hermitian_sign(h: &CMatrix, tol: f64) -> CMatrix {
    let (vals, vecs) = hermitian_eigen(h);
    let d = CMatrix::from_diagonal(&DVector::from_iterator(
        vals.len(),
        vals.iter().map(|&v| {
            if v > tol {
                c(1.0, 0.0)
            } else if v < -tol {
                c(-1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        }),
    ));
    &vecs * d * vecs.adjoint()
}
