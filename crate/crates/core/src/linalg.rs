//! Thin wrappers over `faer` for the dense complex kernels used elsewhere.

use faer::linalg::solvers::{DenseSolveCore, Solve};
use faer::{Mat, Side};
use num_complex::Complex64;

pub type CMat = Mat<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum LinalgError {
    #[error("matrix is numerically singular (smallest pivot ratio {ratio:.3e})")]
    Singular { ratio: f64 },
    #[error("decomposition did not converge")]
    NoConvergence,
}

pub fn zeros(rows: usize, cols: usize) -> CMat {
    Mat::zeros(rows, cols)
}

pub fn identity(n: usize) -> CMat {
    Mat::identity(n, n)
}

pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> Complex64) -> CMat {
    Mat::from_fn(rows, cols, f)
}

/// Leading `rows × cols` block, copied.
pub fn corner(m: &CMat, rows: usize, cols: usize) -> CMat {
    m.as_ref().submatrix(0, 0, rows, cols).to_owned()
}

/// Copy of the block starting at `(r0, c0)`.
pub fn block(m: &CMat, r0: usize, c0: usize, rows: usize, cols: usize) -> CMat {
    m.as_ref().submatrix(r0, c0, rows, cols).to_owned()
}

/// Writes `src` into `dst` with its top-left at `(r0, c0)`.
pub fn set_block(dst: &mut CMat, r0: usize, c0: usize, src: &CMat) {
    dst.as_mut().submatrix_mut(r0, c0, src.nrows(), src.ncols()).copy_from(src.as_ref());
}

pub fn adjoint(m: &CMat) -> CMat {
    m.adjoint().to_owned()
}

pub fn scaled(m: &CMat, s: Complex64) -> CMat {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * s)
}

pub fn trace(m: &CMat) -> Complex64 {
    (0..m.nrows().min(m.ncols())).map(|i| m[(i, i)]).sum()
}

pub fn frobenius(m: &CMat) -> f64 {
    m.norm_l2()
}

pub fn max_abs(m: &CMat) -> f64 {
    let mut out = 0.0f64;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            out = out.max(m[(i, j)].norm());
        }
    }
    out
}

pub fn is_hermitian(m: &CMat, tol: f64) -> bool {
    let n = m.nrows();
    if n != m.ncols() {
        return false;
    }
    let scale = max_abs(m).max(1.0);
    (0..n).all(|i| (0..=i).all(|j| (m[(i, j)] - m[(j, i)].conj()).norm() <= tol * scale))
}

/// Singular values in nonincreasing order.
pub fn singular_values(m: &CMat) -> Result<Vec<f64>, LinalgError> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(vec![]);
    }
    m.singular_values().map_err(|_| LinalgError::NoConvergence)
}

pub fn spectral_norm(m: &CMat) -> Result<f64, LinalgError> {
    Ok(singular_values(m)?.first().copied().unwrap_or(0.0))
}

/// Full SVD `m = U diag(s) V*`, singular values nonincreasing.
pub struct Svd {
    pub u: CMat,
    pub s: Vec<f64>,
    pub v: CMat,
}

pub fn svd(m: &CMat) -> Result<Svd, LinalgError> {
    let d = m.svd().map_err(|_| LinalgError::NoConvergence)?;
    let s = d.S().column_vector().iter().map(|x| x.re).collect();
    Ok(Svd { u: d.U().to_owned(), s, v: d.V().to_owned() })
}

/// Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.
pub fn hermitian_eigen(m: &CMat) -> Result<(Vec<f64>, CMat), LinalgError> {
    let e = m.self_adjoint_eigen(Side::Lower).map_err(|_| LinalgError::NoConvergence)?;
    let vals = e.S().column_vector().iter().map(|x| x.re).collect();
    Ok((vals, e.U().to_owned()))
}

/// Eigenvalues of a general complex matrix.
pub fn eigenvalues(m: &CMat) -> Result<Vec<Complex64>, LinalgError> {
    if m.nrows() == 0 {
        return Ok(vec![]);
    }
    m.eigenvalues().map_err(|_| LinalgError::NoConvergence)
}

/// `U diag(f(λ)) U*` for a Hermitian matrix.
pub fn hermitian_function(m: &CMat, f: impl Fn(f64) -> Complex64) -> Result<CMat, LinalgError> {
    let (vals, u) = hermitian_eigen(m)?;
    let n = m.nrows();
    let fv: Vec<Complex64> = vals.iter().map(|&x| f(x)).collect();
    let scaled_u = Mat::from_fn(n, n, |i, k| u[(i, k)] * fv[k]);
    Ok(&scaled_u * u.adjoint())
}

/// Full-pivot LU with a cheap singularity screen. Partial pivoting shows
/// large element growth on stabilized sections with rank-one pairings.
pub struct Lu {
    lu: faer::linalg::solvers::FullPivLu<Complex64>,
    n: usize,
}

impl Lu {
    /// Factors `m`; rejects it when the smallest pivot is below `rel_tol`
    /// times the largest.
    pub fn new(m: &CMat, rel_tol: f64) -> Result<Self, LinalgError> {
        let lu = m.full_piv_lu();
        let u = lu.U();
        let n = m.nrows();
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for i in 0..n {
            let p = u[(i, i)].norm();
            lo = lo.min(p);
            hi = hi.max(p);
        }
        if n > 0 && (!(lo > rel_tol * hi) || !lo.is_finite()) {
            return Err(LinalgError::Singular { ratio: if hi > 0.0 { lo / hi } else { 0.0 } });
        }
        Ok(Self { lu, n })
    }

    pub fn solve(&self, rhs: &CMat) -> CMat {
        self.lu.solve(rhs)
    }

    pub fn inverse(&self) -> CMat {
        self.lu.inverse()
    }

    pub fn dim(&self) -> usize {
        self.n
    }
}

pub fn determinant(m: &CMat) -> Complex64 {
    if m.nrows() == 0 {
        return ONE;
    }
    m.determinant()
}

pub fn inverse(m: &CMat, rel_tol: f64) -> Result<CMat, LinalgError> {
    Ok(Lu::new(m, rel_tol)?.inverse())
}

/// Column `e_k` of length `n`.
pub fn unit(n: usize, k: usize) -> CMat {
    Mat::from_fn(n, 1, |i, _| if i == k { ONE } else { ZERO })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn svd_reconstructs() {
        let m = from_fn(4, 4, |i, j| c64((i + 2 * j) as f64 * 0.3, (i as f64 - j as f64) * 0.1));
        let d = svd(&m).unwrap();
        let s = from_fn(4, 4, |i, j| if i == j { c64(d.s[i], 0.0) } else { c64(0.0, 0.0) });
        let back = &d.u * &s * d.v.adjoint();
        assert!(max_abs(&(&back - &m)) < 1e-13);
        assert!(d.s.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn lu_rejects_singular() {
        let m = from_fn(3, 3, |i, _| c64(i as f64, 0.0));
        assert!(Lu::new(&m, 1e-12).is_err());
        let d = from_fn(3, 3, |i, j| if i == j { c64(2.0, 0.0) } else { c64(0.0, 0.0) });
        assert!((determinant(&d) - c64(8.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn hermitian_function_exp_of_zero() {
        let z = zeros(3, 3);
        let e = hermitian_function(&z, |x| c64(x.exp(), 0.0)).unwrap();
        assert!(max_abs(&(&e - &identity(3))) < 1e-15);
    }

    #[test]
    fn eigenvalues_of_companion() {
        // w² − 3w + 2 = (w − 1)(w − 2)
        let m = from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => c64(-2.0, 0.0),
            (1, 0) => c64(1.0, 0.0),
            (1, 1) => c64(3.0, 0.0),
            _ => c64(0.0, 0.0),
        });
        let mut ev: Vec<f64> = eigenvalues(&m).unwrap().iter().map(|c| c.re).collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ev[0] - 1.0).abs() < 1e-13 && (ev[1] - 2.0).abs() < 1e-13);
    }
}
