//! Dense complex linear algebra helpers and the shared rank tolerance.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// `<f, h> = sum f(t) conj(h(t))`.
pub fn inner(f: &[Complex64], h: &[Complex64]) -> Complex64 {
    f.iter().zip(h).map(|(x, y)| x * y.conj()).sum()
}

pub fn norm2(f: &[Complex64]) -> f64 {
    f.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub fn norm1(f: &[Complex64]) -> f64 {
    f.iter().map(|x| x.norm()).sum()
}

pub fn mat_vec(m: &CMatrix, v: &[Complex64]) -> Vec<Complex64> {
    (m * CVector::from_column_slice(v)).as_slice().to_vec()
}

/// Largest `|a_ij - b_ij|`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Eigenvalues of a Hermitian matrix, ascending. The input is symmetrized
/// first so that rounding in its construction does not leak into the solver.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Singular values, descending; `min(rows, cols)` of them. Taken from the
/// eigenvalues `+-sigma` of the Hermitian matrix `[[0, M], [M^H, 0]]`, which
/// are accurate to `eps * sigma_max` even when singular values cluster
/// (nalgebra's complex SVD does not converge reliably there).
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return Vec::new();
    }
    let mut jw = CMatrix::zeros(rows + cols, rows + cols);
    jw.view_mut((0, rows), (rows, cols)).copy_from(m);
    jw.view_mut((rows, 0), (cols, rows)).copy_from(&m.adjoint());
    let mut sv = hermitian_eigenvalues(&jw);
    sv.reverse();
    sv.truncate(rows.min(cols));
    sv.iter_mut().for_each(|s| *s = s.max(0.0));
    sv
}

/// Orthonormal basis of the null space of `m`: eigenvectors of `M^H M`
/// whose eigenvalue satisfies `lambda / lambda_max <= tau`, i.e.
/// `(sigma / sigma_max)^2 <= tau`.
pub fn null_space(m: &CMatrix, tau: f64) -> Vec<Vec<Complex64>> {
    if m.ncols() == 0 {
        return Vec::new();
    }
    let gram = m.adjoint() * m;
    let eig = ((&gram + gram.adjoint()) * Complex64::new(0.5, 0.0)).symmetric_eigen();
    let lmax = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
    eig.eigenvalues
        .iter()
        .enumerate()
        .filter(|&(_, &l)| lmax == 0.0 || l / lmax <= tau)
        .map(|(i, _)| eig.eigenvectors.column(i).iter().copied().collect())
        .collect()
}

/// Relative rank threshold shared by every invertibility and rank decision.
///
/// Decisions are made on the spectrum of a positive operator (`S`, `G`, or
/// the squared singular values of `C`/`D`): an eigenvalue `lambda` counts as
/// nonzero when `lambda / lambda_max > scale * dim * eps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub scale: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { scale: 1e3 }
    }
}

/// Where a normalized eigenvalue sits relative to the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Margin {
    Clear,
    Marginal,
}

impl Tolerance {
    pub fn new(scale: f64) -> Self {
        Self { scale }
    }

    pub fn threshold(&self, dim: usize) -> f64 {
        self.scale * dim.max(1) as f64 * f64::EPSILON
    }

    /// Within a factor of 10 of the threshold on either side.
    pub fn margin(&self, ratio: f64, dim: usize) -> Margin {
        let tau = self.threshold(dim);
        if ratio > tau / 10.0 && ratio < tau * 10.0 {
            Margin::Marginal
        } else {
            Margin::Clear
        }
    }
}

/// Rank of a linear map given its singular values, counting the squared
/// normalized singular values above `tau`.
pub fn rank_from_singular_values(sv: &[f64], tau: f64) -> usize {
    let smax = sv.iter().copied().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| (s / smax).powi(2) > tau).count()
}

/// Smallest squared singular value of a map with `cols` inputs, relative to
/// the largest; missing singular values (wide matrices) count as zero.
pub fn min_relative_sq(sv: &[f64], cols: usize) -> f64 {
    let smax = sv.iter().copied().fold(0.0, f64::max);
    if smax == 0.0 || sv.len() < cols {
        return 0.0;
    }
    let smin = sv.iter().copied().fold(f64::INFINITY, f64::min);
    (smin / smax).powi(2)
}
