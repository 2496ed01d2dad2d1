//! Dense complex linear-algebra contract used by every other module.
//!
//! Everything is an operation on [`DenseMatrix`] (a dense, row-major complex
//! matrix). Factorizations delegate to nalgebra; the wrappers pin down the
//! conventions the rest of the crate relies on: singular values sorted in
//! descending order, finite-entry validation, and ridge-filtered least
//! squares.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::Cplx;

/// Dense complex matrix, row-major semantics in the public constructors.
pub type DenseMatrix = DMatrix<Cplx>;

/// Build a matrix from row-major entries, validating finiteness.
pub fn from_rows(rows: usize, cols: usize, entries: &[Cplx]) -> Result<DenseMatrix> {
    if rows == 0 || cols == 0 || entries.len() != rows * cols {
        return Err(Error::InvalidArgument(format!(
            "matrix shape {rows}x{cols} does not match {} entries",
            entries.len()
        )));
    }
    if !entries.iter().all(|e| e.re.is_finite() && e.im.is_finite()) {
        return Err(Error::InvalidArgument("non-finite matrix entry".into()));
    }
    Ok(DenseMatrix::from_row_iterator(rows, cols, entries.iter().copied()))
}

/// Result of a singular value decomposition, `m = u * diag(sigma) * v_h`.
pub struct Svd {
    pub u: DenseMatrix,
    /// Singular values, nonnegative and descending.
    pub sigma: Vec<f64>,
    /// Conjugate-transposed right factor (`V*`).
    pub v_h: DenseMatrix,
}

impl Svd {
    pub fn sigma_max(&self) -> f64 {
        self.sigma.first().copied().unwrap_or(0.0)
    }

    pub fn sigma_min(&self) -> f64 {
        self.sigma.last().copied().unwrap_or(0.0)
    }

    /// Numerical rank with respect to `threshold * sigma_max`.
    pub fn rank(&self, threshold: f64) -> usize {
        let cut = threshold * self.sigma_max();
        self.sigma.iter().filter(|&&s| s > cut).count()
    }
}

/// Full (thin) SVD with singular values sorted descending.
pub fn svd(m: &DenseMatrix) -> Result<Svd> {
    if !m.iter().all(|e| e.re.is_finite() && e.im.is_finite()) {
        return Err(Error::InvalidArgument("non-finite matrix entry".into()));
    }
    let f = m.clone().svd(true, true);
    let u = f.u.expect("u requested");
    let v_t = f.v_t.expect("v_t requested");
    let mut order: Vec<usize> = (0..f.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        f.singular_values[b]
            .partial_cmp(&f.singular_values[a])
            .expect("finite singular values")
    });
    let sigma: Vec<f64> = order.iter().map(|&i| f.singular_values[i]).collect();
    let u = DenseMatrix::from_columns(&order.iter().map(|&i| u.column(i)).collect::<Vec<_>>());
    let v_h = DenseMatrix::from_rows(&order.iter().map(|&i| v_t.row(i)).collect::<Vec<_>>());
    Ok(Svd { u, sigma, v_h })
}

/// Moore-Penrose pseudo-inverse, dropping singular values below
/// `threshold * sigma_max`.
pub fn pseudo_inverse(m: &DenseMatrix, threshold: f64) -> Result<DenseMatrix> {
    let f = svd(m)?;
    let cut = threshold * f.sigma_max();
    let inv = DVector::from_iterator(
        f.sigma.len(),
        f.sigma
            .iter()
            .map(|&s| if s > cut { Cplx::new(1.0 / s, 0.0) } else { Cplx::new(0.0, 0.0) }),
    );
    // V * diag(1/sigma) * U^H
    let mut vt = f.v_h;
    for (i, w) in inv.iter().enumerate() {
        vt.row_mut(i).apply(|e| *e *= w);
    }
    Ok(vt.adjoint() * f.u.adjoint())
}

/// Minimizer of `||A x - b||^2 + ridge ||x||^2` via SVD filtering
/// `sigma / (sigma^2 + ridge)`.
pub fn least_squares(a: &DenseMatrix, b: &[Cplx], ridge: f64) -> Result<Vec<Cplx>> {
    if a.nrows() != b.len() {
        return Err(Error::InvalidArgument(format!(
            "rhs length {} does not match {} rows",
            b.len(),
            a.nrows()
        )));
    }
    if ridge < 0.0 {
        return Err(Error::InvalidArgument("negative ridge".into()));
    }
    let f = svd(a)?;
    let rhs = DVector::from_column_slice(b);
    let proj = f.u.adjoint() * rhs;
    let mut coeffs = DVector::zeros(a.ncols());
    for (i, &s) in f.sigma.iter().enumerate() {
        let filter = if s > 0.0 || ridge > 0.0 { s / (s * s + ridge) } else { 0.0 };
        let w = proj[i] * Cplx::new(filter, 0.0);
        coeffs += f.v_h.row(i).adjoint() * w;
    }
    Ok(coeffs.iter().copied().collect())
}

/// Eigenvalues (descending) of `D^{-1/2} M D^{-1/2}` for Hermitian PSD `M`
/// and positive diagonal `d`.
///
/// The scaled matrix is again Hermitian PSD, so its eigenvalues coincide
/// with its singular values; tiny negative round-off is clipped at zero.
pub fn hermitian_gen_eig(m: &DenseMatrix, d: &[f64]) -> Result<Vec<f64>> {
    if m.nrows() != m.ncols() || m.nrows() != d.len() {
        return Err(Error::InvalidArgument("matrix/diagonal size mismatch".into()));
    }
    if !d.iter().all(|&x| x > 0.0 && x.is_finite()) {
        return Err(Error::InvalidArgument("diagonal must be strictly positive".into()));
    }
    let scale = m.iter().map(|e| e.norm()).fold(0.0_f64, f64::max).max(1.0);
    let herm_defect = (m - m.adjoint()).iter().map(|e| e.norm()).fold(0.0_f64, f64::max);
    if herm_defect > 1e-10 * scale {
        return Err(Error::InvalidArgument(format!(
            "matrix is not Hermitian (defect {herm_defect:.3e})"
        )));
    }
    let n = d.len();
    let mut scaled = m.clone();
    for i in 0..n {
        for j in 0..n {
            scaled[(i, j)] *= Cplx::new(1.0 / (d[i].sqrt() * d[j].sqrt()), 0.0);
        }
    }
    // Symmetrize away round-off before factorizing.
    let scaled = (scaled.clone() + scaled.adjoint()) * Cplx::new(0.5, 0.0);
    let f = svd(&scaled)?;
    Ok(f.sigma.iter().map(|&s| if s > -1e-12 { s.max(0.0) } else { s }).collect())
}
