//! Analysis operators, frame bounds, dual-frame synthesis, interleaving,
//! multiplicative pruning, and Schauder-frame checks.
//!
//! The analysis operator of a family of weighted point evaluations
//! `g_i = ν_i δ_{z_i}` acts on a truncated function by
//! `(U c)_i = ν_i f(z_i)`; its matrix is the weighted Vandermonde matrix
//! with entries `ν_i z_i^k`. All frame quantities are computed from that
//! matrix, optionally relative to the Gram diagonal of the basis.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::funcspace::{weighted_sup_norm, GridSpec, TruncatedFunction, MAX_DEGREE};
use crate::numkernel::{self, DenseMatrix};
use crate::sampling::SamplingSet;
use crate::weights::WeightFamily;
use crate::Cplx;

/// Default relative singular-value threshold for rank decisions.
pub const DEFAULT_RANK_THRESHOLD: f64 = 1e-10;

/// Matrix of the analysis operator: row `i` is `ν_i (1, z_i, ..., z_i^D)`.
#[derive(Debug, Clone)]
pub struct AnalysisMatrix {
    entries: DenseMatrix,
    row_weights: Vec<f64>,
    points: Vec<Cplx>,
    degree: usize,
}

impl AnalysisMatrix {
    /// Assemble from explicit points and row weights.
    pub fn from_points(points: &[Cplx], row_weights: &[f64], degree: usize) -> Result<Self> {
        if points.is_empty() || points.len() != row_weights.len() {
            return Err(Error::InvalidArgument("points/weights mismatch or empty".into()));
        }
        if degree > MAX_DEGREE {
            return Err(Error::DegreeOverflow(degree, MAX_DEGREE));
        }
        if !row_weights.iter().all(|&w| w > 0.0 && w.is_finite()) {
            return Err(Error::DegenerateWeight("row weights must be positive".into()));
        }
        let entries = DenseMatrix::from_fn(points.len(), degree + 1, |i, k| {
            Cplx::new(row_weights[i], 0.0) * points[i].powu(k as u32)
        });
        Ok(AnalysisMatrix { entries, row_weights: row_weights.to_vec(), points: points.to_vec(), degree })
    }

    pub fn entries(&self) -> &DenseMatrix {
        &self.entries
    }

    pub fn row_weights(&self) -> &[f64] {
        &self.row_weights
    }

    pub fn points(&self) -> &[Cplx] {
        &self.points
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rows(&self) -> usize {
        self.points.len()
    }

    /// Apply to a coefficient vector: the weighted samples `ν_i f(z_i)`.
    pub fn apply(&self, coeffs: &[Cplx]) -> Result<Vec<Cplx>> {
        if coeffs.len() != self.degree + 1 {
            return Err(Error::InvalidArgument(format!(
                "coefficient length {} != {}",
                coeffs.len(),
                self.degree + 1
            )));
        }
        let v = &self.entries * DVector::from_column_slice(coeffs);
        Ok(v.iter().copied().collect())
    }

    /// Keep only the rows listed in `keep` (in order).
    pub fn select_rows(&self, keep: &[usize]) -> Result<AnalysisMatrix> {
        if keep.is_empty() {
            return Err(Error::InvalidArgument("cannot keep zero rows".into()));
        }
        let points: Vec<Cplx> = keep.iter().map(|&i| self.points[i]).collect();
        let weights: Vec<f64> = keep.iter().map(|&i| self.row_weights[i]).collect();
        AnalysisMatrix::from_points(&points, &weights, self.degree)
    }
}

/// Weighted evaluation matrix of `S` at weight level `n` and degree `D`.
pub fn analysis_matrix(
    set: &SamplingSet,
    family: &WeightFamily,
    n: usize,
    degree: usize,
) -> Result<AnalysisMatrix> {
    let weights: Result<Vec<f64>> =
        set.points().iter().map(|&z| family.eval_weight(n, z)).collect();
    AnalysisMatrix::from_points(set.points(), &weights?, degree)
}

/// Two-sided frame bounds of an analysis matrix at truncation.
#[derive(Debug, Clone)]
pub struct FrameEstimate {
    /// Lower frame bound `A`.
    pub lower: f64,
    /// Upper frame bound `B`.
    pub upper: f64,
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub rank: usize,
    pub gram_diagonal_used: Option<Vec<f64>>,
}

/// Sharp constants in `A Σ|c_k|^2 d_k ≤ ||U c||^2 ≤ B Σ|c_k|^2 d_k` over the
/// truncated class.
///
/// Without a Gram diagonal, `A` and `B` are the extreme squared singular
/// values of `U`. With diagonal `d` they are the extreme eigenvalues of
/// `D^{-1/2} (U* U) D^{-1/2}`.
pub fn frame_bounds(u: &AnalysisMatrix, gram_diagonal: Option<&[f64]>) -> Result<FrameEstimate> {
    let m = u.entries();
    let f = numkernel::svd(m)?;
    let (sigma_min, sigma_max) = (f.sigma_min(), f.sigma_max());
    let rank = f.rank(DEFAULT_RANK_THRESHOLD);
    // A rows < cols matrix has a nontrivial kernel: sigma_min as returned by
    // the thin SVD misses the zero singular values.
    let sigma_min = if u.rows() < u.degree() + 1 { 0.0 } else { sigma_min };
    match gram_diagonal {
        None => Ok(FrameEstimate {
            lower: sigma_min * sigma_min,
            upper: sigma_max * sigma_max,
            sigma_min,
            sigma_max,
            rank,
            gram_diagonal_used: None,
        }),
        Some(d) => {
            if d.len() != u.degree() + 1 {
                return Err(Error::InvalidArgument(format!(
                    "gram diagonal length {} != {}",
                    d.len(),
                    u.degree() + 1
                )));
            }
            if !d.iter().all(|&x| x > 0.0 && x.is_finite()) {
                return Err(Error::InvalidArgument("gram diagonal must be positive".into()));
            }
            let gram = m.adjoint() * m;
            let eig = numkernel::hermitian_gen_eig(&gram, d)?;
            let upper = eig.first().copied().unwrap_or(0.0);
            let lower = if u.rows() < u.degree() + 1 { 0.0 } else { eig.last().copied().unwrap_or(0.0) };
            Ok(FrameEstimate {
                lower,
                upper,
                sigma_min,
                sigma_max,
                rank,
                gram_diagonal_used: Some(d.to_vec()),
            })
        }
    }
}

/// Left inverse of an analysis matrix; its columns are the coordinates of the
/// dual sequence `f_i = S(e_i)`.
#[derive(Debug, Clone)]
pub struct SynthesisMatrix {
    entries: DenseMatrix,
    source: AnalysisMatrix,
    truncation_threshold: f64,
}

impl SynthesisMatrix {
    pub fn entries(&self) -> &DenseMatrix {
        &self.entries
    }

    pub fn source(&self) -> &AnalysisMatrix {
        &self.source
    }

    pub fn truncation_threshold(&self) -> f64 {
        self.truncation_threshold
    }

    /// Coefficients of the `i`-th dual function.
    pub fn dual_function(&self, i: usize) -> Result<Vec<Cplx>> {
        if i >= self.entries.ncols() {
            return Err(Error::InvalidArgument(format!("dual index {i} out of range")));
        }
        Ok(self.entries.column(i).iter().copied().collect())
    }
}

/// Pseudo-inverse synthesis `S` with `S U = I` on coefficients.
///
/// Fails when `sigma_min(U) <= threshold * sigma_max(U)`: the frame property
/// does not hold at truncation.
pub fn dual_frame(u: &AnalysisMatrix, threshold: f64) -> Result<SynthesisMatrix> {
    let f = numkernel::svd(u.entries())?;
    if u.rows() < u.degree() + 1 || f.sigma_min() <= threshold * f.sigma_max() {
        return Err(Error::RankDeficient(format!(
            "sigma_min {:.3e} <= {threshold:.1e} * sigma_max {:.3e}; no frame at truncation",
            f.sigma_min(),
            f.sigma_max()
        )));
    }
    let entries = numkernel::pseudo_inverse(u.entries(), threshold)?;
    Ok(SynthesisMatrix { entries, source: u.clone(), truncation_threshold: threshold })
}

/// Recover coefficients from (weighted) samples: `S · samples`.
pub fn reconstruct(s: &SynthesisMatrix, samples: &[Cplx]) -> Result<Vec<Cplx>> {
    if samples.len() != s.source.rows() {
        return Err(Error::InvalidArgument(format!(
            "sample length {} != {} rows",
            samples.len(),
            s.source.rows()
        )));
    }
    let v = &s.entries * DVector::from_column_slice(samples);
    Ok(v.iter().copied().collect())
}

/// Alternate the rows of a Bessel family and a frame: `f_{2i-1} = g_i`,
/// `f_{2i} = h_i`. Leftover rows of the longer family are appended.
pub fn interleave(u_bessel: &AnalysisMatrix, u_frame: &AnalysisMatrix) -> Result<AnalysisMatrix> {
    if u_bessel.degree() != u_frame.degree() {
        return Err(Error::InvalidArgument("degree mismatch".into()));
    }
    let mut points = Vec::with_capacity(u_bessel.rows() + u_frame.rows());
    let mut weights = Vec::with_capacity(points.capacity());
    let n = u_bessel.rows().max(u_frame.rows());
    for i in 0..n {
        if i < u_bessel.rows() {
            points.push(u_bessel.points()[i]);
            weights.push(u_bessel.row_weights()[i]);
        }
        if i < u_frame.rows() {
            points.push(u_frame.points()[i]);
            weights.push(u_frame.row_weights()[i]);
        }
    }
    AnalysisMatrix::from_points(&points, &weights, u_bessel.degree())
}

/// Drop the rows at zeros of `Q` (the functionals killed by the multiplier).
///
/// A row survives iff `|Q(z_i)|` exceeds `1e-12` times the magnitude scale
/// `Σ |q_j| |z_i|^j` of the evaluation.
pub fn multiplier_prune(u: &AnalysisMatrix, q: &[Cplx]) -> Result<AnalysisMatrix> {
    if q.is_empty() || q.iter().all(|c| c.norm() == 0.0) {
        return Err(Error::InvalidArgument("multiplier polynomial is identically zero".into()));
    }
    let keep: Vec<usize> = (0..u.rows())
        .filter(|&i| {
            let z = u.points()[i];
            let mut val = Cplx::new(0.0, 0.0);
            let mut scale = 0.0;
            let mut zp = Cplx::new(1.0, 0.0);
            for c in q {
                val += c * zp;
                scale += c.norm() * zp.norm();
                zp *= z;
            }
            val.norm() > 1e-12 * scale
        })
        .collect();
    if keep.is_empty() {
        return Err(Error::RankDeficient("multiplier removed every row".into()));
    }
    u.select_rows(&keep)
}

/// Schauder-frame seminorm: the largest weighted sup norm over partial sums
/// `Σ_{i<=m} α_i x_i`.
pub fn schauder_seminorm(
    x_vectors: &[TruncatedFunction],
    alpha: &[Cplx],
    family: &WeightFamily,
    n: usize,
    grid: &GridSpec,
) -> Result<f64> {
    if alpha.len() != x_vectors.len() {
        return Err(Error::InvalidArgument("alpha length must match the vector count".into()));
    }
    if alpha.is_empty() {
        return Ok(0.0);
    }
    let mut partial = x_vectors[0].scale(alpha[0]);
    let (mut best, _) = weighted_sup_norm(&partial, family, n, grid)?;
    for (a, x) in alpha.iter().zip(x_vectors).skip(1) {
        partial = partial.add(&x.scale(*a))?;
        let (v, _) = weighted_sup_norm(&partial, family, n, grid)?;
        best = best.max(v);
    }
    Ok(best)
}

/// Outcome of a Schauder-frame residual check.
#[derive(Debug, Clone)]
pub struct SchauderReport {
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    pub pass: bool,
}

/// Check `x ≈ Σ_i x_i'(x) x_i` on a list of test functions, where the
/// functionals are weighted point evaluations `x_i'(f) = ν_i f(z_i)`.
pub fn verify_schauder_frame(
    x_dual: &[(Cplx, f64)],
    x_vectors: &[TruncatedFunction],
    test_set: &[TruncatedFunction],
    grid: &GridSpec,
    family: &WeightFamily,
    n: usize,
    tol: f64,
) -> Result<SchauderReport> {
    if x_dual.len() != x_vectors.len() {
        return Err(Error::InvalidArgument("dual/vector lists must have equal length".into()));
    }
    let mut residuals = Vec::with_capacity(test_set.len());
    for f in test_set {
        let mut expansion: Option<TruncatedFunction> = None;
        for ((z, w), x) in x_dual.iter().zip(x_vectors) {
            let coeff = Cplx::new(*w, 0.0) * f.evaluate(*z)?;
            let term = x.scale(coeff);
            expansion = Some(match expansion {
                None => term,
                Some(e) => e.add(&term)?,
            });
        }
        let diff = match expansion {
            None => f.clone(),
            Some(e) => f.sub(&e)?,
        };
        let (r, _) = weighted_sup_norm(&diff, family, n, grid)?;
        residuals.push(r);
    }
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    Ok(SchauderReport { residuals, max_residual, pass: max_residual <= tol })
}
