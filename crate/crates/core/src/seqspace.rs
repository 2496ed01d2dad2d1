//! Köthe-type sequence spaces, their weighted norms, and β-duals.
//!
//! A space is described by a Köthe matrix `a(n, i)` of positive weights, a
//! p-norm, and a limit kind (inductive or projective). β-duals are a closed
//! table over the weighted ℓ∞/ℓ1 pairs: the limit kind flips, the p-norm
//! swaps, and the weights are entrywise reciprocals.

use crate::error::{Error, Result};
use crate::Cplx;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PNorm {
    Ell1,
    Ell2,
    EllInf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    Inductive,
    Projective,
}

/// A truncated Köthe sequence space: `n_max` weight levels over `i_max` coordinates.
#[derive(Debug, Clone)]
pub struct SequenceSpaceSpec {
    /// `kothe[n-1][i]` is the weight `a(n, i)`.
    pub kothe: Vec<Vec<f64>>,
    pub p_norm: PNorm,
    pub limit_kind: LimitKind,
}

impl SequenceSpaceSpec {
    pub fn new(kothe: Vec<Vec<f64>>, p_norm: PNorm, limit_kind: LimitKind) -> Result<Self> {
        if kothe.is_empty() || kothe[0].is_empty() {
            return Err(Error::InvalidArgument("empty Köthe matrix".into()));
        }
        let i_max = kothe[0].len();
        for row in &kothe {
            if row.len() != i_max {
                return Err(Error::InvalidArgument("ragged Köthe matrix".into()));
            }
            if !row.iter().all(|&a| a > 0.0 && a.is_finite()) {
                return Err(Error::InvalidArgument("Köthe entries must be finite and > 0".into()));
            }
        }
        for n in 1..kothe.len() {
            for (i, (&cur, &prev)) in kothe[n].iter().zip(&kothe[n - 1]).enumerate() {
                let ok = match limit_kind {
                    LimitKind::Inductive => cur <= prev,
                    LimitKind::Projective => cur >= prev,
                };
                if !ok {
                    return Err(Error::InvalidArgument(format!(
                        "Köthe monotonicity violated at (n={}, i={i})",
                        n + 1
                    )));
                }
            }
        }
        Ok(SequenceSpaceSpec { kothe, p_norm, limit_kind })
    }

    pub fn n_max(&self) -> usize {
        self.kothe.len()
    }

    pub fn i_max(&self) -> usize {
        self.kothe[0].len()
    }

    /// Weighted p-norm of `x` at level `n` (1-based).
    pub fn seq_norm(&self, n: usize, x: &[Cplx]) -> Result<f64> {
        if n < 1 || n > self.n_max() {
            return Err(Error::IndexOutOfRange { index: n, max: self.n_max() });
        }
        if x.len() > self.i_max() {
            return Err(Error::InvalidArgument(format!(
                "sequence length {} exceeds i_max {}",
                x.len(),
                self.i_max()
            )));
        }
        let w = &self.kothe[n - 1];
        let weighted = x.iter().enumerate().map(|(i, xi)| w[i] * xi.norm());
        Ok(match self.p_norm {
            PNorm::Ell1 => weighted.sum(),
            PNorm::Ell2 => weighted.map(|t| t * t).sum::<f64>().sqrt(),
            PNorm::EllInf => weighted.fold(0.0, f64::max),
        })
    }

    /// β-dual under the supported weighted ℓ∞/ℓ1 pairing table.
    pub fn beta_dual(&self) -> Result<SequenceSpaceSpec> {
        let dual_p = match self.p_norm {
            PNorm::Ell1 => PNorm::EllInf,
            PNorm::EllInf => PNorm::Ell1,
            PNorm::Ell2 => {
                return Err(Error::UnsupportedPairing(
                    "ℓ2 duality is handled through inner products in the frames module".into(),
                ))
            }
        };
        let dual_limit = match self.limit_kind {
            LimitKind::Inductive => LimitKind::Projective,
            LimitKind::Projective => LimitKind::Inductive,
        };
        let dual_kothe = self
            .kothe
            .iter()
            .map(|row| row.iter().map(|a| 1.0 / a).collect())
            .collect();
        SequenceSpaceSpec::new(dual_kothe, dual_p, dual_limit)
    }
}

/// Partial sums of the pairing `Σ x_i y_i` at the requested cutoffs.
pub fn pairing_diagnostic(x: &[Cplx], y: &[Cplx], checkpoints: &[usize]) -> Result<Vec<Cplx>> {
    if x.len() != y.len() {
        return Err(Error::InvalidArgument("sequences must have equal length".into()));
    }
    let max_cp = checkpoints.iter().copied().max().unwrap_or(0);
    if max_cp > x.len() {
        return Err(Error::InvalidArgument(format!(
            "checkpoint {max_cp} exceeds sequence length {}",
            x.len()
        )));
    }
    let mut sums = Vec::with_capacity(checkpoints.len());
    for &cp in checkpoints {
        let s: Cplx = x[..cp].iter().zip(&y[..cp]).map(|(a, b)| a * b).sum();
        sums.push(s);
    }
    Ok(sums)
}
