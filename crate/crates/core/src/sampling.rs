//! Sampling sets, restriction maps, sufficiency constants, uniqueness
//! margins, and the density criterion for sampling sequences.
//!
//! A sampling set is a finite list of points; the sufficiency machinery
//! quantifies, at truncation, how well the sampled weighted norm controls
//! the full weighted sup norm: `||f||_{m,grid} <= C ||f||_{n,S}` for every
//! truncated `f`.

use crate::error::{Error, Result};
use crate::frames::{analysis_matrix, AnalysisMatrix};
use crate::funcspace::{GridSpec, TruncatedFunction};
use crate::numkernel::{self, DenseMatrix};
use crate::weights::{GrowthCondition, WeightFamily};
use crate::Cplx;

/// How a sampling set was generated.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    /// `alpha Z + i beta Z` clipped to `|z| <= r`.
    Lattice { alpha: f64, beta: f64, r: f64 },
    /// Concentric roots of unity: ring `k` carries the `l_k`-th roots scaled by `k`.
    RingRoots { k_max: usize },
    Explicit,
}

/// A finite list of pairwise distinct sample points with generator metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingSet {
    points: Vec<Cplx>,
    generator: Generator,
}

impl SamplingSet {
    pub fn explicit(points: Vec<Cplx>) -> Result<Self> {
        Self::with_generator(points, Generator::Explicit)
    }

    fn with_generator(points: Vec<Cplx>, generator: Generator) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("sampling set must be nonempty".into()));
        }
        if !points.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite sample point".into()));
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                let scale = points[i].norm().max(points[j].norm()).max(1.0);
                if (points[i] - points[j]).norm() < 1e-12 * scale {
                    return Err(Error::InvalidArgument(format!(
                        "sample points {i} and {j} coincide"
                    )));
                }
            }
        }
        Ok(SamplingSet { points, generator })
    }

    pub fn points(&self) -> &[Cplx] {
        &self.points
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Rectangular lattice points `alpha n + i beta m` with modulus at most `r`,
/// in row-major `(n, m)` order.
pub fn lattice(alpha: f64, beta: f64, r: f64) -> Result<SamplingSet> {
    if alpha <= 0.0 || beta <= 0.0 {
        return Err(Error::InvalidArgument("lattice spacings must be positive".into()));
    }
    if r < alpha.max(beta) {
        return Err(Error::InvalidArgument("radius must be at least max(alpha, beta)".into()));
    }
    let n_max = (r / alpha).floor() as i64;
    let m_max = (r / beta).floor() as i64;
    let mut points = Vec::new();
    for n in -n_max..=n_max {
        for m in -m_max..=m_max {
            let z = Cplx::new(alpha * n as f64, beta * m as f64);
            if z.norm() <= r {
                points.push(z);
            }
        }
    }
    SamplingSet::with_generator(points, Generator::Lattice { alpha, beta, r })
}

/// Number of roots on ring `k`: the smallest integer exceeding `2 pi k^2`.
pub fn ring_count(k: usize) -> usize {
    (2.0 * std::f64::consts::PI * (k * k) as f64).floor() as usize + 1
}

/// Concentric roots-of-unity set: for each `k <= k_max`, the `l_k`-th roots
/// of unity scaled to radius `k`, with `l_k` the smallest integer above
/// `2 pi k^2`. Ordered by `(k, j)`.
pub fn ring_roots(k_max: usize) -> Result<SamplingSet> {
    if k_max < 1 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    let mut points = Vec::new();
    for k in 1..=k_max {
        let l_k = ring_count(k);
        for j in 1..=l_k {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / l_k as f64;
            points.push(Cplx::from_polar(k as f64, theta));
        }
    }
    SamplingSet::with_generator(points, Generator::RingRoots { k_max })
}

/// The restriction `f|_S` in the set's canonical order.
pub fn restriction(f: &TruncatedFunction, s: &SamplingSet) -> Result<Vec<Cplx>> {
    s.points().iter().map(|&z| f.evaluate(z)).collect()
}

/// Sampled weighted sup norm `max_i v_n(|z_i|) |f(z_i)|`.
pub fn sample_norm(
    f: &TruncatedFunction,
    s: &SamplingSet,
    family: &WeightFamily,
    n: usize,
) -> Result<f64> {
    let mut best: f64 = 0.0;
    for &z in s.points() {
        let w = family.eval_weight(n, z)?;
        best = best.max(w * f.evaluate(z)?.norm());
    }
    Ok(best)
}

/// The ℓ2 variant of the sampled norm, `sqrt(Σ_i (v_n(|z_i|)|f(z_i)|)^2)`.
pub fn sample_norm_l2(
    f: &TruncatedFunction,
    s: &SamplingSet,
    family: &WeightFamily,
    n: usize,
) -> Result<f64> {
    let mut sum = 0.0;
    for &z in s.points() {
        let w = family.eval_weight(n, z)?;
        let v = w * f.evaluate(z)?.norm();
        sum += v * v;
    }
    Ok(sum.sqrt())
}

fn weighted_grid_matrix(
    grid: &GridSpec,
    family: &WeightFamily,
    m: usize,
    degree: usize,
) -> Result<DenseMatrix> {
    let pts = grid.points();
    let mut entries = Vec::with_capacity(pts.len() * (degree + 1));
    for &z in &pts {
        let w = family.eval_weight(m, z)?;
        let mut zp = Cplx::new(w, 0.0);
        for _ in 0..=degree {
            entries.push(zp);
            zp *= z;
        }
    }
    numkernel::from_rows(pts.len(), degree + 1, &entries)
}

/// Sharp constant, over the truncated class and the given grid, in
/// `||f||_{m,grid} <= C ||f||_{n,S}`.
///
/// Computed as the ℓ∞→ℓ∞ operator norm (maximum absolute row sum) of the
/// composite map weighted samples → coefficients → weighted grid values.
pub fn sampling_constant(
    s: &SamplingSet,
    family: &WeightFamily,
    n: usize,
    m: usize,
    degree: usize,
    grid: &GridSpec,
    threshold: f64,
) -> Result<f64> {
    let e = analysis_matrix(s, family, n, degree)?;
    let f = numkernel::svd(e.entries())?;
    if e.rows() < degree + 1 || f.sigma_min() <= threshold * f.sigma_max() {
        return Err(Error::RankDeficient(format!(
            "S is not a uniqueness set at degree {degree}: sigma_min {:.3e}",
            f.sigma_min()
        )));
    }
    let pinv = numkernel::pseudo_inverse(e.entries(), threshold)?;
    let g = weighted_grid_matrix(grid, family, m, degree)?;
    let composite = g * pinv;
    let mut c: f64 = 0.0;
    for i in 0..composite.nrows() {
        let row_sum: f64 = composite.row(i).iter().map(|x| x.norm()).sum();
        c = c.max(row_sum);
    }
    Ok(c)
}

/// The ℓ2→ℓ2 variant of [`sampling_constant`]: the largest singular value of
/// the composite map. Because the pseudo-inverse annihilates the orthogonal
/// complement of the sample range, this is the sharp constant in
/// `||f||_{m,grid,2} <= C ||f||_{n,S,2}` over the truncated class, and it is
/// monotone under enlarging `S`.
pub fn sampling_constant_l2(
    s: &SamplingSet,
    family: &WeightFamily,
    n: usize,
    m: usize,
    degree: usize,
    grid: &GridSpec,
    threshold: f64,
) -> Result<f64> {
    let e = analysis_matrix(s, family, n, degree)?;
    let f = numkernel::svd(e.entries())?;
    if e.rows() < degree + 1 || f.sigma_min() <= threshold * f.sigma_max() {
        return Err(Error::RankDeficient(format!(
            "S is not a uniqueness set at degree {degree}: sigma_min {:.3e}",
            f.sigma_min()
        )));
    }
    let pinv = numkernel::pseudo_inverse(e.entries(), threshold)?;
    let g = weighted_grid_matrix(grid, family, m, degree)?;
    let composite = g * pinv;
    Ok(numkernel::svd(&composite)?.sigma_max())
}

/// Result of scanning target levels for a finite sampling constant.
#[derive(Debug, Clone)]
pub struct SufficiencyReport {
    /// Source weight level of the sampled norm.
    pub n: usize,
    /// First target level with a finite constant, if any.
    pub m_found: Option<usize>,
    /// The constant at `m_found`.
    pub constant: Option<f64>,
    /// Smallest singular value of the unweighted evaluation matrix.
    pub sigma_min_unweighted: f64,
    pub grid_used: GridSpec,
    pub degree: usize,
}

/// Scan `m = n..=m_max` for the first level with a finite sampling constant.
/// Failure is encoded as an absent `m_found`, not an error.
pub fn weak_sufficiency_report(
    s: &SamplingSet,
    family: &WeightFamily,
    n: usize,
    degree: usize,
    grid: &GridSpec,
    m_max: usize,
) -> Result<SufficiencyReport> {
    let (sigma_min_unweighted, _) = uniqueness_margin(s, degree)?;
    // A finite constant exists at some target level iff the evaluation
    // matrix has full column rank, which does not depend on m; so the
    // first admissible level is always m = n when the set is a uniqueness
    // set at this degree, and no level works otherwise.
    let mut m_found = None;
    let mut constant = None;
    if n <= m_max.min(family.n_max) {
        match sampling_constant(s, family, n, n, degree, grid, 1e-10) {
            Ok(c) => {
                m_found = Some(n);
                constant = Some(c);
            }
            Err(Error::RankDeficient(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(SufficiencyReport {
        n,
        m_found,
        constant,
        sigma_min_unweighted,
        grid_used: grid.clone(),
        degree,
    })
}

/// Smallest singular value of the unweighted evaluation matrix `(z_i^k)`,
/// with the right singular vector as witness. A (numerically) zero margin
/// means a nonzero degree-`D` polynomial vanishes on `S`.
pub fn uniqueness_margin(s: &SamplingSet, degree: usize) -> Result<(f64, Vec<Cplx>)> {
    let u = AnalysisMatrix::from_points(s.points(), &vec![1.0; s.len()], degree)?;
    let f = numkernel::svd(u.entries())?;
    if s.len() < degree + 1 {
        // wide matrix: an exact kernel exists; recover it from the full SVD of
        // the square padding. The thin SVD of a wide matrix has no kernel
        // vector, so compute the nullspace via the Gram matrix instead.
        let gram = u.entries().adjoint() * u.entries();
        let fg = numkernel::svd(&gram)?;
        let witness: Vec<Cplx> = fg.v_h.row(degree).iter().map(|x| x.conj()).collect();
        return Ok((0.0, witness));
    }
    let witness: Vec<Cplx> = f.v_h.row(degree).iter().map(|x| x.conj()).collect();
    Ok((f.sigma_min(), witness))
}

/// Outcome of the density-criterion probe.
#[derive(Debug, Clone)]
pub struct DensityReport {
    /// Largest observed `d(z, S) sqrt(q(|z|)) / (C |z|)`.
    pub max_violation_ratio: f64,
    pub pass: bool,
}

/// Check the covering condition `d(z, S) <= C |z| / sqrt(q(|z|))` on a probe
/// grid. Probes at the origin are skipped.
pub fn schneider_density_check(
    s: &SamplingSet,
    q: &GrowthCondition,
    c: f64,
    probe_grid: &GridSpec,
) -> Result<DensityReport> {
    if c <= 0.0 {
        return Err(Error::InvalidArgument("C must be positive".into()));
    }
    let mut max_ratio: f64 = 0.0;
    for z in probe_grid.points() {
        let r = z.norm();
        if r == 0.0 {
            continue;
        }
        let d = s.points().iter().map(|&p| (z - p).norm()).fold(f64::INFINITY, f64::min);
        let qv = q.eval(r)?;
        if qv <= 0.0 {
            return Err(Error::DegenerateWeight(format!("q({r}) <= 0")));
        }
        max_ratio = max_ratio.max(d * qv.sqrt() / (c * r));
    }
    Ok(DensityReport { max_violation_ratio: max_ratio, pass: max_ratio <= 1.0 })
}
