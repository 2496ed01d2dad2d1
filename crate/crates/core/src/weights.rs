//! Growth conditions and the weight families derived from them.
//!
//! A growth condition is a nondecreasing radial function `p`; the weight
//! families it generates (`v_n = e^{-n p}`, `w_n = e^{-p/n}`, the disc
//! schemes, and the Gaussian row weights used for Fock-type evaluation
//! matrices) define every norm in the crate.

use crate::error::{Error, Result};
use crate::Cplx;

/// Radial growth function `p(r)`.
#[derive(Debug, Clone, PartialEq)]
pub enum GrowthCondition {
    /// `p(r) = r^a`, `a > 0`.
    Power { a: f64 },
    /// `p(r) = (log(1 + r^2))^a`, `a > 0`.
    LogPower { a: f64 },
    /// Tabulated samples `(r_i, p(r_i))`, interpolated linearly in `log r`.
    /// Evaluation outside the tabulated range is a hard error.
    Table { radii: Vec<f64>, values: Vec<f64> },
}

impl GrowthCondition {
    pub fn power(a: f64) -> Result<Self> {
        if a <= 0.0 || !a.is_finite() {
            return Err(Error::InvalidArgument("power exponent must be positive".into()));
        }
        Ok(GrowthCondition::Power { a })
    }

    pub fn log_power(a: f64) -> Result<Self> {
        if a <= 0.0 || !a.is_finite() {
            return Err(Error::InvalidArgument("log-power exponent must be positive".into()));
        }
        Ok(GrowthCondition::LogPower { a })
    }

    pub fn table(radii: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if radii.len() != values.len() || radii.len() < 2 {
            return Err(Error::InvalidArgument("table needs at least two (r, p) samples".into()));
        }
        if !radii.windows(2).all(|w| w[0] > 0.0 && w[0] < w[1]) {
            return Err(Error::InvalidArgument("table radii must be positive and increasing".into()));
        }
        if !values.windows(2).all(|w| w[0] <= w[1]) || values.iter().any(|v| *v < 0.0) {
            return Err(Error::InvalidArgument("table values must be nonnegative and nondecreasing".into()));
        }
        Ok(GrowthCondition::Table { radii, values })
    }

    /// Evaluate `p(r)` at a nonnegative radius.
    pub fn eval(&self, r: f64) -> Result<f64> {
        if r < 0.0 || !r.is_finite() {
            return Err(Error::InvalidArgument(format!("radius {r} must be finite and >= 0")));
        }
        match self {
            GrowthCondition::Power { a } => Ok(r.powf(*a)),
            GrowthCondition::LogPower { a } => Ok((1.0 + r * r).ln().powf(*a)),
            GrowthCondition::Table { radii, values } => {
                let (lo, hi) = (radii[0], radii[radii.len() - 1]);
                if r < lo || r > hi {
                    return Err(Error::Domain(format!(
                        "radius {r} outside tabulated range [{lo}, {hi}]"
                    )));
                }
                let lr = r.ln();
                let idx = radii.partition_point(|&x| x < r).min(radii.len() - 1).max(1);
                let (r0, r1) = (radii[idx - 1].ln(), radii[idx].ln());
                let t = if r1 > r0 { (lr - r0) / (r1 - r0) } else { 0.0 };
                Ok(values[idx - 1] + t * (values[idx] - values[idx - 1]))
            }
        }
    }
}

/// Domain of a weight family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Plane,
    UnitDisc,
}

/// Weight scheme: how the sequence of weights is built.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightScheme {
    /// `v_n(z) = e^{-n p(|z|)}` (decreasing in `n`; inductive-limit scale).
    InductivePowers,
    /// `w_n(z) = e^{-p(|z|)/n}` (increasing in `n`; projective scale).
    ProjectiveRoots,
    /// `v_n(z) = (1 - |z|)^n` on the unit disc.
    DiscPower,
    /// `w_n(z) = (1 + |z|)^n e^{-|z|}` (dual of the disc scale, lives on the plane).
    DiscDual,
    /// `e^{-gamma |z|^2 / 2}`, independent of `n`; the row weight of
    /// Fock-type analysis matrices.
    FockGaussian { gamma: f64 },
}

/// A finite family of radial weights `v_1, ..., v_{n_max}`.
#[derive(Debug, Clone)]
pub struct WeightFamily {
    pub domain: Domain,
    pub scheme: WeightScheme,
    pub base: Option<GrowthCondition>,
    pub n_max: usize,
}

impl WeightFamily {
    pub fn new(scheme: WeightScheme, base: Option<GrowthCondition>, n_max: usize) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::InvalidArgument("n_max must be at least 1".into()));
        }
        let domain = match scheme {
            WeightScheme::DiscPower => Domain::UnitDisc,
            _ => Domain::Plane,
        };
        match scheme {
            WeightScheme::InductivePowers | WeightScheme::ProjectiveRoots => {
                if base.is_none() {
                    return Err(Error::InvalidArgument("scheme requires a growth condition".into()));
                }
            }
            WeightScheme::FockGaussian { gamma } if gamma <= 0.0 => {
                return Err(Error::InvalidArgument("gamma must be positive".into()));
            }
            _ => {}
        }
        Ok(WeightFamily { domain, scheme, base, n_max })
    }

    /// Convenience constructor for `v_n = e^{-n p}`.
    pub fn inductive_powers(p: GrowthCondition, n_max: usize) -> Result<Self> {
        Self::new(WeightScheme::InductivePowers, Some(p), n_max)
    }

    /// Convenience constructor for `w_n = e^{-p/n}`.
    pub fn projective_roots(p: GrowthCondition, n_max: usize) -> Result<Self> {
        Self::new(WeightScheme::ProjectiveRoots, Some(p), n_max)
    }

    pub fn disc_power(n_max: usize) -> Result<Self> {
        Self::new(WeightScheme::DiscPower, None, n_max)
    }

    pub fn disc_dual(n_max: usize) -> Result<Self> {
        Self::new(WeightScheme::DiscDual, None, n_max)
    }

    pub fn fock_gaussian(gamma: f64) -> Result<Self> {
        Self::new(WeightScheme::FockGaussian { gamma }, None, 1)
    }

    fn check_point(&self, z: Cplx) -> Result<f64> {
        let r = z.norm();
        if !r.is_finite() {
            return Err(Error::Domain("non-finite point".into()));
        }
        if self.domain == Domain::UnitDisc && r >= 1.0 {
            return Err(Error::Domain(format!("|z| = {r} >= 1 outside the unit disc")));
        }
        Ok(r)
    }

    /// The weight value `v_n(|z|)` (or `w_n(|z|)`).
    pub fn eval_weight(&self, n: usize, z: Cplx) -> Result<f64> {
        if n < 1 || n > self.n_max {
            return Err(Error::IndexOutOfRange { index: n, max: self.n_max });
        }
        let r = self.check_point(z)?;
        let value = match &self.scheme {
            WeightScheme::InductivePowers => {
                let p = self.base.as_ref().expect("validated").eval(r)?;
                (-(n as f64) * p).exp()
            }
            WeightScheme::ProjectiveRoots => {
                let p = self.base.as_ref().expect("validated").eval(r)?;
                (-p / n as f64).exp()
            }
            WeightScheme::DiscPower => (1.0 - r).powi(n as i32),
            WeightScheme::DiscDual => (1.0 + r).powi(n as i32) * (-r).exp(),
            WeightScheme::FockGaussian { gamma } => (-gamma * r * r / 2.0).exp(),
        };
        if value <= 0.0 || !value.is_finite() {
            return Err(Error::DegenerateWeight(format!("weight underflow at |z| = {r}")));
        }
        Ok(value)
    }
}

/// Finite-radius diagnostic for the two asymptotic growth conditions.
#[derive(Debug, Clone)]
pub struct GrowthReport {
    /// `log(1 + r^2) / p(r)` over the sampled radii.
    pub alpha_trend: Vec<f64>,
    /// `p(2r) / p(r)` over the sampled radii.
    pub beta_ratios: Vec<f64>,
    /// The alpha trend is decreasing over the last three radii.
    pub alpha_plausible: bool,
    /// All beta ratios stay below the supplied tolerance.
    pub beta_plausible: bool,
}

/// Trend test for `log(1+r^2) = o(p(r))` and `p(2r) = O(p(r))` on a finite
/// list of radii. The conditions are asymptotic; the report exposes the raw
/// sequences so callers can inspect the trends.
pub fn check_growth_conditions(
    p: &GrowthCondition,
    radii: &[f64],
    ratio_tolerance: f64,
) -> Result<GrowthReport> {
    if radii.len() < 4 {
        return Err(Error::InvalidArgument("need at least 4 radii".into()));
    }
    if !radii.windows(2).all(|w| w[0] > 0.0 && w[0] < w[1]) {
        return Err(Error::InvalidArgument("radii must be positive and strictly increasing".into()));
    }
    if radii[radii.len() - 1] < 100.0 {
        return Err(Error::InvalidArgument("last radius must be at least 100".into()));
    }
    let mut alpha_trend = Vec::with_capacity(radii.len());
    let mut beta_ratios = Vec::with_capacity(radii.len());
    for &r in radii {
        let pr = p.eval(r)?;
        if pr == 0.0 {
            return Err(Error::DegenerateWeight(format!("p({r}) = 0")));
        }
        alpha_trend.push((1.0 + r * r).ln() / pr);
        beta_ratios.push(p.eval(2.0 * r)? / pr);
    }
    let tail = &alpha_trend[alpha_trend.len() - 3..];
    let alpha_plausible = tail[0] > tail[1] && tail[1] > tail[2];
    let beta_plausible = beta_ratios.iter().all(|&q| q <= ratio_tolerance);
    Ok(GrowthReport { alpha_trend, beta_ratios, alpha_plausible, beta_plausible })
}
