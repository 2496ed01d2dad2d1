//! Experiment configuration: parsing, validation, and echo round-tripping.

use serde::{Deserialize, Serialize};

/// A validated experiment request. The `experiment` tag selects the typed
/// parameter record; unknown fields anywhere are rejected so that typos in
/// golden configs fail loudly.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "experiment", content = "parameters", rename_all = "snake_case")]
pub enum ExperimentConfig {
    FockFrame(FockFrameParams),
    Sufficiency(SufficiencyParams),
    Uniqueness(UniquenessParams),
    Dirichlet(DirichletParams),
    Sigma(SigmaParams),
    Schneider(SchneiderParams),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FockFrameParams {
    pub gamma: f64,
    pub alpha: f64,
    pub beta: f64,
    pub radius: f64,
    pub degree: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SufficiencyParams {
    /// Exponent of the power growth condition p(r) = r^a.
    pub growth_exponent: f64,
    pub alpha: f64,
    pub beta: f64,
    pub radius: f64,
    pub n: i64,
    pub m_max: i64,
    pub degree: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct UniquenessParams {
    pub k_max: i64,
    pub degree: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DirichletParams {
    /// Target f(z) = e^{a z}; complex numbers are encoded as [re, im].
    pub exponent: [f64; 2],
    pub taylor_degree: i64,
    pub freq_n_max: i64,
    pub grid_radius: f64,
    pub ridge: f64,
    /// Decay exponent b for the coefficient fit.
    pub decay_b: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SigmaParams {
    pub alpha: f64,
    pub beta: f64,
    pub radius_min: f64,
    pub radius_max: f64,
    pub radius_steps: i64,
    pub angles: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SchneiderParams {
    pub growth_exponent: f64,
    pub alpha: f64,
    pub beta: f64,
    pub radius: f64,
    pub constant: f64,
    pub probe_radius: f64,
}

fn positive(name: &str, v: f64) -> Result<(), String> {
    if !v.is_finite() || v <= 0.0 {
        return Err(format!("{name} must be a positive finite number, got {v}"));
    }
    Ok(())
}

fn nonneg_int(name: &str, v: i64, max: i64) -> Result<(), String> {
    if v < 0 {
        return Err(format!("{name} must be nonnegative, got {v}"));
    }
    if v > max {
        return Err(format!("{name} must be at most {max}, got {v}"));
    }
    Ok(())
}

impl ExperimentConfig {
    /// Checks every numeric parameter against the target operation's
    /// preconditions. Errors name the offending field.
    pub fn validate(&self) -> Result<(), String> {
        match self {
            ExperimentConfig::FockFrame(p) => {
                positive("gamma", p.gamma)?;
                positive("alpha", p.alpha)?;
                positive("beta", p.beta)?;
                positive("radius", p.radius)?;
                nonneg_int("degree", p.degree, 30)
            }
            ExperimentConfig::Sufficiency(p) => {
                positive("growth_exponent", p.growth_exponent)?;
                positive("alpha", p.alpha)?;
                positive("beta", p.beta)?;
                positive("radius", p.radius)?;
                nonneg_int("n", p.n, 64)?;
                if p.n == 0 {
                    return Err("n must be at least 1".into());
                }
                nonneg_int("m_max", p.m_max, 64)?;
                if p.m_max < p.n {
                    return Err(format!("m_max must be at least n = {}, got {}", p.n, p.m_max));
                }
                nonneg_int("degree", p.degree, 30)
            }
            ExperimentConfig::Uniqueness(p) => {
                nonneg_int("k_max", p.k_max, 16)?;
                if p.k_max == 0 {
                    return Err("k_max must be at least 1".into());
                }
                nonneg_int("degree", p.degree, 30)
            }
            ExperimentConfig::Dirichlet(p) => {
                if !p.exponent.iter().all(|v| v.is_finite()) {
                    return Err("exponent must be a finite [re, im] pair".into());
                }
                nonneg_int("taylor_degree", p.taylor_degree, 30)?;
                nonneg_int("freq_n_max", p.freq_n_max, 8)?;
                positive("grid_radius", p.grid_radius)?;
                if !p.ridge.is_finite() || p.ridge < 0.0 {
                    return Err(format!("ridge must be nonnegative, got {}", p.ridge));
                }
                positive("decay_b", p.decay_b)
            }
            ExperimentConfig::Sigma(p) => {
                positive("alpha", p.alpha)?;
                positive("beta", p.beta)?;
                positive("radius_min", p.radius_min)?;
                positive("radius_max", p.radius_max)?;
                if p.radius_max <= p.radius_min {
                    return Err(format!(
                        "radius_max must exceed radius_min, got {} <= {}",
                        p.radius_max, p.radius_min
                    ));
                }
                nonneg_int("radius_steps", p.radius_steps, 256)?;
                if p.radius_steps < 5 {
                    return Err(format!("radius_steps must be at least 5, got {}", p.radius_steps));
                }
                nonneg_int("angles", p.angles, 4096)?;
                if p.angles < 8 {
                    return Err(format!("angles must be at least 8, got {}", p.angles));
                }
                Ok(())
            }
            ExperimentConfig::Schneider(p) => {
                positive("growth_exponent", p.growth_exponent)?;
                positive("alpha", p.alpha)?;
                positive("beta", p.beta)?;
                positive("radius", p.radius)?;
                positive("constant", p.constant)?;
                positive("probe_radius", p.probe_radius)
            }
        }
    }

    /// Short name used for log lines.
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentConfig::FockFrame(_) => "fock_frame",
            ExperimentConfig::Sufficiency(_) => "sufficiency",
            ExperimentConfig::Uniqueness(_) => "uniqueness",
            ExperimentConfig::Dirichlet(_) => "dirichlet",
            ExperimentConfig::Sigma(_) => "sigma",
            ExperimentConfig::Schneider(_) => "schneider",
        }
    }
}
