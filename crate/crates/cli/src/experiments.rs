//! Experiment drivers: each maps a validated config to a report payload and
//! optional CSV tables.
//!
//! Numerical failures (rank deficiency, degenerate grids) are exploratory
//! outcomes, not usage errors: they are encoded in the report under a
//! `failure` key and the process still exits successfully.

use holoframe::dirichlet::{
    decay_check, expand, growth_order_estimate, nullspace_witness, weierstrass_sigma, FrequencySet,
};
use holoframe::frames::{analysis_matrix, frame_bounds};
use holoframe::funcspace::{fock_moment, GridSpec, TruncatedFunction};
use holoframe::sampling::{
    lattice, ring_roots, schneider_density_check, uniqueness_margin, weak_sufficiency_report,
};
use holoframe::weights::{GrowthCondition, WeightFamily};
use holoframe::Cplx;
use serde_json::{json, Map, Value};

use crate::config::*;

/// Result of one experiment: a JSON payload plus named CSV tables.
pub struct ExperimentOutput {
    pub payload: Value,
    pub tables: Vec<(String, String)>,
}

fn failure(err: impl std::fmt::Display) -> ExperimentOutput {
    ExperimentOutput { payload: json!({ "failure": err.to_string() }), tables: Vec::new() }
}

fn complex_json(z: Cplx) -> Value {
    json!([z.re, z.im])
}

/// Dispatch on the experiment tag. Only returns `Err` for conditions that
/// validation should have caught; library-level numerical failures are
/// folded into the payload.
pub fn run(config: &ExperimentConfig) -> Result<ExperimentOutput, String> {
    match config {
        ExperimentConfig::FockFrame(p) => fock_frame(p),
        ExperimentConfig::Sufficiency(p) => sufficiency(p),
        ExperimentConfig::Uniqueness(p) => uniqueness(p),
        ExperimentConfig::Dirichlet(p) => dirichlet(p),
        ExperimentConfig::Sigma(p) => sigma(p),
        ExperimentConfig::Schneider(p) => schneider(p),
    }
}

fn fock_frame(p: &FockFrameParams) -> Result<ExperimentOutput, String> {
    let degree = p.degree as usize;
    let fam = WeightFamily::fock_gaussian(p.gamma).map_err(|e| e.to_string())?;
    let set = lattice(p.alpha, p.beta, p.radius).map_err(|e| e.to_string())?;
    let u = match analysis_matrix(&set, &fam, 1, degree) {
        Ok(u) => u,
        Err(e) => return Ok(failure(e)),
    };
    let d: Vec<f64> = (0..=degree).map(|k| fock_moment(k, p.gamma)).collect();
    let fb = match frame_bounds(&u, Some(&d)) {
        Ok(fb) => fb,
        Err(e) => return Ok(failure(e)),
    };
    Ok(ExperimentOutput {
        payload: json!({
            "points": set.len(),
            "lower": fb.lower,
            "upper": fb.upper,
            "ratio": if fb.lower > 0.0 { Value::from(fb.upper / fb.lower) } else { Value::Null },
            "sigma_min": fb.sigma_min,
            "sigma_max": fb.sigma_max,
            "rank": fb.rank,
        }),
        tables: Vec::new(),
    })
}

fn sufficiency(p: &SufficiencyParams) -> Result<ExperimentOutput, String> {
    let q = GrowthCondition::power(p.growth_exponent).map_err(|e| e.to_string())?;
    let fam = WeightFamily::inductive_powers(q, p.m_max as usize).map_err(|e| e.to_string())?;
    let set = lattice(p.alpha, p.beta, p.radius).map_err(|e| e.to_string())?;
    let grid = GridSpec::default_for_radius(p.radius).map_err(|e| e.to_string())?;
    let rep = match weak_sufficiency_report(
        &set,
        &fam,
        p.n as usize,
        p.degree as usize,
        &grid,
        p.m_max as usize,
    ) {
        Ok(r) => r,
        Err(e) => return Ok(failure(e)),
    };
    Ok(ExperimentOutput {
        payload: json!({
            "points": set.len(),
            "n": rep.n,
            "m_found": rep.m_found,
            "constant": rep.constant,
            "sigma_min_unweighted": rep.sigma_min_unweighted,
        }),
        tables: Vec::new(),
    })
}

fn uniqueness(p: &UniquenessParams) -> Result<ExperimentOutput, String> {
    let set = ring_roots(p.k_max as usize).map_err(|e| e.to_string())?;
    let (margin, witness) = match uniqueness_margin(&set, p.degree as usize) {
        Ok(r) => r,
        Err(e) => return Ok(failure(e)),
    };
    let mut csv = String::from("index,re,im,abs\n");
    for (i, w) in witness.iter().enumerate() {
        csv.push_str(&format!("{i},{:.17e},{:.17e},{:.17e}\n", w.re, w.im, w.norm()));
    }
    Ok(ExperimentOutput {
        payload: json!({
            "points": set.len(),
            "margin": margin,
            "unique_at_degree": margin > 0.0,
        }),
        tables: vec![("witness.csv".into(), csv)],
    })
}

fn dirichlet(p: &DirichletParams) -> Result<ExperimentOutput, String> {
    let a = Cplx::new(p.exponent[0], p.exponent[1]);
    let f = TruncatedFunction::exp_taylor(a, p.taylor_degree as usize)
        .map_err(|e| e.to_string())?;
    let freqs = FrequencySet::square(p.freq_n_max).map_err(|e| e.to_string())?;
    let grid = GridSpec::expansion_default(p.grid_radius).map_err(|e| e.to_string())?;
    let exp = match expand(&f, &freqs, &grid, p.ridge) {
        Ok(e) => e,
        Err(e) => return Ok(failure(e)),
    };
    let fit = decay_check(&exp, p.decay_b, 1e-14).ok();
    let witness = nullspace_witness(&freqs, &grid).ok();

    let mut csv = String::from("n,m,re,im,abs\n");
    let n_max = p.freq_n_max;
    for (idx, c) in exp.coeffs.iter().enumerate() {
        let side = 2 * n_max + 1;
        let n = idx as i64 / side - n_max;
        let m = idx as i64 % side - n_max;
        csv.push_str(&format!("{n},{m},{:.17e},{:.17e},{:.17e}\n", c.re, c.im, c.norm()));
    }

    let mut payload = Map::new();
    payload.insert("frequencies".into(), json!(exp.freqs.len()));
    payload.insert("ridge".into(), json!(exp.ridge));
    payload.insert("residual_sup".into(), json!(exp.residual_sup));
    if let Some(fit) = fit {
        payload.insert(
            "decay_fit".into(),
            json!({
                "exponent": fit.exponent,
                "epsilon": fit.epsilon,
                "c": fit.c,
                "r_squared": fit.r_squared,
            }),
        );
    }
    if let Some(w) = witness {
        payload.insert(
            "nullspace_witness".into(),
            json!({
                "residual_sup": w.residual_sup,
                "leading_coefficient": complex_json(w.coeffs[0]),
            }),
        );
    }
    Ok(ExperimentOutput {
        payload: Value::Object(payload),
        tables: vec![("coefficients.csv".into(), csv)],
    })
}

fn sigma(p: &SigmaParams) -> Result<ExperimentOutput, String> {
    let steps = p.radius_steps as usize;
    let mut samples = Vec::with_capacity(steps);
    let mut csv = String::from("r,max_modulus\n");
    for i in 0..steps {
        let r = p.radius_min
            + (p.radius_max - p.radius_min) * i as f64 / (steps - 1) as f64;
        let r_trunc = (10.0 * r + 1.0).max(20.0);
        let mut max_mod: f64 = 0.0;
        for j in 0..p.angles {
            let z = Cplx::from_polar(
                r,
                2.0 * std::f64::consts::PI * j as f64 / p.angles as f64,
            );
            match weierstrass_sigma(z, p.alpha, p.beta, r_trunc) {
                Ok(v) => max_mod = max_mod.max(v.norm()),
                Err(e) => return Ok(failure(e)),
            }
        }
        samples.push((r, max_mod));
        csv.push_str(&format!("{r:.17e},{max_mod:.17e}\n"));
    }
    let est = match growth_order_estimate(&samples) {
        Ok(e) => e,
        Err(e) => return Ok(failure(e)),
    };
    Ok(ExperimentOutput {
        payload: json!({
            "order": est.order,
            "log_type": est.log_type,
        }),
        tables: vec![("modulus.csv".into(), csv)],
    })
}

fn schneider(p: &SchneiderParams) -> Result<ExperimentOutput, String> {
    let q = GrowthCondition::power(p.growth_exponent).map_err(|e| e.to_string())?;
    let set = lattice(p.alpha, p.beta, p.radius).map_err(|e| e.to_string())?;
    let probe = GridSpec::default_for_radius(p.probe_radius).map_err(|e| e.to_string())?;
    let rep = match schneider_density_check(&set, &q, p.constant, &probe) {
        Ok(r) => r,
        Err(e) => return Ok(failure(e)),
    };
    Ok(ExperimentOutput {
        payload: json!({
            "points": set.len(),
            "max_violation_ratio": rep.max_violation_ratio,
            "pass": rep.pass,
        }),
        tables: Vec::new(),
    })
}
