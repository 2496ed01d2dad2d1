//! Truncated Taylor expansions: the desk-scale model of weighted spaces of
//! holomorphic functions.
//!
//! Elements are polynomials `f(z) = c_0 + c_1 z + ... + c_D z^D` on the
//! plane or the unit disc. Weighted sup norms are taken over a finite grid
//! (a sup from below); Fock norms are exact via the Gaussian moments of the
//! monomials.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::weights::{Domain, WeightFamily};
use crate::Cplx;

/// Largest supported truncation degree; `30!` still fits comfortably in an f64.
pub const MAX_DEGREE: usize = 30;

/// A polynomial of degree `D` with complex coefficients `c_0..c_D`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedFunction {
    coeffs: Vec<Cplx>,
    domain: Domain,
}

impl TruncatedFunction {
    pub fn new(coeffs: Vec<Cplx>, domain: Domain) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("coefficient vector must be nonempty".into()));
        }
        if !coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite coefficient".into()));
        }
        Ok(TruncatedFunction { coeffs, domain })
    }

    /// Entire function (plane domain) from coefficients.
    pub fn entire(coeffs: Vec<Cplx>) -> Result<Self> {
        Self::new(coeffs, Domain::Plane)
    }

    /// The monomial `z^k` on the plane.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Cplx::new(0.0, 0.0); k + 1];
        coeffs[k] = Cplx::new(1.0, 0.0);
        TruncatedFunction { coeffs, domain: Domain::Plane }
    }

    /// Truncated Taylor expansion of `e^{a z}` up to degree `degree`.
    pub fn exp_taylor(a: Cplx, degree: usize) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeOverflow(degree, MAX_DEGREE));
        }
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut term = Cplx::new(1.0, 0.0);
        coeffs.push(term);
        for k in 1..=degree {
            term = term * a / Cplx::new(k as f64, 0.0);
            coeffs.push(term);
        }
        Ok(TruncatedFunction { coeffs, domain: Domain::Plane })
    }

    pub fn coeffs(&self) -> &[Cplx] {
        &self.coeffs
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation of `Σ c_k z^k`.
    pub fn evaluate(&self, z: Cplx) -> Result<Cplx> {
        if self.domain == Domain::UnitDisc && z.norm() >= 1.0 {
            return Err(Error::Domain(format!("|z| = {} >= 1 outside the unit disc", z.norm())));
        }
        let mut acc = Cplx::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        Ok(acc)
    }

    /// Coefficientwise sum, padding the shorter polynomial with zeros.
    pub fn add(&self, other: &TruncatedFunction) -> Result<TruncatedFunction> {
        if self.domain != other.domain {
            return Err(Error::InvalidArgument("domain mismatch".into()));
        }
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Cplx::new(0.0, 0.0); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Ok(TruncatedFunction { coeffs, domain: self.domain })
    }

    pub fn scale(&self, t: Cplx) -> TruncatedFunction {
        TruncatedFunction {
            coeffs: self.coeffs.iter().map(|c| c * t).collect(),
            domain: self.domain,
        }
    }

    pub fn sub(&self, other: &TruncatedFunction) -> Result<TruncatedFunction> {
        self.add(&other.scale(Cplx::new(-1.0, 0.0)))
    }
}

/// Finite polar grid modeling the sup over the domain.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub radii: Vec<f64>,
    pub angles_per_radius: usize,
}

impl GridSpec {
    pub fn new(radii: Vec<f64>, angles_per_radius: usize) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::InvalidArgument("grid needs at least one radius".into()));
        }
        if !radii.windows(2).all(|w| w[0] < w[1]) || radii[0] <= 0.0 {
            return Err(Error::InvalidArgument("radii must be positive and strictly increasing".into()));
        }
        if angles_per_radius < 8 {
            return Err(Error::InvalidArgument("need at least 8 angles per radius".into()));
        }
        Ok(GridSpec { radii, angles_per_radius })
    }

    /// Default grid: 64 geometrically spaced radii over `[1e-3, r_max]`, 128 angles.
    pub fn default_for_radius(r_max: f64) -> Result<Self> {
        if r_max <= 1e-3 {
            return Err(Error::InvalidArgument("r_max must exceed 1e-3".into()));
        }
        let n = 64;
        let ratio = (r_max / 1e-3).powf(1.0 / (n - 1) as f64);
        let radii = (0..n).map(|i| 1e-3 * ratio.powi(i)).collect();
        GridSpec::new(radii, 128)
    }

    /// Default expansion grid: 16 evenly spaced radii up to `r_max`, 32 angles.
    /// Sized to overdetermine square-generated frequency sets while keeping
    /// exponential arguments moderate.
    pub fn expansion_default(r_max: f64) -> Result<Self> {
        if r_max <= 0.0 {
            return Err(Error::InvalidArgument("r_max must be positive".into()));
        }
        let radii = (1..=16).map(|i| r_max * i as f64 / 16.0).collect();
        GridSpec::new(radii, 32)
    }

    pub fn max_radius(&self) -> f64 {
        *self.radii.last().expect("nonempty")
    }

    /// All grid points in deterministic (radius-major, angle-minor) order.
    pub fn points(&self) -> Vec<Cplx> {
        let mut pts = Vec::with_capacity(self.radii.len() * self.angles_per_radius);
        for &r in &self.radii {
            for j in 0..self.angles_per_radius {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / self.angles_per_radius as f64;
                pts.push(Cplx::from_polar(r, theta));
            }
        }
        pts
    }
}

/// `max_z v_n(|z|) |f(z)|` over the grid, with the point attaining it.
pub fn weighted_sup_norm(
    f: &TruncatedFunction,
    family: &WeightFamily,
    n: usize,
    grid: &GridSpec,
) -> Result<(f64, Cplx)> {
    let pts = grid.points();
    if pts.is_empty() {
        return Err(Error::InvalidArgument("empty grid".into()));
    }
    let mut best = f64::NEG_INFINITY;
    let mut arg = pts[0];
    for z in pts {
        let w = family.eval_weight(n, z)?;
        let v = w * f.evaluate(z)?.norm();
        if v > best {
            best = v;
            arg = z;
        }
    }
    Ok((best, arg))
}

/// Exact squared Fock norm `Σ_k |c_k|^2 π k! / γ^{k+1}`.
///
/// Monomials are orthogonal in the Gaussian inner product and the diagonal
/// is the exact radial moment integral.
pub fn fock_norm_sq(f: &TruncatedFunction, gamma: f64) -> Result<f64> {
    if f.domain() != Domain::Plane {
        return Err(Error::Domain("Fock norm requires an entire function".into()));
    }
    if gamma <= 0.0 {
        return Err(Error::InvalidArgument("gamma must be positive".into()));
    }
    if f.degree() > MAX_DEGREE {
        return Err(Error::DegreeOverflow(f.degree(), MAX_DEGREE));
    }
    Ok(f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| c.norm_sqr() * fock_moment(k, gamma))
        .sum())
}

/// The monomial norm-square `π k! / γ^{k+1}` in the Fock inner product.
pub fn fock_moment(k: usize, gamma: f64) -> f64 {
    let mut fact = 1.0_f64;
    for j in 1..=k {
        fact *= j as f64;
    }
    std::f64::consts::PI * fact / gamma.powi(k as i32 + 1)
}

/// Random polynomial with components uniform in `[-1, 1]` scaled by `e^{-decay k}`.
pub fn random_function(degree: usize, decay: f64, seed: u64) -> Result<TruncatedFunction> {
    if decay < 0.0 {
        return Err(Error::InvalidArgument("decay must be nonnegative".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs = (0..=degree)
        .map(|k| {
            let s = (-decay * k as f64).exp();
            Cplx::new(s * rng.gen_range(-1.0..=1.0), s * rng.gen_range(-1.0..=1.0))
        })
        .collect();
    TruncatedFunction::entire(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::GrowthCondition;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Cplx {
        Cplx::new(re, im)
    }

    #[test]
    fn evaluate_constant_identity_quadratic() {
        let one = TruncatedFunction::entire(vec![c(1.0, 0.0)]).unwrap();
        assert_eq!(one.evaluate(c(5.0, 2.0)).unwrap(), c(1.0, 0.0));
        let id = TruncatedFunction::monomial(1);
        assert_eq!(id.evaluate(c(3.0, -1.0)).unwrap(), c(3.0, -1.0));
        let f = TruncatedFunction::entire(vec![c(1.0, 0.0); 3]).unwrap();
        assert_eq!(f.evaluate(c(2.0, 0.0)).unwrap(), c(7.0, 0.0));
    }

    #[test]
    fn disc_function_rejects_outside_points() {
        let f = TruncatedFunction::new(vec![c(1.0, 0.0)], Domain::UnitDisc).unwrap();
        assert!(f.evaluate(c(1.0, 0.0)).is_err());
        assert!(f.evaluate(c(0.5, 0.0)).is_ok());
    }

    #[test]
    fn sup_norm_of_constant_under_decreasing_weight() {
        let fam = WeightFamily::inductive_powers(GrowthCondition::power(1.0).unwrap(), 2).unwrap();
        let f = TruncatedFunction::entire(vec![c(1.0, 0.0)]).unwrap();
        let grid = GridSpec::default_for_radius(4.0).unwrap();
        let (v, arg) = weighted_sup_norm(&f, &fam, 1, &grid).unwrap();
        assert_relative_eq!(v, 1.0, max_relative = 1e-2);
        assert!(arg.norm() < 0.01);
    }

    #[test]
    fn sup_norm_of_z_matches_calculus_oracle() {
        // max of r e^{-r} is e^{-1} at r = 1
        let fam = WeightFamily::inductive_powers(GrowthCondition::power(1.0).unwrap(), 1).unwrap();
        let f = TruncatedFunction::monomial(1);
        let radii: Vec<f64> = (1..=4000).map(|i| i as f64 * 1e-3).collect();
        let grid = GridSpec::new(radii, 8).unwrap();
        let (v, arg) = weighted_sup_norm(&f, &fam, 1, &grid).unwrap();
        assert_relative_eq!(v, (-1.0_f64).exp(), max_relative = 1e-6);
        assert_relative_eq!(arg.norm(), 1.0, max_relative = 1e-2);
    }

    #[test]
    fn sup_norm_of_z_squared_gaussian_weight() {
        // max of r^2 e^{-r^2} is e^{-1} at r = 1
        let fam = WeightFamily::inductive_powers(GrowthCondition::power(2.0).unwrap(), 1).unwrap();
        let f = TruncatedFunction::monomial(2);
        let radii: Vec<f64> = (1..=4000).map(|i| i as f64 * 1e-3).collect();
        let grid = GridSpec::new(radii, 8).unwrap();
        let (v, _) = weighted_sup_norm(&f, &fam, 1, &grid).unwrap();
        assert_relative_eq!(v, (-1.0_f64).exp(), max_relative = 1e-6);
    }

    #[test]
    fn sup_norm_axioms() {
        let fam = WeightFamily::inductive_powers(GrowthCondition::power(1.0).unwrap(), 1).unwrap();
        let grid = GridSpec::default_for_radius(3.0).unwrap();
        for seed in 0..100 {
            let f = random_function(4, 0.0, seed).unwrap();
            let g = random_function(4, 0.0, seed + 1000).unwrap();
            let t = c(1.7, -0.4);
            let (nf, _) = weighted_sup_norm(&f, &fam, 1, &grid).unwrap();
            let (ng, _) = weighted_sup_norm(&g, &fam, 1, &grid).unwrap();
            let (nt, _) = weighted_sup_norm(&f.scale(t), &fam, 1, &grid).unwrap();
            let (ns, _) = weighted_sup_norm(&f.add(&g).unwrap(), &fam, 1, &grid).unwrap();
            assert_relative_eq!(nt, t.norm() * nf, max_relative = 1e-12);
            assert!(ns <= nf + ng + 1e-12);
        }
    }

    #[test]
    fn grid_refinement_never_decreases_sup() {
        let fam = WeightFamily::inductive_powers(GrowthCondition::power(1.0).unwrap(), 1).unwrap();
        let f = random_function(6, 0.2, 42).unwrap();
        let coarse = GridSpec::new(vec![0.5, 1.0, 2.0], 8).unwrap();
        let fine = GridSpec::new(vec![0.25, 0.5, 0.75, 1.0, 1.5, 2.0], 16).unwrap();
        let (nc, _) = weighted_sup_norm(&f, &fam, 1, &coarse).unwrap();
        let (nf, _) = weighted_sup_norm(&f, &fam, 1, &fine).unwrap();
        assert!(nf >= nc - 1e-15);
    }

    #[test]
    fn fock_norm_of_low_monomials() {
        use std::f64::consts::PI;
        let one = TruncatedFunction::entire(vec![c(1.0, 0.0)]).unwrap();
        assert_relative_eq!(fock_norm_sq(&one, 1.0).unwrap(), PI, max_relative = 1e-14);
        let z = TruncatedFunction::monomial(1);
        assert_relative_eq!(fock_norm_sq(&z, 1.0).unwrap(), PI, max_relative = 1e-14);
        assert_relative_eq!(fock_norm_sq(&z, 2.0).unwrap(), PI / 4.0, max_relative = 1e-14);
    }

    #[test]
    fn fock_norm_degree_guard() {
        let coeffs = vec![c(1.0, 0.0); 32];
        let f = TruncatedFunction::entire(coeffs).unwrap();
        assert!(matches!(fock_norm_sq(&f, 1.0), Err(Error::DegreeOverflow(31, _))));
    }

    #[test]
    fn random_function_deterministic_and_scaled() {
        let a = random_function(5, 1.0, 7).unwrap();
        let b = random_function(5, 1.0, 7).unwrap();
        assert_eq!(a, b);
        let c5 = a.coeffs()[5];
        assert!(c5.norm() <= 2.0_f64.sqrt() * (-5.0_f64).exp() + 1e-15);
        let konst = random_function(0, 0.0, 7).unwrap();
        let v = konst.coeffs()[0];
        assert_eq!(konst.evaluate(c(10.0, -3.0)).unwrap(), v);
    }

    #[test]
    fn exp_taylor_matches_exp() {
        let f = TruncatedFunction::exp_taylor(c(0.5, 0.0), 20).unwrap();
        let z = c(1.2, 0.7);
        let exact = (z * c(0.5, 0.0)).exp();
        assert!((f.evaluate(z).unwrap() - exact).norm() < 1e-12);
    }
}
