//! Galerkin matrices for the reduced two-point problem.
//!
//! For trial/test functions `chi` the three blocks are
//!
//! * `K[i][k] = ((D^2 - a^2) chi_k, chi_i)` (stiffness),
//! * `M[i][k] = (chi_k, chi_i)` (mass),
//! * `G[i][k] = ((1 + eps h) chi_k, chi_i)` (gravity-weighted mass).
//!
//! The Chebyshev set uses the inner product with weight `1 / sqrt(z (1 - z))`
//! and is assembled analytically in coefficient space. The Legendre set uses
//! the unweighted product and is assembled by Gauss-Legendre quadrature with
//! enough nodes to be exact for every integrand.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::bases::{
    cheb_second_derivative, cheb_trial_exact, leg_trial_exact, legendre_derivative_exact,
    monomial_times_cheb_exact, ratio_to_f64, ChebBasisSpec, LegBasisSpec, PolyCoeffs, PolyKind,
};
use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre_exact_for, Rule};

pub const MAX_PROFILE_DEGREE: usize = 8;

/// `H(z) = 1 + eps * h(z)` with `h` a polynomial in `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct GravityProfile {
    pub name: String,
    /// Power-series coefficients of `h`, lowest degree (the constant) first.
    pub poly: Vec<f64>,
    pub epsilon: f64,
}

/// The three gravity variations tabulated in the reference tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileFamily {
    /// `h(z) = -z`
    Linear,
    /// `h(z) = -z^2`
    Quadratic,
    /// `h(z) = z^2 - 2z`
    Mixed,
}

impl ProfileFamily {
    pub const ALL: [ProfileFamily; 3] = [Self::Linear, Self::Quadratic, Self::Mixed];

    pub fn name(self) -> &'static str {
        match self {
            Self::Linear => "linear",
            Self::Quadratic => "quadratic",
            Self::Mixed => "mixed",
        }
    }

    pub fn profile(self, epsilon: f64) -> GravityProfile {
        let poly = match self {
            Self::Linear => vec![0.0, -1.0],
            Self::Quadratic => vec![0.0, 0.0, -1.0],
            Self::Mixed => vec![0.0, -2.0, 1.0],
        };
        GravityProfile {
            name: self.name().to_string(),
            poly,
            epsilon,
        }
    }
}

impl std::str::FromStr for ProfileFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Self::Linear),
            "quadratic" => Ok(Self::Quadratic),
            "mixed" => Ok(Self::Mixed),
            other => Err(Error::InvalidArgument(format!(
                "unknown profile family {other:?}"
            ))),
        }
    }
}

impl GravityProfile {
    pub fn new(name: impl Into<String>, poly: Vec<f64>, epsilon: f64) -> Result<Self> {
        let profile = Self {
            name: name.into(),
            poly,
            epsilon,
        };
        profile.validate()?;
        Ok(profile)
    }

    /// Builds `h(z) = h_1 z + h_2 z^2 + ...` from `[h_1, h_2, ...]`.
    pub fn from_h_coeffs(name: impl Into<String>, h: &[f64], epsilon: f64) -> Result<Self> {
        let mut poly = Vec::with_capacity(h.len() + 1);
        poly.push(0.0);
        poly.extend_from_slice(h);
        Self::new(name, poly, epsilon)
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Self {
        Self {
            epsilon,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.epsilon.is_finite() || self.epsilon < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "epsilon must be finite and >= 0, got {}",
                self.epsilon
            )));
        }
        if self.poly.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument(
                "non-finite profile coefficient".into(),
            ));
        }
        let d = self.degree();
        if d > MAX_PROFILE_DEGREE {
            return Err(Error::UnsupportedProfile(d));
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.poly.iter().rposition(|c| *c != 0.0).unwrap_or(0)
    }

    pub fn h(&self, z: f64) -> f64 {
        self.poly.iter().rev().fold(0.0, |acc, c| acc * z + c)
    }

    /// `H(z) = 1 + eps * h(z)`.
    pub fn gravity(&self, z: f64) -> f64 {
        1.0 + self.epsilon * self.h(z)
    }

    /// Whether `H >= 0` at `samples + 1` equally spaced points of `[0, 1]`.
    pub fn is_nonnegative(&self, samples: usize) -> bool {
        let samples = samples.max(1);
        (0..=samples).all(|j| self.gravity(j as f64 / samples as f64) >= 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    Chebyshev(ChebBasisSpec),
    Legendre(LegBasisSpec),
}

impl Basis {
    pub fn len(&self) -> usize {
        match self {
            Basis::Chebyshev(spec) => spec.len(),
            Basis::Legendre(spec) => spec.n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn label(&self) -> &'static str {
        match self {
            Basis::Chebyshev(_) => "scp",
            Basis::Legendre(_) => "slp",
        }
    }

    /// Trial functions as polynomial coefficient vectors.
    pub fn trial_functions(&self) -> Vec<PolyCoeffs> {
        match self {
            Basis::Chebyshev(spec) => spec
                .indices()
                .map(|k| cheb_trial_exact(k).to_poly())
                .collect(),
            Basis::Legendre(spec) => spec
                .indices()
                .map(|i| leg_trial_exact(i).expect("indices start at 1").to_poly())
                .collect(),
        }
    }

    /// Second derivatives of the trial functions.
    pub fn trial_second_derivatives(&self) -> Vec<PolyCoeffs> {
        match self {
            Basis::Chebyshev(spec) => spec.indices().map(cheb_second_derivative).collect(),
            Basis::Legendre(spec) => spec
                .indices()
                .map(|i| {
                    let phi = leg_trial_exact(i).expect("indices start at 1");
                    let d1 = legendre_derivative_exact(&phi).expect("Legendre series");
                    legendre_derivative_exact(&d1)
                        .expect("Legendre series")
                        .to_poly()
                })
                .collect(),
        }
    }

    fn max_trial_degree(&self) -> usize {
        match self {
            Basis::Chebyshev(spec) => spec.indices().last().unwrap_or(0) + 2,
            Basis::Legendre(spec) => spec.n + 1,
        }
    }
}

/// Residual orthogonalization used for the Chebyshev set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Projection {
    /// Inner product weighted by `1 / sqrt(z (1 - z))`.
    #[default]
    Weighted,
    /// Plain `L2(0, 1)` inner product.
    Unweighted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GalerkinMatrices {
    pub basis: Basis,
    pub a2: f64,
    pub k: DMatrix<f64>,
    pub m: DMatrix<f64>,
    pub g: DMatrix<f64>,
}

impl GalerkinMatrices {
    pub fn n(&self) -> usize {
        self.k.nrows()
    }
}

pub fn assemble(basis: Basis, a2: f64, profile: &GravityProfile) -> Result<GalerkinMatrices> {
    assemble_with(basis, a2, profile, Projection::default())
}

pub fn assemble_with(
    basis: Basis,
    a2: f64,
    profile: &GravityProfile,
    projection: Projection,
) -> Result<GalerkinMatrices> {
    if !a2.is_finite() || a2 < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "a2 must be finite and >= 0, got {a2}"
        )));
    }
    profile.validate()?;

    let (k, m, g) = match (basis, projection) {
        (Basis::Chebyshev(spec), Projection::Weighted) => chebyshev_analytic(spec, a2, profile)?,
        _ => by_quadrature(&basis, a2, profile),
    };

    check_mass(&m)?;
    Ok(GalerkinMatrices { basis, a2, k, m, g })
}

/// `sum_n (pi / 2) c_n f_n g_n` with `c_0 = 2`, `c_n = 1` otherwise.
pub fn weighted_inner_product(f: &PolyCoeffs, g: &PolyCoeffs) -> Result<f64> {
    if f.kind() != PolyKind::ShiftedChebyshev || g.kind() != PolyKind::ShiftedChebyshev {
        return Err(Error::InvalidArgument(
            "weighted inner product needs two shifted Chebyshev series".into(),
        ));
    }
    Ok(f.coeffs()
        .iter()
        .zip(g.coeffs())
        .enumerate()
        .map(|(n, (a, b))| if n == 0 { PI * a * b } else { 0.5 * PI * a * b })
        .sum())
}

/// Shifted Chebyshev expansion of `(1 + eps h(z)) Phi*_k(z)`.
///
/// `h` is rewritten as a polynomial in `x = 2z - 1` and each `x^m T_s` term
/// expanded with the monomial product rule.
pub fn gravity_product_coeffs(profile: &GravityProfile, k: usize) -> Result<PolyCoeffs> {
    let d = profile.degree();
    if d > MAX_PROFILE_DEGREE {
        return Err(Error::UnsupportedProfile(d));
    }
    let mut out = vec![0.0; k + 3 + d];
    out[k] += 1.0;
    out[k + 2] -= 1.0;
    if profile.epsilon != 0.0 {
        let hx = shift_to_x(&profile.poly[..=d]);
        for (m, pm) in hx.iter().enumerate() {
            if *pm == 0.0 {
                continue;
            }
            for (s, sign) in [(k, 1.0), (k + 2, -1.0)] {
                let prod = monomial_times_cheb_exact(m, s);
                for (idx, c) in prod.coeffs.iter().enumerate() {
                    out[idx] += profile.epsilon * sign * pm * ratio_to_f64(c);
                }
            }
        }
    }
    PolyCoeffs::new(PolyKind::ShiftedChebyshev, out)
}

/// Power series in `z` to power series in `x = 2z - 1`, using
/// `z^j = 2^-j sum_m C(j, m) x^m`.
fn shift_to_x(poly: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; poly.len()];
    for (j, hj) in poly.iter().enumerate() {
        let scale = hj / (1u64 << j) as f64;
        let mut binom = 1.0;
        for (m, o) in out.iter_mut().enumerate().take(j + 1) {
            *o += scale * binom;
            binom = binom * (j - m) as f64 / (m + 1) as f64;
        }
    }
    out
}

type Blocks = (DMatrix<f64>, DMatrix<f64>, DMatrix<f64>);

fn chebyshev_analytic(spec: ChebBasisSpec, a2: f64, profile: &GravityProfile) -> Result<Blocks> {
    let n = spec.len();
    let trial: Vec<PolyCoeffs> = spec
        .indices()
        .map(|k| cheb_trial_exact(k).to_poly())
        .collect();
    let operator: Vec<PolyCoeffs> = spec
        .indices()
        .zip(&trial)
        .map(|(k, phi)| {
            let d2 = cheb_second_derivative(k);
            let len = phi.coeffs().len();
            let coeffs = (0..len).map(|r| d2.coeff(r) - a2 * phi.coeff(r)).collect();
            PolyCoeffs::new(PolyKind::ShiftedChebyshev, coeffs)
        })
        .collect::<Result<_>>()?;
    let weighted: Vec<PolyCoeffs> = spec
        .indices()
        .map(|k| gravity_product_coeffs(profile, k))
        .collect::<Result<_>>()?;

    let mut km = DMatrix::zeros(n, n);
    let mut mm = DMatrix::zeros(n, n);
    let mut gm = DMatrix::zeros(n, n);
    for i in 0..n {
        for k in 0..n {
            km[(i, k)] = weighted_inner_product(&operator[k], &trial[i])?;
            mm[(i, k)] = weighted_inner_product(&trial[k], &trial[i])?;
            gm[(i, k)] = weighted_inner_product(&weighted[k], &trial[i])?;
        }
    }
    Ok((km, mm, gm))
}

fn by_quadrature(basis: &Basis, a2: f64, profile: &GravityProfile) -> Blocks {
    let n = basis.len();
    let degree = 2 * basis.max_trial_degree() + profile.degree();
    let rule: Rule = gauss_legendre_exact_for(degree);

    let values = |polys: &[PolyCoeffs]| -> Vec<Vec<f64>> {
        polys
            .iter()
            .map(|p| rule.nodes.iter().map(|z| p.eval_unchecked(*z)).collect())
            .collect()
    };
    let phi = values(&basis.trial_functions());
    let d2 = values(&basis.trial_second_derivatives());
    let gravity: Vec<f64> = rule.nodes.iter().map(|z| profile.gravity(*z)).collect();

    let mut km = DMatrix::zeros(n, n);
    let mut mm = DMatrix::zeros(n, n);
    let mut gm = DMatrix::zeros(n, n);
    for i in 0..n {
        for k in 0..n {
            let (mut kv, mut mv, mut gv) = (0.0, 0.0, 0.0);
            for (q, w) in rule.weights.iter().enumerate() {
                let test = w * phi[i][q];
                kv += (d2[k][q] - a2 * phi[k][q]) * test;
                mv += phi[k][q] * test;
                gv += gravity[q] * phi[k][q] * test;
            }
            km[(i, k)] = kv;
            mm[(i, k)] = mv;
            gm[(i, k)] = gv;
        }
    }
    (km, mm, gm)
}

fn check_mass(m: &DMatrix<f64>) -> Result<()> {
    let sv = m.singular_values();
    let max = sv.max();
    let min = sv.min();
    if !(min > 1e-14 * max) {
        return Err(Error::Assembly(format!(
            "mass matrix is singular (singular values in [{min:e}, {max:e}])"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::ChebRange;

    fn leg(n: usize) -> Basis {
        Basis::Legendre(LegBasisSpec::new(n).unwrap())
    }

    fn cheb(n: usize) -> Basis {
        Basis::Chebyshev(ChebBasisSpec::new(n, ChebRange::Exclusive).unwrap())
    }

    #[test]
    fn legendre_single_function_entries() {
        let flat = ProfileFamily::Linear.profile(0.0);
        let mats = assemble(leg(1), 0.0, &flat).unwrap();
        assert!((mats.m[(0, 0)] - 1.0 / 30.0).abs() < 1e-15);
        assert!((mats.k[(0, 0)] + 1.0 / 3.0).abs() < 1e-15);
        let tilted = ProfileFamily::Linear.profile(1.0);
        let mats = assemble(leg(1), 4.92, &tilted).unwrap();
        assert!((mats.g[(0, 0)] - 1.0 / 60.0).abs() < 1e-15);
    }

    #[test]
    fn flat_gravity_gives_mass() {
        for basis in [cheb(5), leg(5)] {
            let mats = assemble(basis, 4.92, &ProfileFamily::Mixed.profile(0.0)).unwrap();
            assert_eq!(mats.g, mats.m);
        }
    }

    #[test]
    fn inner_product_cases() {
        use crate::bases::PolyKind::*;
        let t0 = PolyCoeffs::unit(ShiftedChebyshev, 0);
        let t1 = PolyCoeffs::unit(ShiftedChebyshev, 1);
        let t2 = PolyCoeffs::unit(ShiftedChebyshev, 2);
        let t3 = PolyCoeffs::unit(ShiftedChebyshev, 3);
        assert!((weighted_inner_product(&t0, &t0).unwrap() - PI).abs() < 1e-15);
        assert!((weighted_inner_product(&t3, &t3).unwrap() - PI / 2.0).abs() < 1e-15);
        assert_eq!(weighted_inner_product(&t1, &t2).unwrap(), 0.0);
        let q = PolyCoeffs::unit(ShiftedLegendre, 1);
        assert!(weighted_inner_product(&t1, &q).is_err());
    }

    #[test]
    fn gravity_product_matches_pointwise_multiplication() {
        let cases = [
            (ProfileFamily::Linear.profile(1.0), 0),
            (ProfileFamily::Mixed.profile(0.5), 2),
            (ProfileFamily::Quadratic.profile(0.75), 5),
        ];
        for (profile, k) in cases {
            let coeffs = gravity_product_coeffs(&profile, k).unwrap();
            for j in 0..=20 {
                let z = j as f64 / 20.0;
                let direct = profile.gravity(z) * crate::bases::cheb_trial_function(k, z).unwrap();
                assert!(
                    (coeffs.eval(z).unwrap() - direct).abs() < 1e-12,
                    "k={k} z={z}"
                );
            }
        }
        let flat = gravity_product_coeffs(&ProfileFamily::Linear.profile(0.0), 3).unwrap();
        assert_eq!(flat.coeff(3), 1.0);
        assert_eq!(flat.coeff(5), -1.0);
        assert!(flat
            .coeffs()
            .iter()
            .enumerate()
            .all(|(i, c)| i == 3 || i == 5 || *c == 0.0));
    }

    #[test]
    fn rejects_high_degree_profiles() {
        let mut poly = vec![0.0; 10];
        poly[9] = 1.0;
        assert_eq!(
            GravityProfile::new("deg9", poly.clone(), 0.1),
            Err(Error::UnsupportedProfile(9))
        );
        let raw = GravityProfile {
            name: "deg9".into(),
            poly,
            epsilon: 0.1,
        };
        assert_eq!(
            gravity_product_coeffs(&raw, 0),
            Err(Error::UnsupportedProfile(9))
        );
    }

    #[test]
    fn bundled_profiles_keep_gravity_nonnegative() {
        for family in ProfileFamily::ALL {
            for eps in [0.0, 0.01, 0.03, 0.2, 0.33, 0.5, 0.75] {
                assert!(family.profile(eps).is_nonnegative(10_000));
            }
        }
    }

    #[test]
    fn profile_parsing_and_coefficients() {
        let p = GravityProfile::from_h_coeffs("custom", &[-2.0, 1.0], 0.5).unwrap();
        assert_eq!(p.poly, ProfileFamily::Mixed.profile(0.5).poly);
        assert_eq!(p.degree(), 2);
        assert!((p.h(0.5) + 0.75).abs() < 1e-15);
        assert!("bogus".parse::<ProfileFamily>().is_err());
        assert!(GravityProfile::from_h_coeffs("neg", &[1.0], -0.1).is_err());
    }
}
