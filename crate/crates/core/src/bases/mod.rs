//! Shifted orthogonal polynomials on `[0, 1]` and the two boundary-adapted
//! trial sets built from them.
//!
//! Coefficient-space identities (derivatives, products with monomials) are
//! evaluated in exact rational arithmetic and only converted to `f64` when a
//! [`PolyCoeffs`] is requested.

mod chebyshev;
mod legendre;

pub use chebyshev::{
    cheb_first_derivative, cheb_first_derivative_exact, cheb_second_derivative,
    cheb_second_derivative_exact, cheb_trial_exact, cheb_trial_function, eval_shifted_chebyshev,
    monomial_times_cheb, monomial_times_cheb_exact, ChebBasisSpec, ChebRange,
};
pub use legendre::{
    eval_shifted_legendre, leg_trial_exact, leg_trial_function, legendre_derivative_exact,
    LegBasisSpec,
};

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used for coefficient identities.
pub type Exact = Ratio<i128>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolyKind {
    /// `T*_k(z) = T_k(2z - 1)`
    ShiftedChebyshev,
    /// `Q_k(z) = L_k(2z - 1)`
    ShiftedLegendre,
}

/// A polynomial on `[0, 1]` stored as coefficients `c_0..c_N` of either
/// shifted family.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyCoeffs {
    kind: PolyKind,
    coeffs: Vec<f64>,
}

impl PolyCoeffs {
    pub fn new(kind: PolyKind, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("empty coefficient list".into()));
        }
        if let Some(bad) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite coefficient {bad}"
            )));
        }
        Ok(Self { kind, coeffs })
    }

    /// Single basis polynomial `T*_k` or `Q_k`.
    pub fn unit(kind: PolyKind, k: usize) -> Self {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = 1.0;
        Self { kind, coeffs }
    }

    pub fn kind(&self) -> PolyKind {
        self.kind
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of the `k`-th basis polynomial, zero past the stored length.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, z: f64) -> Result<f64> {
        check_unit_interval(z)?;
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked(&self, z: f64) -> f64 {
        let values = basis_values(self.kind, self.coeffs.len() - 1, z);
        self.coeffs.iter().zip(&values).map(|(c, v)| c * v).sum()
    }
}

/// Exact counterpart of [`PolyCoeffs`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExactCoeffs {
    pub kind: PolyKind,
    pub coeffs: Vec<Exact>,
}

impl ExactCoeffs {
    pub(crate) fn zeros(kind: PolyKind, len: usize) -> Self {
        Self {
            kind,
            coeffs: vec![Exact::zero(); len.max(1)],
        }
    }

    pub fn to_poly(&self) -> PolyCoeffs {
        PolyCoeffs {
            kind: self.kind,
            coeffs: self.coeffs.iter().map(ratio_to_f64).collect(),
        }
    }

    /// Power-series coefficients in `z`, lowest degree first.
    pub fn monomial_form(&self) -> Vec<Exact> {
        let basis = match self.kind {
            PolyKind::ShiftedChebyshev => chebyshev::shifted_monomials(self.coeffs.len() - 1),
            PolyKind::ShiftedLegendre => legendre::shifted_monomials(self.coeffs.len() - 1),
        };
        let mut out = vec![Exact::zero(); self.coeffs.len()];
        for (c, row) in self.coeffs.iter().zip(&basis) {
            for (o, b) in out.iter_mut().zip(row) {
                *o += *c * *b;
            }
        }
        out
    }
}

pub fn ratio_to_f64(r: &Exact) -> f64 {
    r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
}

pub(crate) fn check_unit_interval(z: f64) -> Result<()> {
    if (0.0..=1.0).contains(&z) {
        Ok(())
    } else {
        Err(Error::Domain(z))
    }
}

/// Values of the first `max_degree + 1` basis polynomials at `z`.
pub(crate) fn basis_values(kind: PolyKind, max_degree: usize, z: f64) -> Vec<f64> {
    let x = 2.0 * z - 1.0;
    let mut v = Vec::with_capacity(max_degree + 1);
    v.push(1.0);
    if max_degree >= 1 {
        v.push(x);
    }
    for k in 1..max_degree {
        let next = match kind {
            PolyKind::ShiftedChebyshev => 2.0 * x * v[k] - v[k - 1],
            PolyKind::ShiftedLegendre => {
                let kf = k as f64;
                ((2.0 * kf + 1.0) * x * v[k] - kf * v[k - 1]) / (kf + 1.0)
            }
        };
        v.push(next);
    }
    v
}

/// Exact derivative of a power series in `z`.
pub fn differentiate_monomials(p: &[Exact]) -> Vec<Exact> {
    if p.len() <= 1 {
        return vec![Exact::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(j, c)| *c * Exact::from(j as i128))
        .collect()
}
