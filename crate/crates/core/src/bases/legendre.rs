use num_traits::Zero;

use super::{basis_values, check_unit_interval, Exact, ExactCoeffs, PolyKind};
use crate::error::{Error, Result};

/// Expansion set `phi_i = (Q_{i+1} - Q_{i-1}) / (2(2i + 1))`, `i = 1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LegBasisSpec {
    pub n: usize,
}

impl LegBasisSpec {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("Legendre basis needs n >= 1".into()));
        }
        Ok(Self { n })
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }
}

pub fn eval_shifted_legendre(k: usize, z: f64) -> Result<f64> {
    check_unit_interval(z)?;
    Ok(basis_values(PolyKind::ShiftedLegendre, k, z)[k])
}

/// `phi_i(z) = int_0^z Q_i(t) dt`.
pub fn leg_trial_function(i: usize, z: f64) -> Result<f64> {
    if i == 0 {
        return Err(Error::InvalidIndex {
            index: 0,
            reason: "Legendre trial functions start at i = 1",
        });
    }
    check_unit_interval(z)?;
    let v = basis_values(PolyKind::ShiftedLegendre, i + 1, z);
    Ok((v[i + 1] - v[i - 1]) / (2.0 * (2 * i + 1) as f64))
}

pub fn leg_trial_exact(i: usize) -> Result<ExactCoeffs> {
    if i == 0 {
        return Err(Error::InvalidIndex {
            index: 0,
            reason: "Legendre trial functions start at i = 1",
        });
    }
    let scale = Exact::new(1, 2 * (2 * i as i128 + 1));
    let mut out = ExactCoeffs::zeros(PolyKind::ShiftedLegendre, i + 2);
    out.coeffs[i + 1] += scale;
    out.coeffs[i - 1] -= scale;
    Ok(out)
}

/// Derivative of a shifted Legendre series, from
/// `Q'_{j+1} - Q'_{j-1} = 2(2j + 1) Q_j`, i.e.
/// `Q'_j = sum over m = j-1, j-3, ... >= 0 of 2(2m + 1) Q_m`.
pub fn legendre_derivative_exact(series: &ExactCoeffs) -> Result<ExactCoeffs> {
    if series.kind != PolyKind::ShiftedLegendre {
        return Err(Error::InvalidArgument(
            "expected a shifted Legendre series".into(),
        ));
    }
    let len = series.coeffs.len();
    let mut out = ExactCoeffs::zeros(PolyKind::ShiftedLegendre, len.saturating_sub(1));
    for (j, c) in series.coeffs.iter().enumerate().skip(1) {
        if c.is_zero() {
            continue;
        }
        let mut m = j as i128 - 1;
        while m >= 0 {
            out.coeffs[m as usize] += *c * Exact::from(2 * (2 * m + 1));
            m -= 2;
        }
    }
    Ok(out)
}

/// Rows `Q_0..Q_max` as power series in `z`.
pub(super) fn shifted_monomials(max: usize) -> Vec<Vec<Exact>> {
    let len = max + 1;
    let mut rows: Vec<Vec<Exact>> = Vec::with_capacity(len);
    let mut q0 = vec![Exact::zero(); len];
    q0[0] = Exact::from(1);
    rows.push(q0);
    if max >= 1 {
        let mut q1 = vec![Exact::zero(); len];
        q1[0] = Exact::from(-1);
        q1[1] = Exact::from(2);
        rows.push(q1);
    }
    for k in 1..max {
        let kk = k as i128;
        let a = Exact::new(2 * kk + 1, kk + 1);
        let b = Exact::new(kk, kk + 1);
        let mut next = vec![Exact::zero(); len];
        for j in 0..len {
            let cur = rows[k][j];
            if !cur.is_zero() {
                next[j] -= a * cur;
                if j + 1 < len {
                    next[j + 1] += a * cur * Exact::from(2);
                }
            }
            next[j] -= b * rows[k - 1][j];
        }
        rows.push(next);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifted_legendre_values() {
        assert!((eval_shifted_legendre(2, 0.5).unwrap() + 0.5).abs() < 1e-15);
        assert_eq!(eval_shifted_legendre(0, 0.37).unwrap(), 1.0);
        assert!((eval_shifted_legendre(1, 0.75).unwrap() - 0.5).abs() < 1e-15);
        assert!(eval_shifted_legendre(1, -1e-9).is_err());
    }

    #[test]
    fn trial_function_values() {
        assert!((leg_trial_function(1, 0.5).unwrap() + 0.25).abs() < 1e-15);
        assert!(leg_trial_function(1, 0.0).unwrap().abs() < 1e-15);
        assert!(leg_trial_function(1, 1.0).unwrap().abs() < 1e-15);
        assert!(leg_trial_function(2, 0.5).unwrap().abs() < 1e-15);
        assert!(matches!(
            leg_trial_function(0, 0.5),
            Err(Error::InvalidIndex { index: 0, .. })
        ));
        for i in 1..=12 {
            assert!(leg_trial_function(i, 0.0).unwrap().abs() < 1e-12);
            assert!(leg_trial_function(i, 1.0).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn trial_function_derivative_is_legendre_polynomial() {
        for i in 1..=8 {
            let d = legendre_derivative_exact(&leg_trial_exact(i).unwrap()).unwrap();
            for (m, c) in d.coeffs.iter().enumerate() {
                let expected = if m == i {
                    Exact::from(1)
                } else {
                    Exact::zero()
                };
                assert_eq!(*c, expected, "i={i} m={m}");
            }
        }
    }

    #[test]
    fn derivative_rejects_chebyshev_series() {
        let s = ExactCoeffs::zeros(PolyKind::ShiftedChebyshev, 3);
        assert!(legendre_derivative_exact(&s).is_err());
    }
}
