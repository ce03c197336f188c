use num_traits::Zero;

use super::{basis_values, check_unit_interval, Exact, ExactCoeffs, PolyCoeffs, PolyKind};
use crate::error::{Error, Result};

/// Which Chebyshev trial functions `Phi*_k` enter the expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChebRange {
    /// `k = 0..n-1`, i.e. `n` functions.
    Exclusive,
    /// `k = 0..=n`, i.e. `n + 1` functions.
    Inclusive,
}

/// Expansion set `Phi*_k = T*_k - T*_{k+2}`, each member vanishing at both ends
/// of the layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChebBasisSpec {
    pub n: usize,
    pub range: ChebRange,
}

impl ChebBasisSpec {
    pub fn new(n: usize, range: ChebRange) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "Chebyshev basis needs n >= 1".into(),
            ));
        }
        Ok(Self { n, range })
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        match self.range {
            ChebRange::Exclusive => 0..self.n,
            ChebRange::Inclusive => 0..self.n + 1,
        }
    }

    pub fn len(&self) -> usize {
        self.indices().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

pub fn eval_shifted_chebyshev(k: usize, z: f64) -> Result<f64> {
    check_unit_interval(z)?;
    Ok(basis_values(PolyKind::ShiftedChebyshev, k, z)[k])
}

pub fn cheb_trial_function(k: usize, z: f64) -> Result<f64> {
    check_unit_interval(z)?;
    let v = basis_values(PolyKind::ShiftedChebyshev, k + 2, z);
    Ok(v[k] - v[k + 2])
}

pub fn cheb_trial_exact(k: usize) -> ExactCoeffs {
    let mut out = ExactCoeffs::zeros(PolyKind::ShiftedChebyshev, k + 3);
    out.coeffs[k] += Exact::from(1);
    out.coeffs[k + 2] -= Exact::from(1);
    out
}

/// `(Phi*_k)'` in the `T*_r` basis. Both sums run over `r` of fixed parity
/// and the `r = 0` term, where present, is halved.
pub fn cheb_first_derivative_exact(k: usize) -> ExactCoeffs {
    let k = k as i128;
    let mut out = ExactCoeffs::zeros(PolyKind::ShiftedChebyshev, (k + 2) as usize);
    for r in 0..k {
        if (k - r) % 2 == 1 {
            out.coeffs[r as usize] += Exact::from(4 * k);
        }
    }
    for r in 0..k + 2 {
        if (k + 2 - r) % 2 == 1 {
            out.coeffs[r as usize] -= Exact::from(4 * (k + 2));
        }
    }
    out.coeffs[0] /= Exact::from(2);
    out
}

/// `(Phi*_k)''` in the `T*_r` basis, `r = 0` term halved.
pub fn cheb_second_derivative_exact(k: usize) -> ExactCoeffs {
    let k = k as i128;
    let mut out = ExactCoeffs::zeros(PolyKind::ShiftedChebyshev, (k + 1) as usize);
    for r in 0..=k - 2 {
        if (k - r) % 2 == 0 {
            out.coeffs[r as usize] += Exact::from(4 * (k - r) * k * (k + r));
        }
    }
    let m = k + 2;
    for r in 0..=k {
        if (m - r) % 2 == 0 {
            out.coeffs[r as usize] -= Exact::from(4 * (m - r) * m * (m + r));
        }
    }
    out.coeffs[0] /= Exact::from(2);
    out
}

pub fn cheb_first_derivative(k: usize) -> PolyCoeffs {
    cheb_first_derivative_exact(k).to_poly()
}

pub fn cheb_second_derivative(k: usize) -> PolyCoeffs {
    cheb_second_derivative_exact(k).to_poly()
}

/// `x^r T_s(x) = 2^-r sum_i C(r, i) T_{s - r + 2i}(x)` with `T_{-m} = T_m`.
///
/// Read with `x = 2z - 1`, the same coefficients expand `(2z - 1)^r T*_s(z)`
/// in the shifted basis, which is how the result is tagged.
pub fn monomial_times_cheb_exact(r: usize, s: usize) -> ExactCoeffs {
    let mut out = ExactCoeffs::zeros(PolyKind::ShiftedChebyshev, s + r + 1);
    let scale = Exact::new(1, 1i128 << r);
    let mut binom: i128 = 1;
    for i in 0..=r {
        let idx = (s as i64 - r as i64 + 2 * i as i64).unsigned_abs() as usize;
        out.coeffs[idx] += scale * Exact::from(binom);
        binom = binom * (r - i) as i128 / (i + 1) as i128;
    }
    out
}

pub fn monomial_times_cheb(r: usize, s: usize) -> PolyCoeffs {
    monomial_times_cheb_exact(r, s).to_poly()
}

/// Rows `T*_0..T*_max` as power series in `z`.
pub(super) fn shifted_monomials(max: usize) -> Vec<Vec<Exact>> {
    let len = max + 1;
    let mut rows: Vec<Vec<Exact>> = Vec::with_capacity(len);
    let mut t0 = vec![Exact::zero(); len];
    t0[0] = Exact::from(1);
    rows.push(t0);
    if max >= 1 {
        let mut t1 = vec![Exact::zero(); len];
        t1[0] = Exact::from(-1);
        t1[1] = Exact::from(2);
        rows.push(t1);
    }
    for k in 2..=max {
        let mut next = vec![Exact::zero(); len];
        for j in 0..len {
            // 2(2z - 1) T*_{k-1} - T*_{k-2}
            let prev = rows[k - 1][j];
            if !prev.is_zero() {
                next[j] -= prev * Exact::from(2);
                if j + 1 < len {
                    next[j + 1] += prev * Exact::from(4);
                }
            }
            next[j] -= rows[k - 2][j];
        }
        rows.push(next);
    }
    rows
}
