//! The secular equation as a linear pencil `A + R B` and its smallest
//! admissible root.
//!
//! With `x = (W, Psi, Theta)` the three Galerkin block rows read
//!
//! ```text
//! K W - M Psi               = 0
//! K Psi - R a2 G Theta      = 0
//! K Theta + R M W           = 0
//! ```
//!
//! so `A = [[K, -M, 0], [0, K, 0], [0, 0, K]]` and
//! `B = [[0, 0, 0], [0, 0, -a2 G], [M, 0, 0]]`.

use nalgebra::{Complex, DMatrix, DVector, Schur};

use crate::assembly::GalerkinMatrices;
use crate::error::{Error, Result};

/// Eigenvalues with `|R|` above this are treated as infinite.
pub const INFINITE_THRESHOLD: f64 = 1e12;
/// Relative imaginary-part tolerance for calling an eigenvalue real.
pub const REALITY_TOLERANCE: f64 = 1e-6;
/// Acceptance threshold on the normwise residual of the returned eigenpair.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct PencilProblem {
    pub a: DMatrix<f64>,
    pub b: DMatrix<f64>,
    pub n: usize,
    pub a2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NeutralResult {
    /// `R^2`, the Rayleigh number.
    pub rayleigh_sq: f64,
    /// The pencil eigenvalue `R`.
    pub r_signed: f64,
    /// Imaginary part of the selected eigenvalue as computed.
    pub r_imag: f64,
    /// `(W_k, Psi_k, Theta_k)` stacked, unit Euclidean norm.
    pub eigvec: DVector<f64>,
    /// `||(A + R B) x|| / ((||A|| + |R| ||B||) ||x||)`, Frobenius norms.
    pub residual: f64,
    /// Every finite eigenvalue of the pencil is real within tolerance.
    pub spectrum_real: bool,
}

pub fn build_pencil(mats: &GalerkinMatrices) -> Result<PencilProblem> {
    let n = mats.k.nrows();
    let square = |m: &DMatrix<f64>| m.nrows() == n && m.ncols() == n;
    if !(square(&mats.k) && square(&mats.m) && square(&mats.g)) {
        return Err(Error::InvalidArgument(format!(
            "block dimension mismatch: K {:?}, M {:?}, G {:?}",
            mats.k.shape(),
            mats.m.shape(),
            mats.g.shape()
        )));
    }
    if !(mats.a2 > 0.0 && mats.a2.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "a2 must be > 0, got {}",
            mats.a2
        )));
    }

    let mut a = DMatrix::zeros(3 * n, 3 * n);
    let mut b = DMatrix::zeros(3 * n, 3 * n);
    a.view_mut((0, 0), (n, n)).copy_from(&mats.k);
    a.view_mut((0, n), (n, n)).copy_from(&(-&mats.m));
    a.view_mut((n, n), (n, n)).copy_from(&mats.k);
    a.view_mut((2 * n, 2 * n), (n, n)).copy_from(&mats.k);
    b.view_mut((n, 2 * n), (n, n))
        .copy_from(&(-mats.a2 * &mats.g));
    b.view_mut((2 * n, 0), (n, n)).copy_from(&mats.m);
    Ok(PencilProblem {
        a,
        b,
        n,
        a2: mats.a2,
    })
}

impl PencilProblem {
    /// `A + R B`.
    pub fn at(&self, r: f64) -> DMatrix<f64> {
        &self.a + r * &self.b
    }

    /// All finite eigenvalues `R` with `det(A + R B) = 0`.
    ///
    /// `A` is nonsingular, so `A x = -R B x` is solved as the standard
    /// problem `(-A^-1 B) x = (1 / R) x`; zero eigenvalues of that matrix are
    /// the infinite roots of the pencil and are dropped.
    pub fn finite_spectrum(&self) -> Result<Vec<Complex<f64>>> {
        let lu = self.a.clone().lu();
        let c = lu
            .solve(&(-&self.b))
            .ok_or_else(|| Error::NoNeutralValue("operator block A is singular".into()))?;
        let schur = Schur::try_new(c, f64::EPSILON, 10_000)
            .ok_or_else(|| Error::NoNeutralValue("Schur iteration did not converge".into()))?;
        let mut out: Vec<Complex<f64>> = schur
            .complex_eigenvalues()
            .iter()
            .filter(|mu| mu.re.is_finite() && mu.im.is_finite())
            .filter(|mu| mu.norm() * INFINITE_THRESHOLD > 1.0)
            .map(|mu| mu.inv())
            .collect();
        out.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
        Ok(out)
    }

    /// Normwise backward error of `(r, x)`.
    pub fn residual(&self, r: f64, x: &DVector<f64>) -> f64 {
        let scale = self.a.norm() + r.abs() * self.b.norm();
        (self.at(r) * x).norm() / (scale * x.norm())
    }

    /// Sign of `det(A + R B)` and `log |det|`, from an LU factorization.
    pub fn det_sign_log(&self, r: f64) -> (i8, f64) {
        let lu = self.at(r).lu();
        let mut sign: f64 = lu.p().determinant();
        let mut log = 0.0;
        let u = lu.u();
        for d in u.diagonal().iter() {
            if *d == 0.0 {
                return (0, f64::NEG_INFINITY);
            }
            sign *= d.signum();
            log += d.abs().ln();
        }
        (if sign > 0.0 { 1 } else { -1 }, log)
    }
}

pub fn is_real(r: Complex<f64>) -> bool {
    r.im.abs() <= REALITY_TOLERANCE * (1.0 + r.re.abs())
}

pub fn smallest_rayleigh(pencil: &PencilProblem) -> Result<NeutralResult> {
    let spectrum = pencil.finite_spectrum()?;
    let spectrum_real = spectrum.iter().all(|r| is_real(*r));
    let chosen = spectrum
        .iter()
        .filter(|r| is_real(**r) && r.re > 0.0)
        .min_by(|x, y| x.re.total_cmp(&y.re))
        .copied()
        .ok_or_else(|| {
            Error::NoNeutralValue(format!(
                "{} finite eigenvalues, none real and positive",
                spectrum.len()
            ))
        })?;

    let r = chosen.re;
    let eigvec = null_vector(&pencil.at(r));
    let residual = pencil.residual(r, &eigvec);
    if !(residual <= RESIDUAL_TOLERANCE) {
        return Err(Error::Numerical {
            residual,
            tolerance: RESIDUAL_TOLERANCE,
        });
    }
    Ok(NeutralResult {
        rayleigh_sq: r * r,
        r_signed: r,
        r_imag: chosen.im,
        eigvec,
        residual,
        spectrum_real,
    })
}

/// Right singular vector of the smallest singular value.
fn null_vector(m: &DMatrix<f64>) -> DVector<f64> {
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let (idx, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty matrix");
    let v = v_t.row(idx).transpose();
    // Fix the sign so the largest component is positive.
    let (imax, _) = v.iamax_full();
    let v = if v[imax] < 0.0 { -v } else { v };
    v.normalize()
}

/// An interval `[lo, hi]` over which `det(A + R B)` changes sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

/// Sign changes of `det(A + R B)` on a uniform grid of `steps` intervals.
pub fn determinant_scan(
    pencil: &PencilProblem,
    r_min: f64,
    r_max: f64,
    steps: usize,
) -> Result<Vec<Bracket>> {
    if !(r_min > 0.0 && r_min < r_max && r_max.is_finite()) || steps < 2 {
        return Err(Error::InvalidArgument(format!(
            "determinant scan needs 0 < r_min < r_max and steps >= 2 (got {r_min}, {r_max}, {steps})"
        )));
    }
    let h = (r_max - r_min) / steps as f64;
    let grid: Vec<f64> = (0..=steps).map(|j| r_min + h * j as f64).collect();
    let signs: Vec<i8> = grid.iter().map(|r| pencil.det_sign_log(*r).0).collect();

    let mut out = Vec::new();
    for j in 0..steps {
        let (s0, s1) = (signs[j], signs[j + 1]);
        if s0 == 0 {
            out.push(Bracket {
                lo: grid[j],
                hi: grid[j],
            });
        } else if s1 != 0 && s0 != s1 {
            out.push(Bracket {
                lo: grid[j],
                hi: grid[j + 1],
            });
        }
    }
    if signs[steps] == 0 {
        out.push(Bracket {
            lo: grid[steps],
            hi: grid[steps],
        });
    }
    Ok(out)
}

/// Bisection on a sign-change bracket down to relative width `rel_tol`.
pub fn refine_bracket(pencil: &PencilProblem, bracket: Bracket, rel_tol: f64) -> f64 {
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let mut s_lo = pencil.det_sign_log(lo).0;
    if s_lo == 0 {
        return lo;
    }
    while hi - lo > rel_tol * hi.abs().max(lo.abs()) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = pencil.det_sign_log(mid).0;
        if s == 0 {
            return mid;
        }
        if s == s_lo {
            lo = mid;
            s_lo = s;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::{assemble, Basis, ProfileFamily};
    use crate::bases::LegBasisSpec;
    use std::f64::consts::PI;

    fn single_legendre(a2: f64) -> PencilProblem {
        let mats = assemble(
            Basis::Legendre(LegBasisSpec::new(1).unwrap()),
            a2,
            &ProfileFamily::Linear.profile(0.0),
        )
        .unwrap();
        build_pencil(&mats).unwrap()
    }

    #[test]
    fn scalar_case_matches_closed_form() {
        // One trial function: K^3 W = -R^2 a2 M^2 G W with G = M.
        let a2 = PI * PI / 2.0;
        let k = -1.0 / 3.0 - a2 / 30.0;
        let m = 1.0 / 30.0;
        let expected = (-k).powi(3) / (a2 * m * m * m);
        let res = smallest_rayleigh(&single_legendre(a2)).unwrap();
        assert!((res.rayleigh_sq - expected).abs() < 1e-10 * expected);
        assert!((res.rayleigh_sq - (10.0 + a2).powi(3) / a2).abs() < 1e-9);
    }

    #[test]
    fn block_structure() {
        let p = single_legendre(4.92);
        assert_eq!(p.a.shape(), (3, 3));
        // Row 1 of (A + R B) x is K W - M Psi for any R.
        let x = DVector::from_vec(vec![0.3, -1.2, 2.0]);
        for r in [0.0, 1.7, -25.0] {
            let y = p.at(r) * &x;
            let expected = p.a[(0, 0)] * 0.3 - (1.0 / 30.0) * -1.2;
            assert!((y[0] - expected).abs() < 1e-14);
        }
        // A alone is block upper triangular with det = det(K)^3.
        let det = p.a.determinant();
        assert!((det - p.a[(0, 0)].powi(3)).abs() < 1e-14);
        assert!(det != 0.0);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let mut mats = assemble(
            Basis::Legendre(LegBasisSpec::new(2).unwrap()),
            4.92,
            &ProfileFamily::Linear.profile(0.1),
        )
        .unwrap();
        mats.g = DMatrix::zeros(3, 3);
        assert!(matches!(
            build_pencil(&mats),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn scan_rejects_bad_ranges() {
        let p = single_legendre(4.92);
        assert!(determinant_scan(&p, 0.0, 10.0, 10).is_err());
        assert!(determinant_scan(&p, 5.0, 1.0, 10).is_err());
        assert!(determinant_scan(&p, 1.0, 10.0, 1).is_err());
    }

    #[test]
    fn scan_and_bisection_find_scalar_root() {
        let p = single_legendre(4.92);
        let root = ((10.0f64 + 4.92).powi(3) / 4.92).sqrt();
        let brackets = determinant_scan(&p, 1.0, 100.0, 200).unwrap();
        assert_eq!(brackets.len(), 1);
        let r = refine_bracket(&p, brackets[0], 1e-12);
        assert!((r - root).abs() < 1e-9 * root);
    }
}
