//! Second-order finite-difference discretization of the same two-point
//! problem, independent of either polynomial basis.
//!
//! `D^2` becomes the three-point stencil on interior nodes with the Dirichlet
//! values eliminated, giving the pencil of [`crate::eigen`] with
//! `K = tridiag(1, -2 - a2 h^2, 1) / h^2`, `M = I` and `G = diag(H(z_j))`.
//! Eliminating `Psi = K W` and `Theta = -R K^-1 W` leaves
//! `(-K^3) U = a2 R^2 G U` with `W = K U`, a symmetric-definite problem whose
//! lowest eigenvalue is found by inverse iteration.

use nalgebra::DVector;

use crate::assembly::GravityProfile;
use crate::eigen::{NeutralResult, RESIDUAL_TOLERANCE};
use crate::error::{Error, Result};

pub const DEFAULT_POINTS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FdGrid {
    m: usize,
}

impl FdGrid {
    pub fn new(m: usize) -> Result<Self> {
        if m < 8 {
            return Err(Error::InvalidArgument(format!(
                "finite-difference grid needs at least 8 interior points, got {m}"
            )));
        }
        Ok(Self { m })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn spacing(&self) -> f64 {
        1.0 / (self.m + 1) as f64
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.spacing();
        (1..=self.m).map(move |j| j as f64 * h)
    }

    /// Grid with half the spacing.
    pub fn refined(&self) -> Self {
        Self { m: 2 * self.m + 1 }
    }
}

/// Symmetric Toeplitz tridiagonal matrix `tridiag(off, diag, off)`.
struct Tridiagonal {
    m: usize,
    diag: f64,
    off: f64,
    // Thomas factorization: modified super-diagonal and pivots.
    c: Vec<f64>,
    piv: Vec<f64>,
}

impl Tridiagonal {
    fn new(m: usize, diag: f64, off: f64) -> Self {
        let mut c = vec![0.0; m];
        let mut piv = vec![0.0; m];
        piv[0] = diag;
        c[0] = off / diag;
        for j in 1..m {
            piv[j] = diag - off * c[j - 1];
            c[j] = off / piv[j];
        }
        Self {
            m,
            diag,
            off,
            c,
            piv,
        }
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let m = self.m;
        (0..m)
            .map(|j| {
                let mut y = self.diag * x[j];
                if j > 0 {
                    y += self.off * x[j - 1];
                }
                if j + 1 < m {
                    y += self.off * x[j + 1];
                }
                y
            })
            .collect()
    }

    fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let m = self.m;
        let mut y = vec![0.0; m];
        y[0] = rhs[0] / self.piv[0];
        for j in 1..m {
            y[j] = (rhs[j] - self.off * y[j - 1]) / self.piv[j];
        }
        for j in (0..m - 1).rev() {
            y[j] -= self.c[j] * y[j + 1];
        }
        y
    }

    fn frobenius_sq(&self) -> f64 {
        self.m as f64 * self.diag * self.diag + 2.0 * (self.m - 1) as f64 * self.off * self.off
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn fd_smallest_rayleigh(
    grid: FdGrid,
    a2: f64,
    profile: &GravityProfile,
) -> Result<NeutralResult> {
    if !(a2 > 0.0 && a2.is_finite()) {
        return Err(Error::InvalidArgument(format!("a2 must be > 0, got {a2}")));
    }
    profile.validate()?;
    let m = grid.m();
    let h = grid.spacing();
    let gravity: Vec<f64> = grid.nodes().map(|z| profile.gravity(z)).collect();
    if let Some(j) = gravity.iter().position(|g| !(*g > 0.0)) {
        return Err(Error::InvalidArgument(format!(
            "gravity factor H(z) = {} is not positive at node z = {}",
            gravity[j],
            (j + 1) as f64 * h
        )));
    }

    let inv_h2 = 1.0 / (h * h);
    let k = Tridiagonal::new(m, (-2.0 - a2 * h * h) * inv_h2, inv_h2);

    // Start from the continuous ground mode sin(pi z).
    let mut u: Vec<f64> = grid
        .nodes()
        .map(|z| (std::f64::consts::PI * z).sin())
        .collect();
    let mut mu = f64::NAN;
    let mut settled = 0;
    for _ in 0..500 {
        let gu: Vec<f64> = u.iter().zip(&gravity).map(|(a, b)| a * b).collect();
        // (-K^3)^-1 G u
        let next: Vec<f64> = k
            .solve(&k.solve(&k.solve(&gu)))
            .iter()
            .map(|v| -v)
            .collect();
        let g_norm = dot(
            &next,
            &next
                .iter()
                .zip(&gravity)
                .map(|(a, b)| a * b)
                .collect::<Vec<_>>(),
        )
        .sqrt();
        u = next.iter().map(|v| v / g_norm).collect();

        let w = k.apply(&u);
        let kw = k.apply(&w);
        let gu_sq: f64 = u.iter().zip(&gravity).map(|(a, b)| a * a * b).sum();
        let new_mu = -dot(&w, &kw) / gu_sq;
        let change = (new_mu - mu).abs();
        mu = new_mu;
        if change <= 4.0 * f64::EPSILON * mu.abs() {
            settled += 1;
            if settled >= 3 {
                break;
            }
        }
    }
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::NoNeutralValue(format!(
            "inverse iteration produced {mu}"
        )));
    }

    let r = (mu / a2).sqrt();
    // Recover the blocks by solves only; products with K would amplify the
    // rounding noise in u by up to ||K||^2.
    let gu: Vec<f64> = u.iter().zip(&gravity).map(|(a, b)| -mu * a * b).collect();
    let psi = k.solve(&gu);
    let w = k.solve(&psi);
    let theta: Vec<f64> = k.solve(&w).iter().map(|v| -r * v).collect();

    let mut x: Vec<f64> = Vec::with_capacity(3 * m);
    x.extend_from_slice(&w);
    x.extend_from_slice(&psi);
    x.extend_from_slice(&theta);
    let x_norm = dot(&x, &x).sqrt();
    let eigvec = DVector::from_vec(x.iter().map(|v| v / x_norm).collect());

    let residual = {
        let (w, rest) = eigvec.as_slice().split_at(m);
        let (psi, theta) = rest.split_at(m);
        let kw = k.apply(w);
        let kpsi = k.apply(psi);
        let ktheta = k.apply(theta);
        let mut sq = 0.0;
        for j in 0..m {
            let row1 = kw[j] - psi[j];
            let row2 = kpsi[j] - r * a2 * gravity[j] * theta[j];
            let row3 = ktheta[j] + r * w[j];
            sq += row1 * row1 + row2 * row2 + row3 * row3;
        }
        let a_norm = (3.0 * k.frobenius_sq() + m as f64).sqrt();
        let b_norm = (a2 * a2 * gravity.iter().map(|g| g * g).sum::<f64>() + m as f64).sqrt();
        sq.sqrt() / (a_norm + r * b_norm)
    };
    if !(residual <= RESIDUAL_TOLERANCE) {
        return Err(Error::Numerical {
            residual,
            tolerance: RESIDUAL_TOLERANCE,
        });
    }

    Ok(NeutralResult {
        rayleigh_sq: r * r,
        r_signed: r,
        r_imag: 0.0,
        eigvec,
        residual,
        spectrum_real: true,
    })
}

/// Richardson extrapolation of `R^2` from `grid` and its refinement,
/// eliminating the `h^2` error term.
pub fn fd_richardson(grid: FdGrid, a2: f64, profile: &GravityProfile) -> Result<f64> {
    let coarse = fd_smallest_rayleigh(grid, a2, profile)?.rayleigh_sq;
    let fine = fd_smallest_rayleigh(grid.refined(), a2, profile)?.rayleigh_sq;
    Ok((4.0 * fine - coarse) / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::ProfileFamily;
    use std::f64::consts::PI;

    fn classical(a2: f64) -> f64 {
        (PI * PI + a2).powi(3) / a2
    }

    #[test]
    fn grid_validation() {
        assert!(FdGrid::new(7).is_err());
        let g = FdGrid::new(9).unwrap();
        assert!((g.spacing() - 0.1).abs() < 1e-15);
        assert_eq!(g.refined().m(), 19);
        assert!((g.refined().spacing() - 0.05).abs() < 1e-15);
    }

    #[test]
    fn thomas_solve_inverts_apply() {
        let t = Tridiagonal::new(12, -2.3, 1.0);
        let x: Vec<f64> = (0..12).map(|j| (j as f64 * 0.7).cos()).collect();
        let back = t.solve(&t.apply(&x));
        for (a, b) in x.iter().zip(&back) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn constant_gravity_matches_closed_form() {
        let grid = FdGrid::new(400).unwrap();
        for a2 in [PI * PI / 2.0, 4.92] {
            let res = fd_smallest_rayleigh(grid, a2, &ProfileFamily::Linear.profile(0.0)).unwrap();
            let exact = classical(a2);
            assert!((res.rayleigh_sq - exact).abs() < 5e-4 * exact);
            assert!(res.residual < RESIDUAL_TOLERANCE);
        }
    }

    #[test]
    fn nonpositive_gravity_is_rejected() {
        let grid = FdGrid::new(20).unwrap();
        let p = ProfileFamily::Linear.profile(2.0);
        assert!(matches!(
            fd_smallest_rayleigh(grid, 4.92, &p),
            Err(Error::InvalidArgument(_))
        ));
    }
}
