//! Linear stability of a horizontal fluid layer heated from below, with free
//! boundaries and a gravity field that varies across the layer as
//! `H(z) = 1 + eps * h(z)`.
//!
//! The neutral Rayleigh number `R^2` is computed by two Galerkin methods,
//! one on shifted Chebyshev polynomials and one on shifted Legendre
//! polynomials, plus a finite-difference discretization used as an
//! independent reference.

// `!(x > 0.0)` style checks are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod assembly;
pub mod bases;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod oracle;
pub mod quadrature;

pub use analysis::{Solver, TableConfig, TableRow};
pub use assembly::{assemble, Basis, GalerkinMatrices, GravityProfile, ProfileFamily, Projection};
pub use eigen::{build_pencil, smallest_rayleigh, NeutralResult, PencilProblem};
pub use error::{Error, Result};
