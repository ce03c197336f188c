//! Parameter sweeps built on the single-point solvers: reference tables,
//! neutral curves `R^2(a^2)` and the critical wavenumber.

use rayon::prelude::*;

use crate::assembly::{assemble_with, Basis, GravityProfile, ProfileFamily, Projection};
use crate::bases::{ChebBasisSpec, ChebRange, LegBasisSpec};
use crate::eigen::{build_pencil, smallest_rayleigh, NeutralResult};
use crate::error::{Error, Result};
use crate::oracle::{fd_smallest_rayleigh, FdGrid};

/// A way of computing the neutral Rayleigh number at one `(a2, profile)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Solver {
    Galerkin {
        basis: Basis,
        projection: Projection,
    },
    FiniteDifference(FdGrid),
}

impl Solver {
    pub fn galerkin(basis: Basis) -> Self {
        Self::Galerkin {
            basis,
            projection: Projection::Weighted,
        }
    }

    pub fn chebyshev(n: usize, range: ChebRange) -> Result<Self> {
        Ok(Self::galerkin(Basis::Chebyshev(ChebBasisSpec::new(
            n, range,
        )?)))
    }

    pub fn legendre(n: usize) -> Result<Self> {
        Ok(Self::galerkin(Basis::Legendre(LegBasisSpec::new(n)?)))
    }

    pub fn finite_difference(m: usize) -> Result<Self> {
        Ok(Self::FiniteDifference(FdGrid::new(m)?))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Galerkin { basis, .. } => basis.label(),
            Self::FiniteDifference(_) => "fd",
        }
    }

    pub fn solve(&self, a2: f64, profile: &GravityProfile) -> Result<NeutralResult> {
        match self {
            Self::Galerkin { basis, projection } => {
                let mats = assemble_with(*basis, a2, profile, *projection)?;
                smallest_rayleigh(&build_pencil(&mats)?)
            }
            Self::FiniteDifference(grid) => fd_smallest_rayleigh(*grid, a2, profile),
        }
    }
}

/// One row of a reference table, digits kept verbatim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferenceRow {
    pub epsilon: &'static str,
    pub a2: &'static str,
    pub scp: &'static str,
    pub slp: &'static str,
}

impl ReferenceRow {
    pub fn epsilon(&self) -> f64 {
        self.epsilon.parse().unwrap()
    }
    pub fn a2(&self) -> f64 {
        self.a2.parse().unwrap()
    }
    pub fn scp(&self) -> f64 {
        self.scp.parse().unwrap()
    }
    pub fn slp(&self) -> f64 {
        self.slp.parse().unwrap()
    }
}

const fn row(
    epsilon: &'static str,
    a2: &'static str,
    scp: &'static str,
    slp: &'static str,
) -> ReferenceRow {
    ReferenceRow {
        epsilon,
        a2,
        scp,
        slp,
    }
}

const LINEAR_TABLE: [ReferenceRow; 9] = [
    row("0.0", "4.92", "657.512", "675.05"),
    row("0.01", "4.92", "660.747", "678.45"),
    row("0.03", "4.92", "667.653", "685.33"),
    row("0.33", "4.92", "787.363", "808.303"),
    row("0.2", "5.00", "730.459", "749.95"),
    row("0.2", "9.00", "829.44", "846.70"),
    row("0.5", "7.5", "930.982", "952.07"),
    row("0.5", "9.00", "994.393", "1015.27"),
    row("0.75", "10.0", "1251.178", "1276.05"),
];

const QUADRATIC_TABLE: [ReferenceRow; 9] = [
    row("0.0", "4.92", "657.512", "675.05"),
    row("0.01", "4.92", "659.41", "676.99"),
    row("0.03", "4.92", "663.17", "680.90"),
    row("0.33", "4.92", "725.06", "745.21"),
    row("0.2", "5.00", "696.80", "715.87"),
    row("0.2", "9.00", "791.24", "808.22"),
    row("0.5", "7.5", "813.28", "833.21"),
    row("0.5", "9.00", "868.72", "888.54"),
    row("0.75", "10.0", "993.51", "1016.20"),
];

const MIXED_TABLE: [ReferenceRow; 9] = [
    row("0.0", "4.92", "657.512", "675.05"),
    row("0.01", "4.92", "662.29", "679.91"),
    row("0.03", "4.92", "671.95", "689.83"),
    row("0.33", "4.92", "861.25", "882.05"),
    row("0.2", "5.00", "767.40", "787.44"),
    row("0.2", "9.00", "871.37", "889.03"),
    row("0.5", "7.5", "1088.2", "1110.46"),
    row("0.5", "9.00", "1162.4", "1184.11"),
    row("0.75", "10.0", "1687.8", "1713.45"),
];

/// Reference values for a profile family, in table row order.
pub fn reference_table(family: ProfileFamily) -> &'static [ReferenceRow; 9] {
    match family {
        ProfileFamily::Linear => &LINEAR_TABLE,
        ProfileFamily::Quadratic => &QUADRATIC_TABLE,
        ProfileFamily::Mixed => &MIXED_TABLE,
    }
}

/// Truncation sizes used to produce a table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableConfig {
    pub cheb: ChebBasisSpec,
    pub leg: LegBasisSpec,
}

impl TableConfig {
    /// `n` Legendre functions and the Chebyshev set selected by `range`.
    pub fn new(n: usize, range: ChebRange) -> Result<Self> {
        Ok(Self {
            cheb: ChebBasisSpec::new(n, range)?,
            leg: LegBasisSpec::new(n)?,
        })
    }

    pub fn scp(&self) -> Solver {
        Solver::galerkin(Basis::Chebyshev(self.cheb))
    }

    pub fn slp(&self) -> Solver {
        Solver::galerkin(Basis::Legendre(self.leg))
    }

    pub fn describe(&self) -> String {
        let k_hi = self.cheb.indices().last().unwrap_or(0);
        format!(
            "SCP: Phi*_k, k = 0..={k_hi} ({} functions); SLP: phi_i, i = 1..={} ({} functions)",
            self.cheb.len(),
            self.leg.n,
            self.leg.n
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub epsilon: f64,
    pub a2: f64,
    pub r2_scp: f64,
    pub r2_slp: f64,
}

/// Outcome of matching truncation choices against the first reference table.
#[derive(Debug, Clone, PartialEq)]
pub struct Calibration {
    pub n: usize,
    /// Relative deviation from the first row's SCP value, per candidate range.
    pub cheb_candidates: Vec<(ChebRange, f64)>,
    pub cheb_range: ChebRange,
    /// Largest relative deviation over the first table's SLP column, per
    /// candidate function count.
    pub leg_candidates: Vec<(usize, f64)>,
    pub leg_count: usize,
}

impl Calibration {
    /// The frozen configuration: selected Chebyshev range and Legendre count.
    pub fn config(&self) -> TableConfig {
        TableConfig {
            cheb: ChebBasisSpec {
                n: self.n,
                range: self.cheb_range,
            },
            leg: LegBasisSpec { n: self.leg_count },
        }
    }

    /// Selected Chebyshev range with `n` Legendre functions.
    pub fn chebyshev_only(&self) -> TableConfig {
        TableConfig {
            leg: LegBasisSpec { n: self.n },
            ..self.config()
        }
    }

    pub fn describe(&self) -> String {
        let cheb: Vec<String> = self
            .cheb_candidates
            .iter()
            .map(|(r, d)| format!("{r:?} {:.4}%", 100.0 * d))
            .collect();
        let leg: Vec<String> = self
            .leg_candidates
            .iter()
            .map(|(c, d)| format!("{c} fn {:.4}%", 100.0 * d))
            .collect();
        let leg = if leg.is_empty() {
            format!("legendre count {} (not calibrated)", self.leg_count)
        } else {
            format!("legendre count {} [{}]", self.leg_count, leg.join(", "))
        };
        format!(
            "calibration n={}: chebyshev range {:?} [{}]; {leg}",
            self.n,
            self.cheb_range,
            cheb.join(", "),
        )
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Chooses the Chebyshev index range (`k = 0..n-1` or `k = 0..=n`) and the
/// Legendre function count in `1..=n` that best reproduce the linear-profile
/// reference table. See [`calibrate_chebyshev`] and [`calibrate_legendre`].
pub fn calibrate(n: usize) -> Result<Calibration> {
    let (cheb_range, cheb_candidates) = calibrate_chebyshev(n)?;
    let (leg_count, leg_candidates) = calibrate_legendre(n)?;
    Ok(Calibration {
        n,
        cheb_candidates,
        cheb_range,
        leg_candidates,
        leg_count,
    })
}

/// Range whose SCP value is closest to the first row of the linear table.
pub fn calibrate_chebyshev(n: usize) -> Result<(ChebRange, Vec<(ChebRange, f64)>)> {
    let family = ProfileFamily::Linear;
    let anchor = &reference_table(family)[0];
    let candidates = [ChebRange::Exclusive, ChebRange::Inclusive]
        .into_iter()
        .map(|range| {
            let r2 = Solver::chebyshev(n, range)?
                .solve(anchor.a2(), &family.profile(anchor.epsilon()))?
                .rayleigh_sq;
            Ok((range, rel(r2, anchor.scp())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((pick_min(&candidates), candidates))
}

/// Legendre count minimizing the largest deviation over the linear table's
/// SLP column.
///
/// All nine rows are used: at `eps = 0` the odd functions decouple, so
/// counts `2j - 1` and `2j` tie on the first row.
pub fn calibrate_legendre(n: usize) -> Result<(usize, Vec<(usize, f64)>)> {
    if n == 0 {
        return Err(Error::InvalidArgument("calibration needs n >= 1".into()));
    }
    let family = ProfileFamily::Linear;
    let table = reference_table(family);
    let candidates = (1..=n)
        .into_par_iter()
        .map(|count| {
            let solver = Solver::legendre(count)?;
            let mut worst: f64 = 0.0;
            for row in table {
                let r2 = solver
                    .solve(row.a2(), &family.profile(row.epsilon()))?
                    .rayleigh_sq;
                worst = worst.max(rel(r2, row.slp()));
            }
            Ok((count, worst))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((pick_min(&candidates), candidates))
}

/// First candidate with the smallest deviation.
fn pick_min<T: Copy>(candidates: &[(T, f64)]) -> T {
    let mut best = candidates[0];
    for c in &candidates[1..] {
        if c.1 < best.1 {
            best = *c;
        }
    }
    best.0
}

/// Both Galerkin values for the nine `(eps, a2)` pairs of `family`'s table.
pub fn reproduce_table(family: ProfileFamily, config: &TableConfig) -> Result<Vec<TableRow>> {
    let (scp, slp) = (config.scp(), config.slp());
    reference_table(family)
        .par_iter()
        .enumerate()
        .map(|(idx, row)| {
            let (epsilon, a2) = (row.epsilon(), row.a2());
            let profile = family.profile(epsilon);
            let solve = || -> Result<TableRow> {
                Ok(TableRow {
                    epsilon,
                    a2,
                    r2_scp: scp.solve(a2, &profile)?.rayleigh_sq,
                    r2_slp: slp.solve(a2, &profile)?.rayleigh_sq,
                })
            };
            solve().map_err(|e| Error::Row {
                row: idx + 1,
                epsilon,
                a2,
                source: Box::new(e),
            })
        })
        .collect()
}

/// `R^2` at each `a2`; a failing point carries its error and the sweep
/// continues.
pub fn neutral_curve(
    solver: &Solver,
    profile: &GravityProfile,
    a2_grid: &[f64],
) -> Result<Vec<(f64, Result<f64>)>> {
    if a2_grid.iter().any(|a| !(*a > 0.0 && a.is_finite())) {
        return Err(Error::InvalidArgument(
            "a2 grid values must be positive".into(),
        ));
    }
    if a2_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "a2 grid must be strictly increasing".into(),
        ));
    }
    Ok(a2_grid
        .par_iter()
        .map(|a2| (*a2, solver.solve(*a2, profile).map(|r| r.rayleigh_sq)))
        .collect())
}

/// `points` values from `lo` to `hi` inclusive; a single point sits at `lo`.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points)
            .map(|j| lo + (hi - lo) * j as f64 / (points - 1) as f64)
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPoint {
    pub a2_crit: f64,
    pub r2_crit: f64,
    pub profile: GravityProfile,
    pub method: &'static str,
}

pub const CRITICAL_A2_TOL: f64 = 1e-4;
const CRITICAL_SCAN_POINTS: usize = 50;

/// Minimizes `R^2(a2)` over `[a2_lo, a2_hi]`.
///
/// A 50-point scan locates the minimum and confirms it is interior; golden
/// section then refines it to `|delta a2| < 1e-4`, preferring the left point
/// on ties. The result is checked against the scan values.
pub fn critical_point(
    solver: &Solver,
    profile: &GravityProfile,
    a2_lo: f64,
    a2_hi: f64,
) -> Result<CriticalPoint> {
    if !(a2_lo > 0.0 && a2_lo < a2_hi && a2_hi.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "need 0 < a2_lo < a2_hi, got [{a2_lo}, {a2_hi}]"
        )));
    }
    let f = |a2: f64| solver.solve(a2, profile).map(|r| r.rayleigh_sq);

    let grid = linspace(a2_lo, a2_hi, CRITICAL_SCAN_POINTS);
    let values = grid.par_iter().map(|a| f(*a)).collect::<Result<Vec<_>>>()?;
    let mut best = 0;
    for (j, v) in values.iter().enumerate() {
        if *v < values[best] {
            best = j;
        }
    }
    if best == 0 || best == grid.len() - 1 {
        return Err(Error::Bracket {
            lo: a2_lo,
            hi: a2_hi,
        });
    }

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (grid[best - 1], grid[best + 1]);
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while hi - lo >= CRITICAL_A2_TOL {
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c)?;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d)?;
        }
    }
    let (a2_crit, r2_crit) = if fc <= fd { (c, fc) } else { (d, fd) };
    if r2_crit > values[best] {
        return Err(Error::Bracket {
            lo: a2_lo,
            hi: a2_hi,
        });
    }
    Ok(CriticalPoint {
        a2_crit,
        r2_crit,
        profile: profile.clone(),
        method: solver.label(),
    })
}
