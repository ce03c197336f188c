//! Command-line front end: single solves, reference tables, neutral-curve
//! sweeps and critical-point searches.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{
    calibrate, calibrate_chebyshev, critical_point, linspace, neutral_curve, reference_table,
    reproduce_table, Calibration, Solver, TableConfig,
};
use crate::assembly::{Basis, GravityProfile, ProfileFamily, Projection};
use crate::bases::{ChebBasisSpec, ChebRange};
use crate::error::Error;
use crate::oracle::{fd_richardson, FdGrid, DEFAULT_POINTS};

pub const THREADS_ENV: &str = "BUOYANCY_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "buoyancy",
    version,
    about = "Neutral Rayleigh numbers under depth-varying gravity"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Smallest neutral R^2 at one parameter point.
    Solve(SolveArgs),
    /// Reproduce one of the three reference tables.
    Table(TableArgs),
    /// Neutral curve R^2(a2) over a uniform a2 grid.
    Curve(CurveArgs),
    /// Critical wavenumber: minimum of R^2 over an a2 bracket.
    Critical(CriticalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Scp,
    Slp,
    Fd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileArg {
    Linear,
    Quadratic,
    Mixed,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RangeArg {
    /// Pick whichever range best matches the first reference row.
    Auto,
    Exclusive,
    Inclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProjectionArg {
    Weighted,
    Unweighted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Table,
    Csv,
}

fn finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s:?} is not a finite number"))
    }
}

/// Comma-separated monomial coefficients `h_1,h_2,...`.
#[derive(Debug, Clone, PartialEq)]
pub struct HCoeffs(pub Vec<f64>);

fn coeff_list(s: &str) -> Result<HCoeffs, String> {
    s.split(',')
        .map(finite)
        .collect::<Result<_, _>>()
        .map(HCoeffs)
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value = "scp")]
    pub method: Method,
    #[arg(long, value_enum, default_value = "linear")]
    pub profile: ProfileArg,
    /// Monomial coefficients h_1,h_2,... of h(z) = h_1 z + h_2 z^2 + ... (custom profile).
    #[arg(long, value_parser = coeff_list, allow_hyphen_values = true)]
    pub h_coeffs: Option<HCoeffs>,
    #[arg(long, value_parser = finite, default_value = "0", allow_negative_numbers = true)]
    pub epsilon: f64,
    /// Number of Galerkin functions.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Interior points of the finite-difference grid.
    #[arg(long, default_value_t = DEFAULT_POINTS)]
    pub fd_m: usize,
    #[arg(long, value_enum, default_value = "auto")]
    pub cheb_range: RangeArg,
    #[arg(long, value_enum, default_value = "weighted")]
    pub projection: ProjectionArg,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub output: Output,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_parser = finite, allow_negative_numbers = true)]
    pub a2: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub profile: FamilyArg,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Append the reference values and percent deviations.
    #[arg(long)]
    pub compare: bool,
    /// Also calibrate the Legendre function count against the first table.
    #[arg(long)]
    pub legendre_calibration: bool,
    /// Append a Richardson-extrapolated finite-difference reference column.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, default_value_t = DEFAULT_POINTS)]
    pub fd_m: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Linear,
    Quadratic,
    Mixed,
}

impl From<FamilyArg> for ProfileFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Linear => ProfileFamily::Linear,
            FamilyArg::Quadratic => ProfileFamily::Quadratic,
            FamilyArg::Mixed => ProfileFamily::Mixed,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], value_parser = finite, allow_negative_numbers = true)]
    pub a2_range: Vec<f64>,
    #[arg(long, default_value_t = 20)]
    pub points: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CriticalArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], value_parser = finite, allow_negative_numbers = true)]
    pub a2_range: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Failure of a command, split by exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Inconsistent flags (exit 2).
    #[error("usage: {0}")]
    Usage(String),
    /// Solver or sweep failure (exit 1).
    #[error(transparent)]
    Solver(#[from] Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

impl Command {
    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::Solve(a) => &a.output,
            Command::Table(a) => &a.output,
            Command::Curve(a) => &a.output,
            Command::Critical(a) => &a.output,
        }
    }
}

/// Runs one command, writing its primary output to `out` and notes to `err`.
pub fn run(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Solve(args) => cmd_solve(args, out),
        Command::Table(args) => cmd_table(args, out, err),
        Command::Curve(args) => cmd_curve(args, out, err),
        Command::Critical(args) => cmd_critical(args, out),
    }
}

/// Sizes the global rayon pool from `BUOYANCY_THREADS` (unset or 0 means
/// automatic). Call once, before any sweep runs.
pub fn configure_threads() -> CliResult<()> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| {
            CliError::Usage(format!(
                "{THREADS_ENV} must be a non-negative integer, got {v:?}"
            ))
        })?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure thread pool: {e}")))
}

impl ModelArgs {
    fn profile(&self) -> CliResult<GravityProfile> {
        let family = match (self.profile, &self.h_coeffs) {
            (ProfileArg::Custom, Some(HCoeffs(h))) => {
                return Ok(GravityProfile::from_h_coeffs("custom", h, self.epsilon)?);
            }
            (ProfileArg::Custom, None) => {
                return Err(CliError::Usage("--profile custom needs --h-coeffs".into()));
            }
            (_, Some(_)) => {
                return Err(CliError::Usage(
                    "--h-coeffs requires --profile custom".into(),
                ));
            }
            (ProfileArg::Linear, None) => ProfileFamily::Linear,
            (ProfileArg::Quadratic, None) => ProfileFamily::Quadratic,
            (ProfileArg::Mixed, None) => ProfileFamily::Mixed,
        };
        let profile = family.profile(self.epsilon);
        profile.validate()?;
        Ok(profile)
    }

    fn profile_label(&self) -> &'static str {
        match self.profile {
            ProfileArg::Linear => "linear",
            ProfileArg::Quadratic => "quadratic",
            ProfileArg::Mixed => "mixed",
            ProfileArg::Custom => "custom",
        }
    }

    fn solver(&self) -> CliResult<Solver> {
        let projection = match self.projection {
            ProjectionArg::Weighted => Projection::Weighted,
            ProjectionArg::Unweighted => Projection::Unweighted,
        };
        let solver = match self.method {
            Method::Scp => {
                let range = match self.cheb_range {
                    RangeArg::Exclusive => ChebRange::Exclusive,
                    RangeArg::Inclusive => ChebRange::Inclusive,
                    RangeArg::Auto => calibrate_chebyshev(self.n)?.0,
                };
                Solver::Galerkin {
                    basis: Basis::Chebyshev(ChebBasisSpec::new(self.n, range)?),
                    projection,
                }
            }
            Method::Slp => Solver::legendre(self.n)?,
            Method::Fd => Solver::FiniteDifference(FdGrid::new(self.fd_m)?),
        };
        Ok(solver)
    }

    /// Size column: Galerkin functions or grid points.
    fn size(&self, solver: &Solver) -> usize {
        match solver {
            Solver::Galerkin { basis, .. } => basis.len(),
            Solver::FiniteDifference(grid) => grid.m(),
        }
    }
}

fn a2_bracket(v: &[f64]) -> CliResult<(f64, f64)> {
    match v {
        [lo, hi] if *lo > 0.0 && lo < hi => Ok((*lo, *hi)),
        [lo, hi] => Err(CliError::Usage(format!(
            "--a2-range needs 0 < LO < HI, got {lo} {hi}"
        ))),
        _ => Err(CliError::Usage("--a2-range needs two values LO HI".into())),
    }
}

/// Plain decimal with 17 significant digits.
pub fn fmt_full(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (16 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// `x` rounded to the number of decimals shown in `template`.
pub fn fmt_like(x: f64, template: &str) -> String {
    let decimals = template.split_once('.').map_or(0, |(_, d)| d.len());
    format!("{x:.decimals$}")
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

/// Left-aligned first column, right-aligned others.
fn render_aligned(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width = vec![0; cols];
    for r in std::iter::once(header).chain(rows.iter().map(|r| r.as_slice())) {
        for (w, cell) in width.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |r: &[String]| {
        r.iter()
            .enumerate()
            .map(|(j, c)| format!("{c:>w$}", w = width[j]))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let mut s = line(header);
    s.push('\n');
    s.push_str(&"-".repeat(s.len() - 1));
    s.push('\n');
    for r in rows {
        s.push_str(&line(r));
        s.push('\n');
    }
    s
}

fn emit(
    output: Output,
    header: &[&str],
    rows: &[Vec<String>],
    out: &mut dyn Write,
) -> CliResult<()> {
    match output {
        Output::Csv => {
            let mut w = csv_writer(out);
            w.write_record(header)?;
            for r in rows {
                w.write_record(r)?;
            }
            w.flush()?;
        }
        Output::Table => {
            let header: Vec<String> = header.iter().map(|s| s.to_string()).collect();
            out.write_all(render_aligned(&header, rows).as_bytes())?;
        }
    }
    Ok(())
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> CliResult<()> {
    let profile = args.model.profile()?;
    let solver = args.model.solver()?;
    let res = solver.solve(args.a2, &profile)?;
    let row = vec![
        solver.label().to_string(),
        args.model.profile_label().to_string(),
        fmt_full(args.model.epsilon),
        fmt_full(args.a2),
        args.model.size(&solver).to_string(),
        fmt_full(res.rayleigh_sq),
        format!("{:e}", res.residual),
    ];
    emit(
        args.output.output,
        &["method", "profile", "epsilon", "a2", "n", "R2", "residual"],
        &[row],
        out,
    )
}

pub fn cmd_table(args: &TableArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let family: ProfileFamily = args.profile.into();
    let calibration: Calibration = if args.legendre_calibration {
        calibrate(args.n)?
    } else {
        let (range, candidates) = calibrate_chebyshev(args.n)?;
        Calibration {
            n: args.n,
            cheb_candidates: candidates,
            cheb_range: range,
            leg_candidates: Vec::new(),
            leg_count: args.n,
        }
    };
    let config: TableConfig = calibration.config();
    let rows = reproduce_table(family, &config)?;
    let reference = reference_table(family);

    let oracle: Vec<f64> = if args.oracle {
        use rayon::prelude::*;
        let grid = FdGrid::new(args.fd_m)?;
        rows.par_iter()
            .map(|r| fd_richardson(grid, r.a2, &family.profile(r.epsilon)))
            .collect::<Result<_, _>>()?
    } else {
        Vec::new()
    };

    let human = args.output.output == Output::Table;
    let pct = |a: f64, b: f64| {
        let d = 100.0 * (a - b) / b;
        if !human {
            fmt_full(d)
        } else if d.abs() < 5e-4 {
            "0.000".to_string()
        } else {
            format!("{d:+.3}")
        }
    };
    let mut header = vec!["epsilon", "a2", "R2_SCP", "R2_SLP"];
    if args.compare {
        header.extend(["ref_SCP", "dev_SCP_pct", "ref_SLP", "dev_SLP_pct"]);
    }
    if args.oracle {
        header.extend(["R2_FD", "SCP_vs_FD_pct", "SLP_vs_FD_pct"]);
    }
    let body: Vec<Vec<String>> = rows
        .iter()
        .zip(reference)
        .enumerate()
        .map(|(j, (r, p))| {
            let mut cells = if human {
                vec![
                    p.epsilon.to_string(),
                    p.a2.to_string(),
                    fmt_like(r.r2_scp, p.scp),
                    fmt_like(r.r2_slp, p.slp),
                ]
            } else {
                vec![
                    fmt_full(r.epsilon),
                    fmt_full(r.a2),
                    fmt_full(r.r2_scp),
                    fmt_full(r.r2_slp),
                ]
            };
            if args.compare {
                cells.extend([
                    p.scp.to_string(),
                    pct(r.r2_scp, p.scp()),
                    p.slp.to_string(),
                    pct(r.r2_slp, p.slp()),
                ]);
            }
            if args.oracle {
                let fd = oracle[j];
                cells.extend([
                    if human {
                        format!("{fd:.3}")
                    } else {
                        fmt_full(fd)
                    },
                    pct(r.r2_scp, fd),
                    pct(r.r2_slp, fd),
                ]);
            }
            cells
        })
        .collect();

    let meta = format!(
        "# {} profile; {}; {}",
        family.name(),
        config.describe(),
        calibration.describe()
    );
    if human {
        writeln!(out, "{meta}")?;
    } else {
        writeln!(err, "{meta}")?;
    }
    emit(args.output.output, &header, &body, out)
}

pub fn cmd_curve(args: &CurveArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    let (lo, hi) = a2_bracket(&args.a2_range)?;
    if args.points == 0 {
        return Err(CliError::Usage("--points must be >= 1".into()));
    }
    let profile = args.model.profile()?;
    let solver = args.model.solver()?;
    let grid = linspace(lo, hi, args.points);
    let curve = neutral_curve(&solver, &profile, &grid)?;
    let mut failed = None;
    let rows: Vec<Vec<String>> = curve
        .into_iter()
        .map(|(a2, r2)| match r2 {
            Ok(v) => vec![fmt_full(a2), fmt_full(v)],
            Err(e) => {
                let _ = writeln!(err, "a2 = {a2}: {e}");
                failed.get_or_insert(e);
                vec![fmt_full(a2), String::new()]
            }
        })
        .collect();
    emit(args.output.output, &["a2", "R2"], &rows, out)?;
    match failed {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

pub fn cmd_critical(args: &CriticalArgs, out: &mut dyn Write) -> CliResult<()> {
    let (lo, hi) = a2_bracket(&args.a2_range)?;
    let profile = args.model.profile()?;
    let solver = args.model.solver()?;
    let cp = critical_point(&solver, &profile, lo, hi)?;
    emit(
        args.output.output,
        &["a2_crit", "R2_crit"],
        &[vec![fmt_full(cp.a2_crit), fmt_full(cp.r2_crit)]],
        out,
    )
}
