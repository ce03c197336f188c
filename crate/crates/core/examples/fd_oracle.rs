// The finite-difference oracle: second-order convergence, Richardson
// extrapolation and agreement with the spectral answer.

use buoyancy::oracle::{fd_richardson, fd_smallest_rayleigh, FdGrid};
use buoyancy::{ProfileFamily, Solver};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let profile = ProfileFamily::Quadratic.profile(0.33);
    let a2 = 4.92;
    let reference = Solver::legendre(16)?.solve(a2, &profile)?.rayleigh_sq;
    println!("spectral reference (16 Legendre functions): {reference:.9}");

    println!("{:>6} {:>16} {:>12}", "m", "R2", "rel error");
    for m in [24, 49, 99, 199, 399] {
        let res = fd_smallest_rayleigh(FdGrid::new(m)?, a2, &profile)?;
        println!(
            "{m:>6} {:>16.9} {:>12.3e}",
            res.rayleigh_sq,
            (res.rayleigh_sq - reference).abs() / reference
        );
    }
    let extrapolated = fd_richardson(FdGrid::new(400)?, a2, &profile)?;
    println!(
        "Richardson (400, 801): {extrapolated:.9}, rel error {:.3e}",
        (extrapolated - reference).abs() / reference
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
