// Critical wavenumber and Rayleigh number as gravity weakens with depth,
// including a custom profile given by monomial coefficients.

use buoyancy::analysis::critical_point;
use buoyancy::{GravityProfile, ProfileFamily, Solver};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let solver = Solver::legendre(8)?;
    let mut profiles: Vec<GravityProfile> = Vec::new();
    for family in ProfileFamily::ALL {
        for eps in [0.0, 0.33] {
            profiles.push(family.profile(eps));
        }
    }
    // h(z) = -z^3
    profiles.push(GravityProfile::from_h_coeffs(
        "cubic",
        &[0.0, 0.0, -1.0],
        0.33,
    )?);

    println!(
        "{:>10} {:>5} {:>10} {:>12}",
        "profile", "eps", "a2_crit", "R2_crit"
    );
    for p in &profiles {
        let cp = critical_point(&solver, p, 2.0, 12.0)?;
        println!(
            "{:>10} {:>5} {:>10.5} {:>12.4}",
            p.name, p.epsilon, cp.a2_crit, cp.r2_crit
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
