// Roots of `det(A + R B)` by sign scanning and bisection, set against the
// eigenvalues of the same pencil.

use buoyancy::bases::LegBasisSpec;
use buoyancy::eigen::{determinant_scan, refine_bracket};
use buoyancy::{assemble, build_pencil, Basis, ProfileFamily};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let basis = Basis::Legendre(LegBasisSpec::new(4)?);
    let mats = assemble(basis, 7.5, &ProfileFamily::Linear.profile(0.5))?;
    let pencil = build_pencil(&mats)?;

    let mut positive: Vec<f64> = pencil
        .finite_spectrum()?
        .iter()
        .filter(|r| r.re > 0.0)
        .map(|r| r.re)
        .collect();
    positive.sort_by(f64::total_cmp);
    println!("positive pencil eigenvalues R: {positive:.4?}");

    let brackets = determinant_scan(&pencil, 1.0, 1.1 * positive[positive.len() - 1], 4000)?;
    for b in brackets {
        let root = refine_bracket(&pencil, b, 1e-13);
        let nearest = positive
            .iter()
            .map(|r| (r - root).abs() / r)
            .fold(f64::INFINITY, f64::min);
        println!(
            "bracket [{:.4}, {:.4}] -> R = {root:.10} (R^2 = {:.4}), rel gap {nearest:.1e}",
            b.lo,
            b.hi,
            root * root
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
