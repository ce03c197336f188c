// Constant gravity: every method against `(pi^2 + a^2)^3 / a^2`.

use std::f64::consts::PI;

use buoyancy::bases::ChebRange;
use buoyancy::{ProfileFamily, Solver};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let flat = ProfileFamily::Linear.profile(0.0);
    let solvers = [
        Solver::chebyshev(8, ChebRange::Inclusive)?,
        Solver::legendre(12)?,
        Solver::finite_difference(400)?,
    ];
    println!(
        "{:>9} {:>14} {:>10} {:>10} {:>10}",
        "a2", "exact", "scp", "slp", "fd"
    );
    for a2 in [2.0, 4.92, PI * PI / 2.0, 9.0, 12.0] {
        let exact = (PI * PI + a2).powi(3) / a2;
        let mut line = format!("{a2:>9.4} {exact:>14.6}");
        for s in &solvers {
            let r2 = s.solve(a2, &flat)?.rayleigh_sq;
            line.push_str(&format!(" {:>10.1e}", (r2 - exact).abs() / exact));
        }
        println!("{line}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
