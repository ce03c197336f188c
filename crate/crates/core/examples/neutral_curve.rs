// Neutral curves `R^2(a^2)` for increasing gravity variation.

use buoyancy::analysis::{linspace, neutral_curve};
use buoyancy::{ProfileFamily, Solver};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let solver = Solver::legendre(10)?;
    let grid = linspace(2.0, 14.0, 13);
    let epsilons = [0.0, 0.1, 0.33, 0.75];

    let mut columns = Vec::new();
    for eps in epsilons {
        columns.push(neutral_curve(
            &solver,
            &ProfileFamily::Mixed.profile(eps),
            &grid,
        )?);
    }
    print!("{:>6}", "a2");
    for eps in epsilons {
        print!(" {:>12}", format!("eps={eps}"));
    }
    println!();
    for (j, a2) in grid.iter().enumerate() {
        print!("{a2:>6.2}");
        for col in &columns {
            match &col[j].1 {
                Ok(r2) => print!(" {r2:>12.3}"),
                Err(e) => print!(" {:>12}", format!("({e})")),
            }
        }
        println!();
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
