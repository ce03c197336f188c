// The three reference tables at four functions, with the truncation chosen
// by calibration against the first table.

use buoyancy::analysis::{calibrate, reference_table, reproduce_table};
use buoyancy::ProfileFamily;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cal = calibrate(4)?;
    println!("{}", cal.describe());
    let config = cal.config();
    println!("{}", config.describe());

    for family in ProfileFamily::ALL {
        println!("\nh(z) profile: {}", family.name());
        println!(
            "{:>5} {:>5} {:>10} {:>10} {:>8} {:>10} {:>10} {:>8}",
            "eps", "a2", "scp", "ref", "dev%", "slp", "ref", "dev%"
        );
        let rows = reproduce_table(family, &config)?;
        for (row, reference) in rows.iter().zip(reference_table(family)) {
            println!(
                "{:>5} {:>5} {:>10.3} {:>10} {:>+8.3} {:>10.3} {:>10} {:>+8.3}",
                reference.epsilon,
                reference.a2,
                row.r2_scp,
                reference.scp,
                100.0 * (row.r2_scp - reference.scp()) / reference.scp(),
                row.r2_slp,
                reference.slp,
                100.0 * (row.r2_slp - reference.slp()) / reference.slp(),
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
