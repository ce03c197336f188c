// Trial functions of both bases, their derivative expansions and the
// monomial product rule.

use buoyancy::bases::{
    cheb_second_derivative, cheb_trial_function, leg_trial_function, monomial_times_cheb,
    ChebBasisSpec, ChebRange, LegBasisSpec,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cheb = ChebBasisSpec::new(4, ChebRange::Inclusive)?;
    let leg = LegBasisSpec::new(4)?;
    println!(
        "Chebyshev trial set k = {:?}, Legendre trial set i = {:?}",
        cheb.indices(),
        leg.indices()
    );

    println!("{:>5} {:>12} {:>12}", "z", "Phi*_1(z)", "phi_1(z)");
    for z in [0.0, 0.25, 0.5, 0.75, 1.0] {
        println!(
            "{z:>5} {:>12.6} {:>12.6}",
            cheb_trial_function(1, z)?,
            leg_trial_function(1, z)?
        );
    }

    let d2 = cheb_second_derivative(1);
    println!("(Phi*_1)'' in T* coefficients: {:?}", d2.coeffs());
    println!("(Phi*_1)''(0) = {}", d2.eval(0.0)?);

    // x^2 T_3 = (T_1 + 2 T_3 + T_5) / 4
    println!(
        "x^2 T*_3 in T* coefficients: {:?}",
        monomial_times_cheb(2, 3).coeffs()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
