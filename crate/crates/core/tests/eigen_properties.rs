mod common;

use std::f64::consts::PI;

use buoyancy::analysis::reference_table;
use buoyancy::assembly::assemble_with;
use buoyancy::bases::{ChebBasisSpec, ChebRange, LegBasisSpec};
use buoyancy::eigen::{
    determinant_scan, is_real, refine_bracket, REALITY_TOLERANCE, RESIDUAL_TOLERANCE,
};
use buoyancy::{
    assemble, build_pencil, smallest_rayleigh, Basis, Error, GravityProfile, PencilProblem,
    ProfileFamily, Projection, Solver,
};
use common::{classical, rel};
use proptest::prelude::*;

fn pencil(basis: Basis, a2: f64, profile: &GravityProfile) -> PencilProblem {
    build_pencil(&assemble(basis, a2, profile).unwrap()).unwrap()
}

fn leg(n: usize) -> Basis {
    Basis::Legendre(LegBasisSpec::new(n).unwrap())
}

fn cheb(n: usize) -> Basis {
    Basis::Chebyshev(ChebBasisSpec::new(n, ChebRange::Inclusive).unwrap())
}

#[test]
fn spectrum_is_symmetric_under_sign_flip() {
    for family in ProfileFamily::ALL {
        for basis in [cheb(4), leg(6)] {
            let p = pencil(basis, 4.92, &family.profile(0.33));
            let spectrum = p.finite_spectrum().unwrap();
            assert_eq!(spectrum.len(), 2 * basis.len());
            for r in &spectrum {
                let partner = spectrum
                    .iter()
                    .map(|s| (s + r).norm() / r.norm())
                    .fold(f64::INFINITY, f64::min);
                assert!(partner < 1e-8, "{family:?} {r}");
            }
        }
    }
}

#[test]
fn selected_eigenvalue_is_real_with_small_residual() {
    for family in ProfileFamily::ALL {
        for row in reference_table(family) {
            let profile = family.profile(row.epsilon());
            for basis in [cheb(8), leg(8)] {
                let res = smallest_rayleigh(&pencil(basis, row.a2(), &profile)).unwrap();
                assert!(res.r_signed > 0.0);
                assert!(res.r_imag.abs() <= REALITY_TOLERANCE * (1.0 + res.r_signed.abs()));
                assert!(res.residual <= RESIDUAL_TOLERANCE);
                assert!((res.eigvec.norm() - 1.0).abs() < 1e-12);
                assert!(res.spectrum_real);
            }
        }
    }
}

#[test]
fn stabilization_grows_with_epsilon() {
    for family in ProfileFamily::ALL {
        let values: Vec<f64> = [0.0, 0.01, 0.03, 0.33]
            .iter()
            .map(|eps| {
                smallest_rayleigh(&pencil(leg(8), 4.92, &family.profile(*eps)))
                    .unwrap()
                    .rayleigh_sq
            })
            .collect();
        assert!(
            values.windows(2).all(|w| w[1] > w[0]),
            "{family:?}: {values:?}"
        );
    }
}

#[test]
fn determinant_roots_match_eigenvalues() {
    for family in ProfileFamily::ALL {
        for row in reference_table(family) {
            let profile = family.profile(row.epsilon());
            let p = pencil(cheb(4), row.a2(), &profile);
            let r = smallest_rayleigh(&p).unwrap().r_signed;
            let brackets = determinant_scan(&p, 1.0, 1.5 * r, 400).unwrap();
            let root = refine_bracket(&p, brackets[0], 1e-13);
            assert!(
                rel(root, r) < 1e-6,
                "{family:?} eps={}: {root} vs {r}",
                row.epsilon
            );
            // no other sign change below the selected eigenvalue
            assert!(brackets[0].hi >= r);
        }
    }
}

#[test]
fn no_determinant_root_in_unit_interval() {
    for family in ProfileFamily::ALL {
        let p = pencil(leg(4), 4.92, &family.profile(0.33));
        assert!(determinant_scan(&p, 1e-3, 1.0, 100).unwrap().is_empty());
    }
}

#[test]
fn classical_limit_for_large_truncations() {
    for basis in [cheb(8), leg(8), leg(12)] {
        for a2 in [2.0, 4.92, PI * PI / 2.0, 9.0, 12.0] {
            let r2 = smallest_rayleigh(&pencil(basis, a2, &ProfileFamily::Linear.profile(0.0)))
                .unwrap()
                .rayleigh_sq;
            assert!(rel(r2, classical(a2)) < 1e-4, "{basis:?} a2={a2}: {r2}");
        }
    }
}

#[test]
fn unweighted_chebyshev_equals_legendre_on_the_same_span() {
    // k = 0..n-1 and i = 1..n both span polynomials of degree <= n + 1
    // vanishing at the ends, so the plain L2 Galerkin problems coincide.
    let profile = ProfileFamily::Mixed.profile(0.33);
    for n in 1..=8 {
        let cheb = Basis::Chebyshev(ChebBasisSpec::new(n, ChebRange::Exclusive).unwrap());
        let mats = assemble_with(cheb, 4.92, &profile, Projection::Unweighted).unwrap();
        let a = smallest_rayleigh(&build_pencil(&mats).unwrap())
            .unwrap()
            .rayleigh_sq;
        let b = smallest_rayleigh(&pencil(leg(n), 4.92, &profile))
            .unwrap()
            .rayleigh_sq;
        assert!(rel(a, b) < 1e-9, "n={n}: {a} vs {b}");
    }
}

#[test]
fn pencil_requires_positive_wavenumber() {
    let mats = assemble(leg(3), 0.0, &ProfileFamily::Linear.profile(0.0)).unwrap();
    assert!(matches!(
        build_pencil(&mats),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn reality_tolerance_is_relative() {
    use nalgebra::Complex;
    assert!(is_real(Complex::new(1000.0, 5e-4)));
    assert!(!is_real(Complex::new(1000.0, 2e-3)));
    assert!(!is_real(Complex::new(0.0, 2e-6)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constant_gravity_rescales_rayleigh(a2 in 0.5f64..20.0, eps in 0.0f64..0.9) {
        // H = 1 - eps everywhere
        let profile = GravityProfile::new("constant", vec![-1.0], eps).unwrap();
        let r2 = Solver::legendre(10).unwrap().solve(a2, &profile).unwrap().rayleigh_sq;
        prop_assert!(rel(r2, classical(a2) / (1.0 - eps)) < 1e-6);
    }

    #[test]
    fn weaker_gravity_bounds(a2 in 1.0f64..15.0, eps in 0.0f64..0.5, which in 0usize..3) {
        let family = ProfileFamily::ALL[which];
        let profile = family.profile(eps);
        let h_min = (0..=1000).map(|j| profile.gravity(j as f64 / 1000.0)).fold(f64::INFINITY, f64::min);
        let r2 = Solver::legendre(10).unwrap().solve(a2, &profile).unwrap().rayleigh_sq;
        let base = classical(a2);
        prop_assert!(r2 >= base * (1.0 - 1e-6));
        prop_assert!(r2 <= base / h_min * (1.0 + 1e-6));
    }

    #[test]
    fn chebyshev_and_legendre_converge_together(a2 in 1.0f64..15.0, eps in 0.0f64..0.5, which in 0usize..3) {
        let profile = ProfileFamily::ALL[which].profile(eps);
        let a = Solver::chebyshev(12, ChebRange::Inclusive).unwrap().solve(a2, &profile).unwrap();
        let b = Solver::legendre(12).unwrap().solve(a2, &profile).unwrap();
        prop_assert!(rel(a.rayleigh_sq, b.rayleigh_sq) < 1e-7);
    }
}
