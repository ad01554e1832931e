//! Cross-module validation: the smooth-level-density thermodynamics against
//! brute-force sums over the discrete oscillator spectrum.

use trapped_fermi::oracle::{
    discrete_internal_energy, discrete_number, discrete_solve_mu, discrete_specific_heat,
    shell_filling, SpectrumTruncation,
};
use trapped_fermi::thermo::{internal_energy, solve_fugacity, specific_heat_exact};
use trapped_fermi::trap::{compute_dos_coefficients, TrapSpec, ZeroPointMode};

fn iso() -> TrapSpec {
    TrapSpec::isotropic(1.0, ZeroPointMode::RelativeSpectrum).unwrap()
}

#[test]
fn continuum_matches_discrete_in_the_validity_regime() {
    let trap = iso();
    let coeffs = compute_dos_coefficients(&trap);
    for n in [455.0, 4060.0, 1e4] {
        for t in [5.0, 15.0, 50.0] {
            let z = solve_fugacity(&coeffs, n, t).unwrap();
            let mu_c = t * z.ln_value();
            let u_c = internal_energy(&coeffs, z, t).unwrap();

            // number route: the discrete count at the continuum mu returns N
            let n_d = discrete_number(&trap, mu_c, t, SpectrumTruncation::auto()).unwrap().value;
            assert!(
                ((n_d - n) / n).abs() < 0.01,
                "N = {n}, T = {t}: discrete count {n_d}"
            );

            let mu_d = discrete_solve_mu(&trap, n, t, SpectrumTruncation::auto()).unwrap();
            assert!(
                ((mu_d - mu_c) / mu_c).abs() < 0.01,
                "N = {n}, T = {t}: mu {mu_c} vs {mu_d}"
            );
            let u_d = discrete_internal_energy(&trap, mu_d, t, SpectrumTruncation::auto())
                .unwrap()
                .value;
            assert!(
                ((u_d - u_c) / u_c).abs() < 0.01,
                "N = {n}, T = {t}: U {u_c} vs {u_d}"
            );
        }
    }
    // specific heat on the cheapest grid
    for t in [5.0, 20.0] {
        let c_c = specific_heat_exact(&coeffs, 455.0, t).unwrap();
        let c_d = discrete_specific_heat(&trap, 455.0, t, SpectrumTruncation::auto()).unwrap();
        assert!(((c_d - c_c) / c_c).abs() < 0.01, "T = {t}: c {c_c} vs {c_d}");
    }
}

#[test]
fn deviation_grows_as_temperature_approaches_the_level_spacing() {
    let trap = iso();
    let coeffs = compute_dos_coefficients(&trap);
    let rel_mu_diff = |t: f64| {
        let mu_c = t * solve_fugacity(&coeffs, 455.0, t).unwrap().ln_value();
        let mu_d = discrete_solve_mu(&trap, 455.0, t, SpectrumTruncation::auto()).unwrap();
        ((mu_d - mu_c) / mu_c).abs()
    };
    let near_spacing = rel_mu_diff(1.2);
    let far_above = rel_mu_diff(12.0);
    assert!(
        near_spacing > far_above,
        "deviation near the level spacing ({near_spacing}) should exceed the deep-validity one \
         ({far_above})"
    );
}

#[test]
fn anisotropic_trap_agrees_too() {
    let trap = TrapSpec::new(1.0, 2.0, 3.0, ZeroPointMode::RelativeSpectrum).unwrap();
    let coeffs = compute_dos_coefficients(&trap);
    let (n, t) = (455.0, 16.0);
    let z = solve_fugacity(&coeffs, n, t).unwrap();
    let mu_c = t * z.ln_value();
    let mu_d = discrete_solve_mu(&trap, n, t, SpectrumTruncation::auto()).unwrap();
    assert!(
        ((mu_d - mu_c) / mu_c).abs() < 0.01,
        "anisotropic mu: continuum {mu_c} vs discrete {mu_d}"
    );
    let u_c = internal_energy(&coeffs, z, t).unwrap();
    let u_d = discrete_internal_energy(&trap, mu_d, t, SpectrumTruncation::auto())
        .unwrap()
        .value;
    assert!(((u_d - u_c) / u_c).abs() < 0.01, "anisotropic U: {u_c} vs {u_d}");
}

#[test]
fn zero_temperature_limits_meet_the_shell_filling() {
    // the T -> 0 discrete state reproduces closed-shell counting, and the
    // continuum Fermi energy lands mid-gap
    let trap = iso();
    let coeffs = compute_dos_coefficients(&trap);
    let filling = shell_filling(455, 1.0).unwrap();
    assert_eq!(filling.n_shell, 455);
    let mid_gap = 0.5 * (filling.e_gap.0 + filling.e_gap.1);
    let e_f = trapped_fermi::degenerate::fermi_energy(&coeffs, 455.0).unwrap().e_f;
    assert!((e_f - mid_gap).abs() < 0.005, "E_F = {e_f}, mid-gap = {mid_gap}");
    let mu_d = discrete_solve_mu(&trap, 455.0, 0.05, SpectrumTruncation::auto()).unwrap();
    assert!((mu_d - mid_gap).abs() < 0.05, "discrete mu = {mu_d}");
}
