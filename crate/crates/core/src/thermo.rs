//! Finite-temperature thermodynamics in the grand canonical ensemble.
//!
//! With the quadratic level density `rho(E) = b0 + b1 E + b2 E^2` (relative
//! spectrum, energies from the ground state) the `E^k` moment of the
//! occupation integral is `Gamma(k+1) T^(k+1) f_(k+1)(z)`, so
//!
//! * number:  `N = 2 b2 T^3 f_3(z) + b1 T^2 f_2(z) + b0 T f_1(z)`
//! * energy:  `U = 6 b2 T^4 f_4(z) + 2 b1 T^3 f_3(z) + b0 T^2 f_2(z)`
//!
//! The fugacity comes from the strictly monotone number equation, and the
//! production specific heat is the exact temperature derivative of `U` at
//! fixed `N` via the chain rule and `z f_n'(z) = f_(n-1)(z)`.
//!
//! A second, quarantined closed form (`c_paper22`) is evaluated alongside:
//! it combines half-integer Fermi-integral ratios `f_(3/2)/f_(1/2)` with unit
//! moment weights, and its own classical limit is 5/2 rather than 3. It is
//! solved self-consistently against the unit-weight number equation and
//! reported for comparison only; it never feeds the production columns.

use crate::degenerate;
use crate::error::{Error, Result};
use crate::fermi::{fermi_integral, FermiOrder, Fugacity};
use crate::roots;
use crate::trap::{compute_dos_coefficients, DosCoefficients, TrapSpec, ZeroPointMode};

/// One solved state on a temperature grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermoPoint {
    pub n: f64,
    pub t: f64,
    /// Fugacity; may print as `inf` beyond `ln z ~ 710`, `mu` stays exact.
    pub z: f64,
    /// Chemical potential `T ln z`.
    pub mu: f64,
    /// Internal energy, ground-state offset excluded.
    pub u: f64,
    /// Specific heat per particle from the exact derivative of `U`.
    pub c_exact: f64,
    /// The quarantined closed-form comparison value.
    pub c_paper22: f64,
    /// `T / T_F0` with `T_F0 = (3N/b2)^(1/3)`.
    pub t_over_tf0: f64,
    /// Whether `T >= 5 max(omega_i)`, the validity heuristic of the smooth
    /// level density.
    pub expansion_valid: bool,
}

/// Fermi temperature of the trap with its finite-number correction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FermiTemperatures {
    /// Leading-order value `(3N/b2)^(1/3)`.
    pub t_f0: f64,
    /// Corrected value; below `t_f0` whenever `b0, b1 > 0`.
    pub t_f: f64,
    /// Fugacity convention used for the correction: root of `f_3(z_F) = 1/3`.
    pub z_f: Fugacity,
}

/// One sweep entry: either a solved point or the failure reason for this `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub t: f64,
    pub point: std::result::Result<ThermoPoint, String>,
}

/// Ordered sweep results plus the inputs that produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    pub n: f64,
    pub trap: TrapSpec,
    pub coeffs: DosCoefficients,
    pub t_f0: f64,
    pub rows: Vec<SweepRow>,
}

/// Moment weights `Gamma(k+1)` of the quadratic level density.
const LEVEL_MOMENTS: [f64; 3] = [1.0, 1.0, 2.0];
/// Unit weights; the convention under which the `c_paper22` form closes.
const UNIT_MOMENTS: [f64; 3] = [1.0, 1.0, 1.0];

fn require_relative(coeffs: &DosCoefficients) -> Result<()> {
    if coeffs.mode != ZeroPointMode::RelativeSpectrum {
        return Err(Error::invalid(
            "finite-temperature relations need relative-spectrum coefficients (eps0 = 0)"
                .to_string(),
        ));
    }
    Ok(())
}

fn check_n_t(n: f64, t: f64) -> Result<()> {
    if !n.is_finite() || n < 1.0 {
        return Err(Error::invalid(format!("particle number must be >= 1, got {n}")));
    }
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::invalid(format!("temperature must be finite and positive, got {t}")));
    }
    Ok(())
}

/// `f_0 .. f_3` at `ln z = eta`.
fn f_through_three(eta: f64) -> Result<[f64; 4]> {
    let z = Fugacity::from_ln(eta)?;
    Ok([
        fermi_integral(FermiOrder::Zero, z)?,
        fermi_integral(FermiOrder::One, z)?,
        fermi_integral(FermiOrder::Two, z)?,
        fermi_integral(FermiOrder::Three, z)?,
    ])
}

fn solve_number_equation(
    coeffs: &DosCoefficients,
    n: f64,
    t: f64,
    weights: [f64; 3],
) -> Result<Fugacity> {
    require_relative(coeffs)?;
    check_n_t(n, t)?;
    let c0 = weights[0] * coeffs.b0 * t;
    let c1 = weights[1] * coeffs.b1 * t * t;
    let c2 = weights[2] * coeffs.b2 * t * t * t;

    let failure = std::cell::RefCell::new(None::<Error>);
    let residual = |eta: f64| -> (f64, Option<f64>) {
        match f_through_three(eta) {
            Ok(f) => (
                c2 * f[3] + c1 * f[2] + c0 * f[1] - n,
                Some(c2 * f[2] + c1 * f[1] + c0 * f[0]),
            ),
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                (f64::NAN, None)
            }
        }
    };

    // Bracket: f_n(z) < z makes the classical estimate a lower bound on eta;
    // the zero-temperature filling keeps mu below (6N/b2)^(1/3) in both
    // weight conventions, giving the upper bound.
    let mut lo = ((n / (c2 + c1 + c0)).ln() - 2.0).max(-745.0);
    let mut hi = ((6.0 * n / coeffs.b2).cbrt() / t + 2.0).min(710.0);
    if hi <= lo {
        hi = (lo + 4.0).min(710.0);
    }
    let mut guard = 0;
    while residual(lo).0 > 0.0 {
        lo -= 50.0;
        guard += 1;
        if lo < -745.0 || guard > 20 {
            return Err(Error::NoConvergence(format!(
                "fugacity below representable range at N = {n}, T = {t}"
            )));
        }
    }
    guard = 0;
    loop {
        let (r, _) = residual(hi);
        if let Some(e) = failure.borrow_mut().take() {
            return Err(e);
        }
        if r >= 0.0 {
            break;
        }
        if hi >= 710.0 || guard > 20 {
            return Err(Error::NoConvergence(format!(
                "fugacity beyond representable range at N = {n}, T = {t} (residual {r:.3e})"
            )));
        }
        hi = (hi + 50.0).min(710.0);
        guard += 1;
    }

    // push to near machine residual so downstream derivatives see no solver
    // noise; fall back to the contractual 1e-12 target once the bracket is
    // exhausted
    let eta = roots::increasing_root(residual, lo, hi, 250, |x, r, width| {
        r.abs() <= 1e-14 * n
            || (width <= 8.0 * f64::EPSILON * (1.0 + x.abs()) && r.abs() <= 1e-12 * n)
    })
    .ok_or_else(|| {
        Error::NoConvergence(format!(
            "number equation at N = {n}, T = {t} did not reach the 1e-12 residual target"
        ))
    })?;
    if let Some(e) = failure.borrow_mut().take() {
        return Err(e);
    }
    Fugacity::from_ln(eta)
}

/// Fugacity solving `N = 2 b2 T^3 f_3 + b1 T^2 f_2 + b0 T f_1`.
pub fn solve_fugacity(coeffs: &DosCoefficients, n: f64, t: f64) -> Result<Fugacity> {
    solve_number_equation(coeffs, n, t, LEVEL_MOMENTS)
}

/// Fugacity of the unit-weight number equation that the `c_paper22` closed
/// form is built on. Comparison lane only.
pub fn solve_fugacity_paper22(coeffs: &DosCoefficients, n: f64, t: f64) -> Result<Fugacity> {
    solve_number_equation(coeffs, n, t, UNIT_MOMENTS)
}

/// Residual of the production number equation at a given state; the sweep
/// invariant keeps `|residual| < 1e-10 N` at every solved point.
pub fn number_equation_residual(
    coeffs: &DosCoefficients,
    n: f64,
    t: f64,
    z: Fugacity,
) -> Result<f64> {
    require_relative(coeffs)?;
    check_n_t(n, t)?;
    let f = f_through_three(z.ln_value())?;
    Ok(2.0 * coeffs.b2 * t * t * t * f[3] + coeffs.b1 * t * t * f[2] + coeffs.b0 * t * f[1] - n)
}

/// Internal energy at a solved fugacity, ground-state offset excluded.
pub fn internal_energy(coeffs: &DosCoefficients, z: Fugacity, t: f64) -> Result<f64> {
    require_relative(coeffs)?;
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::invalid(format!("temperature must be finite and positive, got {t}")));
    }
    let f2 = fermi_integral(FermiOrder::Two, z)?;
    let f3 = fermi_integral(FermiOrder::Three, z)?;
    let f4 = fermi_integral(FermiOrder::Four, z)?;
    let t2 = t * t;
    Ok(6.0 * coeffs.b2 * t2 * t2 * f4 + 2.0 * coeffs.b1 * t2 * t * f3 + coeffs.b0 * t2 * f2)
}

fn specific_heat_at(coeffs: &DosCoefficients, n: f64, t: f64, eta: f64) -> Result<f64> {
    let z = Fugacity::from_ln(eta)?;
    let [f0, f1, f2, f3] = f_through_three(eta)?;
    let f4 = fermi_integral(FermiOrder::Four, z)?;
    let (b0, b1, b2) = (coeffs.b0, coeffs.b1, coeffs.b2);
    let t2 = t * t;
    let du_dt = 24.0 * b2 * t2 * t * f4 + 6.0 * b1 * t2 * f3 + 2.0 * b0 * t * f2;
    let du_deta = 6.0 * b2 * t2 * t2 * f3 + 2.0 * b1 * t2 * t * f2 + b0 * t2 * f1;
    let dn_dt = 6.0 * b2 * t2 * f3 + 2.0 * b1 * t * f2 + b0 * f1;
    let dn_deta = 2.0 * b2 * t2 * t * f2 + b1 * t2 * f1 + b0 * t * f0;
    Ok((du_dt - du_deta * dn_dt / dn_deta) / n)
}

/// Specific heat per particle `(1/N) dU/dT` at fixed `N`, evaluated
/// analytically through the chain rule.
pub fn specific_heat_exact(coeffs: &DosCoefficients, n: f64, t: f64) -> Result<f64> {
    let z = solve_fugacity(coeffs, n, t)?;
    specific_heat_at(coeffs, n, t, z.ln_value())
}

/// Centered finite difference of the internal energy at fixed `N`; the
/// independent cross-check for [`specific_heat_exact`].
pub fn specific_heat_finite_difference(
    coeffs: &DosCoefficients,
    n: f64,
    t: f64,
    rel_step: f64,
) -> Result<f64> {
    check_n_t(n, t)?;
    if !(rel_step > 0.0 && rel_step < 0.1) {
        return Err(Error::invalid(format!("relative step must be in (0, 0.1), got {rel_step}")));
    }
    let h = rel_step * t;
    let up = internal_energy(coeffs, solve_fugacity(coeffs, n, t + h)?, t + h)?;
    let down = internal_energy(coeffs, solve_fugacity(coeffs, n, t - h)?, t - h)?;
    Ok((up - down) / (2.0 * h * n))
}

/// The quarantined closed-form specific heat (`c_paper22` column), evaluated
/// literally at the fugacity of its own unit-weight number equation.
pub fn specific_heat_paper22(coeffs: &DosCoefficients, n: f64, t: f64) -> Result<f64> {
    let z = solve_fugacity_paper22(coeffs, n, t)?;
    let f1 = fermi_integral(FermiOrder::One, z)?;
    let f2 = fermi_integral(FermiOrder::Two, z)?;
    let f3 = fermi_integral(FermiOrder::Three, z)?;
    let f4 = fermi_integral(FermiOrder::Four, z)?;
    let f_half = fermi_integral(FermiOrder::Half, z)?;
    let f_three_halves = fermi_integral(FermiOrder::ThreeHalves, z)?;
    let ratio = f_three_halves / f_half;
    let (b0, b1, b2) = (coeffs.b0, coeffs.b1, coeffs.b2);
    let t2 = t * t;
    let value = 4.0 * b2 * t2 * t * f4 + 3.0 * b1 * t2 * f3 + 2.0 * b0 * t * f2
        - 1.5 * ratio * (b2 * t2 * t * f3 + b1 * t2 * f2 + b0 * t * f1);
    Ok(value / n)
}

/// Fermi temperature `T_F0 = (3N/b2)^(1/3)` and its finite-number correction
///
/// `T_F = T_F0 [1 - (b1/3 b2)(f2/f3)/T_F0 - (2 b0/3 b2)(f1/f3)/T_F0^2]`
///
/// with every `f` taken at the universal fugacity `z_F` solving
/// `f_3(z_F) = 1/3`, the convention that closes the leading-order relation
/// `N = b2 T_F0^3 f_3(z_F)` without iteration.
pub fn fermi_temperature(coeffs: &DosCoefficients, n: f64) -> Result<FermiTemperatures> {
    require_relative(coeffs)?;
    if !n.is_finite() || n < 1.0 {
        return Err(Error::invalid(format!("particle number must be >= 1, got {n}")));
    }
    let t_f0 = (3.0 * n / coeffs.b2).cbrt();
    let z_f = reference_fugacity()?;
    let f1 = fermi_integral(FermiOrder::One, z_f)?;
    let f2 = fermi_integral(FermiOrder::Two, z_f)?;
    let f3 = fermi_integral(FermiOrder::Three, z_f)?;
    let bracket = 1.0 - coeffs.b1 / coeffs.b2 * (f2 / f3) / (3.0 * t_f0)
        - 2.0 * coeffs.b0 / coeffs.b2 * (f1 / f3) / (3.0 * t_f0 * t_f0);
    if bracket <= 0.0 {
        return Err(Error::OutOfValidity(format!(
            "finite-number correction bracket = {bracket} at N = {n}; the correction formula \
             has left its validity range"
        )));
    }
    Ok(FermiTemperatures { t_f0, t_f: t_f0 * bracket, z_f })
}

/// Root of `f_3(z) = 1/3`.
fn reference_fugacity() -> Result<Fugacity> {
    let failure = std::cell::RefCell::new(None::<Error>);
    let eta = roots::increasing_root(
        |eta| match Fugacity::from_ln(eta).and_then(|z| fermi_integral(FermiOrder::Three, z)) {
            Ok(f3) => {
                let df = Fugacity::from_ln(eta)
                    .and_then(|z| fermi_integral(FermiOrder::Two, z))
                    .ok();
                (f3 - 1.0 / 3.0, df)
            }
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                (f64::NAN, None)
            }
        },
        -4.0,
        0.0,
        100,
        |_, r, _| r.abs() <= 1e-15,
    )
    .ok_or_else(|| Error::NoConvergence("f_3(z_F) = 1/3".to_string()))?;
    if let Some(e) = failure.borrow_mut().take() {
        return Err(e);
    }
    Fugacity::from_ln(eta)
}

/// Solve one complete state at `(N, T)`.
pub fn thermo_point(trap: &TrapSpec, n: f64, t: f64) -> Result<ThermoPoint> {
    if trap.zero_point() != ZeroPointMode::RelativeSpectrum {
        return Err(Error::invalid(
            "finite-temperature points need a relative-spectrum trap".to_string(),
        ));
    }
    let coeffs = compute_dos_coefficients(trap);
    let z = solve_fugacity(&coeffs, n, t)?;
    let eta = z.ln_value();
    let u = internal_energy(&coeffs, z, t)?;
    let c_exact = specific_heat_at(&coeffs, n, t, eta)?;
    let c_paper22 = specific_heat_paper22(&coeffs, n, t)?;
    let t_f0 = (3.0 * n / coeffs.b2).cbrt();
    Ok(ThermoPoint {
        n,
        t,
        z: z.value(),
        mu: t * eta,
        u,
        c_exact,
        c_paper22,
        t_over_tf0: t / t_f0,
        expansion_valid: t >= 5.0 * trap.omega_max(),
    })
}

fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::invalid("temperature grid must not be empty".to_string()));
    }
    let mut prev = 0.0;
    for &t in grid {
        if !t.is_finite() || t <= prev {
            return Err(Error::invalid(format!(
                "temperature grid must be strictly increasing and positive (offending value {t})"
            )));
        }
        prev = t;
    }
    Ok(())
}

fn sweep_row(trap: &TrapSpec, n: f64, t: f64) -> SweepRow {
    SweepRow { t, point: thermo_point(trap, n, t).map_err(|e| e.to_string()) }
}

fn assemble_table(trap: &TrapSpec, n: f64, rows: Vec<SweepRow>) -> SweepTable {
    let coeffs = compute_dos_coefficients(trap);
    let t_f0 = (3.0 * n / coeffs.b2).cbrt();
    SweepTable { n, trap: *trap, coeffs, t_f0, rows }
}

/// Sweep the grid point by point; failures are recorded per row and never
/// abort the sweep. Runs on rayon when the `parallel` feature is enabled;
/// points are independent, so ordering and values match the serial path
/// exactly.
pub fn sweep_temperature(trap: &TrapSpec, n: f64, t_grid: &[f64]) -> Result<SweepTable> {
    validate_grid(t_grid)?;
    #[cfg(feature = "parallel")]
    let rows: Vec<SweepRow> = {
        use rayon::prelude::*;
        t_grid.par_iter().map(|&t| sweep_row(trap, n, t)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<SweepRow> = t_grid.iter().map(|&t| sweep_row(trap, n, t)).collect();
    Ok(assemble_table(trap, n, rows))
}

/// Single-threaded reference sweep.
pub fn sweep_temperature_serial(trap: &TrapSpec, n: f64, t_grid: &[f64]) -> Result<SweepTable> {
    validate_grid(t_grid)?;
    let rows: Vec<SweepRow> = t_grid.iter().map(|&t| sweep_row(trap, n, t)).collect();
    Ok(assemble_table(trap, n, rows))
}

/// Convenience: the zero-temperature Fermi energy for this trap's relative
/// coefficients, shared by callers that bracket chemical potentials.
pub fn fermi_energy_of_trap(trap: &TrapSpec, n: f64) -> Result<f64> {
    let relative = TrapSpec::new(
        trap.omega_x(),
        trap.omega_y(),
        trap.omega_z(),
        ZeroPointMode::RelativeSpectrum,
    )?;
    Ok(degenerate::fermi_energy(&compute_dos_coefficients(&relative), n)?.e_f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn isotropic() -> (TrapSpec, DosCoefficients) {
        let trap = TrapSpec::isotropic(1.0, ZeroPointMode::RelativeSpectrum).unwrap();
        let coeffs = compute_dos_coefficients(&trap);
        (trap, coeffs)
    }

    #[test]
    fn classical_limit_of_the_fugacity() {
        let (_, coeffs) = isotropic();
        let t = 1e4;
        let z = solve_fugacity(&coeffs, 455.0, t).unwrap();
        let classical =
            455.0 / (2.0 * coeffs.b2 * t * t * t + coeffs.b1 * t * t + coeffs.b0 * t);
        assert_relative_eq!(z.value(), classical, max_relative = 1e-8);
    }

    #[test]
    fn number_equation_residual_is_tiny_at_solved_points() {
        let (_, coeffs) = isotropic();
        for n in [10.0, 455.0, 1e6] {
            for t in [0.5, 5.0, 50.0, 500.0] {
                let z = solve_fugacity(&coeffs, n, t).unwrap();
                let r = number_equation_residual(&coeffs, n, t, z).unwrap();
                assert!(r.abs() < 1e-10 * n, "N = {n}, T = {t}: residual {r}");
            }
        }
    }

    #[test]
    fn degenerate_limit_recovers_the_fermi_energy() {
        let (trap, coeffs) = isotropic();
        let e_f = fermi_energy_of_trap(&trap, 455.0).unwrap();
        let z = solve_fugacity(&coeffs, 455.0, 0.5).unwrap();
        let mu = 0.5 * z.ln_value();
        assert!((mu / e_f - 1.0).abs() < 0.03, "mu = {mu}, E_F = {e_f}");
    }

    #[test]
    fn internal_energy_zero_t_limit() {
        let (trap, coeffs) = isotropic();
        let e_f = fermi_energy_of_trap(&trap, 455.0).unwrap();
        // integral of E rho(E) up to E_F
        let e2 = e_f * e_f;
        let u0 = coeffs.b2 * e2 * e2 / 4.0 + coeffs.b1 * e2 * e_f / 3.0 + coeffs.b0 * e2 / 2.0;
        let z = solve_fugacity(&coeffs, 455.0, 0.1).unwrap();
        let u = internal_energy(&coeffs, z, 0.1).unwrap();
        assert!((u / u0 - 1.0).abs() < 1e-3, "u = {u}, u0 = {u0}");
        // exact closed-shell energy of 13 filled shells is 4095
        assert!((u / 4095.0 - 1.0).abs() < 5e-3, "u = {u}");
    }

    #[test]
    fn internal_energy_classical_limit() {
        let (_, coeffs) = isotropic();
        let t = 2e3;
        let z = solve_fugacity(&coeffs, 455.0, t).unwrap();
        let u = internal_energy(&coeffs, z, t).unwrap();
        assert!((u / (3.0 * 455.0 * t) - 1.0).abs() < 2e-3, "u = {u}");
    }

    #[test]
    fn specific_heat_high_temperature_limit() {
        let (_, coeffs) = isotropic();
        let c = specific_heat_exact(&coeffs, 455.0, 200.0).unwrap();
        assert!((c - 3.0).abs() < 0.06, "c = {c}");
    }

    #[test]
    fn specific_heat_matches_finite_difference() {
        let (_, coeffs) = isotropic();
        for (n, ts) in [(455.0, vec![2.0, 7.0, 20.0, 100.0]), (1e6, vec![5.0, 50.0])] {
            for t in ts {
                let exact = specific_heat_exact(&coeffs, n, t).unwrap();
                let fd = specific_heat_finite_difference(&coeffs, n, t, 1e-4).unwrap();
                assert!(
                    ((exact - fd) / fd).abs() < 1e-6,
                    "N = {n}, T = {t}: exact {exact} vs fd {fd}"
                );
            }
        }
    }

    #[test]
    fn specific_heat_sommerfeld_slope() {
        let (_, coeffs) = isotropic();
        let n = 1e6;
        let t_f0 = (3.0 * n / coeffs.b2).cbrt();
        for frac in [0.02, 0.05, 0.08] {
            let t = frac * t_f0;
            let c = specific_heat_exact(&coeffs, n, t).unwrap();
            let slope = std::f64::consts::PI.powi(2) * frac;
            assert!(
                (c / slope - 1.0).abs() < 0.05,
                "T/T_F0 = {frac}: c = {c}, pi^2 t = {slope}"
            );
        }
    }

    #[test]
    fn paper22_fugacity_reference_point() {
        // the unit-weight number equation at N = 455, T = 20
        let (_, coeffs) = isotropic();
        let z = solve_fugacity_paper22(&coeffs, 455.0, 20.0).unwrap();
        assert!((z.value() - 0.09986).abs() < 1e-4, "z = {}", z.value());
        // production fugacity differs: the moment weights matter
        let z_prod = solve_fugacity(&coeffs, 455.0, 20.0).unwrap();
        assert!((z_prod.value() - 0.0532).abs() < 5e-4, "z_prod = {}", z_prod.value());
    }

    #[test]
    fn paper22_classical_limit_is_five_halves() {
        let (_, coeffs) = isotropic();
        let c22 = specific_heat_paper22(&coeffs, 455.0, 2e3).unwrap();
        assert!((c22 - 2.5).abs() < 0.02, "c22 = {c22}");
        // no singularity as z -> 0: the f_(3/2)/f_(1/2) ratio tends to 1
        let c22_far = specific_heat_paper22(&coeffs, 455.0, 2e4).unwrap();
        assert!(c22_far.is_finite() && (c22_far - 2.5).abs() < 0.002);
    }

    #[test]
    fn fermi_temperature_reference_values() {
        let (_, coeffs) = isotropic();
        let ft = fermi_temperature(&coeffs, 1000.0).unwrap();
        assert_relative_eq!(ft.t_f0, 6000f64.cbrt(), max_relative = 1e-12);
        assert!((ft.z_f.value() - 0.34703).abs() < 2e-4, "z_F = {}", ft.z_f.value());
        let ratio = ft.t_f / ft.t_f0;
        assert!((ratio - 0.94342).abs() < 1e-3, "ratio = {ratio}");
    }

    #[test]
    fn fermi_temperature_correction_shrinks_with_n() {
        let (_, coeffs) = isotropic();
        let mut prev = 0.0;
        for k in [2, 4, 6, 8] {
            let ft = fermi_temperature(&coeffs, 10f64.powi(k)).unwrap();
            let ratio = ft.t_f / ft.t_f0;
            assert!(ratio < 1.0 && ratio > prev, "N = 1e{k}: ratio = {ratio}");
            prev = ratio;
        }
    }

    #[test]
    fn sweep_basics() {
        let (trap, _) = isotropic();
        let table = sweep_temperature(&trap, 455.0, &[20.0]).unwrap();
        assert_eq!(table.rows.len(), 1);
        let point = table.rows[0].point.as_ref().unwrap();
        assert!(point.expansion_valid);
        assert_relative_eq!(point.mu, 20.0 * point.z.ln(), max_relative = 1e-12);

        assert!(sweep_temperature(&trap, 455.0, &[]).is_err());
        assert!(sweep_temperature(&trap, 455.0, &[1.0, 1.0]).is_err());
        assert!(sweep_temperature(&trap, 455.0, &[-1.0, 2.0]).is_err());
    }

    #[test]
    fn sweep_energy_increases_and_heat_stays_positive() {
        let (trap, _) = isotropic();
        let grid: Vec<f64> = (1..=20).map(|i| 5.0 * i as f64).collect();
        let table = sweep_temperature(&trap, 455.0, &grid).unwrap();
        let mut prev_u = 0.0;
        for row in &table.rows {
            let p = row.point.as_ref().unwrap();
            assert!(p.u > prev_u, "U not increasing at T = {}", p.t);
            assert!(p.c_exact > 0.0 && p.z > 0.0);
            prev_u = p.u;
        }
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_sweep_is_bit_identical_to_serial() {
        let trap = TrapSpec::new(1.0, 1.3, 1.7, ZeroPointMode::RelativeSpectrum).unwrap();
        let grid: Vec<f64> = (1..=40).map(|i| 2.0 + 3.0 * i as f64).collect();
        let par = sweep_temperature(&trap, 900.0, &grid).unwrap();
        let ser = sweep_temperature_serial(&trap, 900.0, &grid).unwrap();
        assert_eq!(par, ser);
    }

    #[test]
    fn absolute_mode_is_rejected() {
        let trap = TrapSpec::isotropic(1.0, ZeroPointMode::AbsoluteSpectrum).unwrap();
        let coeffs = compute_dos_coefficients(&trap);
        assert!(solve_fugacity(&coeffs, 100.0, 5.0).is_err());
        assert!(thermo_point(&trap, 100.0, 5.0).is_err());
    }
}
