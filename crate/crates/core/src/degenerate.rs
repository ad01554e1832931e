//! Zero-temperature limit: the Fermi energy as the positive root of the
//! integrated level density, plus solvability diagnostics for the cubic.
//!
//! Filling `N` levels at zero temperature means
//! `N' = integral_eps0^EF rho(E) dE`, which for the quadratic level density
//! is the cubic
//!
//! `EF^3 + (3 b1 / 2 b2) EF^2 + (3 b0 / b2) EF - 3 N'/b2 = 0`.
//!
//! The production path solves the cubic by safeguarded bisection/Newton and
//! keeps two closed-form diagnostics alongside: the leading asymptotic root
//! `(3 N'/b2)^(1/3)` and an approximate root with the constant offset
//! `-(1/4) b1/b2 - (1/2) b0/b2`. The approximate root does not reproduce the
//! exact subleading term `-b1/(2 b2)` of the monotone cubic, which is why it
//! stays a diagnostic.

use crate::error::{Error, Result};
use crate::roots;
use crate::trap::DosCoefficients;

/// Which power of `eps0` multiplies the `b2` term of the effective particle
/// number `N'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NPrimeForm {
    /// `N' = N + b2 eps0^3 / 3 + b1 eps0^2 / 2 + b0 eps0`; consistent with
    /// integrating the level density from 0 to `eps0`.
    #[default]
    Cubic,
    /// `N' = N + b2 eps0^2 / 3 + b1 eps0^2 / 2 + b0 eps0`; alternative
    /// quadratic variant kept selectable for comparison runs.
    Quadratic,
}

/// Solved Fermi energy with its closed-form companions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FermiEnergyResult {
    /// Root of the cubic, found numerically.
    pub e_f: f64,
    /// Leading large-N root `(3 N'/b2)^(1/3)`.
    pub e_f_asymptotic: f64,
    /// Approximate closed-form root (asymptotic root plus constant offset);
    /// diagnostic only, never the production value.
    pub e_f_approx: f64,
    /// Effective particle number entering the cubic.
    pub n_prime: f64,
}

/// Diagnostics of the Fermi-energy cubic for a given particle number.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicClassification {
    /// `p = -3 b1^2 / (4 b2^2) + 3 b0 / b2` of the depressed cubic.
    pub p: f64,
    /// `q0 = b1^3 / (4 b2^3) - 3 b0 b1 / (2 b2^2)` of the depressed cubic.
    pub q0: f64,
    /// Literal bound `[-( |p|/3 )^(3/2) + q0] * b0 / 3`; `None` when `p > 0`
    /// leaves the power undefined. Possibly meaningless; reported as-is.
    pub n_max_literal: Option<f64>,
    /// The same bound with the trailing factor read as `b2 / 3` instead of
    /// `b0 / 3`; the reading that yields a positive count.
    pub n_max_b2_reading: Option<f64>,
    /// `N'` interval on which the cubic has three real roots, from the
    /// discriminant treated as a function of `N'`.
    pub three_root_range: Option<(f64, f64)>,
    /// Discriminant of the full cubic at the supplied particle number.
    pub discriminant: f64,
    /// 3 when the discriminant is positive, 1 otherwise.
    pub real_root_count: u8,
}

fn n_prime_value(coeffs: &DosCoefficients, n: f64, form: NPrimeForm) -> f64 {
    let e0 = coeffs.eps0;
    let b2_term = match form {
        NPrimeForm::Cubic => coeffs.b2 * e0 * e0 * e0 / 3.0,
        NPrimeForm::Quadratic => coeffs.b2 * e0 * e0 / 3.0,
    };
    n + b2_term + 0.5 * coeffs.b1 * e0 * e0 + coeffs.b0 * e0
}

/// Number of levels below energy `e`: `integral_eps0^e rho(E') dE'`.
pub fn particle_number_at(coeffs: &DosCoefficients, e: f64) -> Result<f64> {
    let e0 = coeffs.eps0;
    if !e.is_finite() || e < e0 {
        return Err(Error::invalid(format!(
            "energy must be finite and >= eps0 = {e0}, got {e}"
        )));
    }
    Ok(coeffs.b2 * (e * e * e - e0 * e0 * e0) / 3.0
        + 0.5 * coeffs.b1 * (e * e - e0 * e0)
        + coeffs.b0 * (e - e0))
}

/// Fermi energy for `n` particles with the default `N'` form.
pub fn fermi_energy(coeffs: &DosCoefficients, n: f64) -> Result<FermiEnergyResult> {
    fermi_energy_with(coeffs, n, NPrimeForm::Cubic)
}

/// Fermi energy with an explicit choice of the `N'` zero-point correction.
pub fn fermi_energy_with(
    coeffs: &DosCoefficients,
    n: f64,
    form: NPrimeForm,
) -> Result<FermiEnergyResult> {
    if !n.is_finite() || n < 1.0 {
        return Err(Error::invalid(format!("particle number must be >= 1, got {n}")));
    }
    let n_prime = n_prime_value(coeffs, n, form);
    let a = 1.5 * coeffs.b1 / coeffs.b2;
    let b = 3.0 * coeffs.b0 / coeffs.b2;
    let c = 3.0 * n_prime / coeffs.b2;
    let cbrt_c = c.cbrt();
    let e_f_asymptotic = cbrt_c;
    let e_f_approx = cbrt_c - 0.25 * coeffs.b1 / coeffs.b2 - 0.5 * coeffs.b0 / coeffs.b2;

    if c <= 0.0 {
        return Err(Error::Unsolvable {
            reason: format!("effective particle number N' = {n_prime} is not positive"),
            classification: Box::new(classify_cubic(coeffs, n)?),
        });
    }

    let g = |e: f64| ((e + a) * e + b) * e - c;
    let dg = |e: f64| (3.0 * e + 2.0 * a) * e + b;

    // Bracket an interval on which g is increasing and crosses zero. g(0) < 0
    // because c > 0; the first positive root lies either before the local
    // maximum or after the local minimum of the cubic.
    let mut upper = cbrt_c + 3.0 * (1.0 + coeffs.b1 / coeffs.b2 + (coeffs.b0 / coeffs.b2).abs());
    let mut lo = 0.0;
    let crit = a * a - 3.0 * b;
    if crit > 0.0 {
        let e_lo = (-a - crit.sqrt()) / 3.0;
        let e_hi = (-a + crit.sqrt()) / 3.0;
        if e_lo > 0.0 && g(e_lo) >= 0.0 {
            upper = e_lo;
        } else {
            lo = e_hi.max(0.0);
        }
    }
    let mut grew = 0;
    while g(upper) <= 0.0 {
        upper = 2.0 * upper + 1.0;
        grew += 1;
        if grew > 60 {
            return Err(Error::Unsolvable {
                reason: "no positive root bracketed".to_string(),
                classification: Box::new(classify_cubic(coeffs, n)?),
            });
        }
    }

    let tol = 1e-13 * c;
    let e_f = roots::increasing_root(
        |e| (g(e), Some(dg(e))),
        lo,
        upper,
        300,
        |x, fx, width| fx.abs() <= tol || width <= 8.0 * f64::EPSILON * x.abs(),
    )
    .ok_or_else(|| Error::NoConvergence(format!("Fermi-energy cubic for N = {n}")))?;

    if g(e_f).abs() > 1e-10 * c {
        return Err(Error::NoConvergence(format!(
            "cubic residual {} above tolerance at N = {n}",
            g(e_f)
        )));
    }
    Ok(FermiEnergyResult { e_f, e_f_asymptotic, e_f_approx, n_prime })
}

/// Solvability diagnostics of the cubic at particle number `n`.
pub fn classify_cubic(coeffs: &DosCoefficients, n: f64) -> Result<CubicClassification> {
    if !n.is_finite() || n < 0.0 {
        return Err(Error::invalid(format!("particle number must be >= 0, got {n}")));
    }
    let r1 = coeffs.b1 / coeffs.b2;
    let r0 = coeffs.b0 / coeffs.b2;
    let p = -0.75 * r1 * r1 + 3.0 * r0;
    let q0 = 0.25 * r1 * r1 * r1 - 1.5 * r0 * r1;

    let power = if p <= 0.0 { Some((-p / 3.0).powf(1.5)) } else { None };
    let n_max_literal = power.map(|w| (-w + q0) * coeffs.b0 / 3.0);
    let n_max_b2_reading = power.map(|w| (-w + q0) * coeffs.b2 / 3.0);

    // Depressed cubic t^3 + p t + q with q = q0 - 3 N'/b2: three real roots
    // exactly when |q| < 2 (-p/3)^(3/2).
    let three_root_range = if p < 0.0 {
        let half_width = 2.0 * (-p / 3.0).powf(1.5);
        Some((
            (q0 - half_width) * coeffs.b2 / 3.0,
            (q0 + half_width) * coeffs.b2 / 3.0,
        ))
    } else {
        None
    };

    // Independent route: discriminant of the full cubic E^3 + aE^2 + bE + d.
    let a = 1.5 * r1;
    let b = 3.0 * r0;
    let d = -3.0 * n_prime_value(coeffs, n, NPrimeForm::Cubic) / coeffs.b2;
    let discriminant = 18.0 * a * b * d - 4.0 * a * a * a * d + a * a * b * b
        - 4.0 * b * b * b
        - 27.0 * d * d;
    let real_root_count = if discriminant > 0.0 { 3 } else { 1 };

    Ok(CubicClassification {
        p,
        q0,
        n_max_literal,
        n_max_b2_reading,
        three_root_range,
        discriminant,
        real_root_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trap::{compute_dos_coefficients, TrapSpec, ZeroPointMode};
    use approx::assert_relative_eq;

    fn isotropic_relative() -> DosCoefficients {
        compute_dos_coefficients(
            &TrapSpec::isotropic(1.0, ZeroPointMode::RelativeSpectrum).unwrap(),
        )
    }

    fn isotropic_absolute() -> DosCoefficients {
        compute_dos_coefficients(
            &TrapSpec::isotropic(1.0, ZeroPointMode::AbsoluteSpectrum).unwrap(),
        )
    }

    /// Plain bisection on the cubic, independent of the production solver.
    fn bisect_cubic(coeffs: &DosCoefficients, n_prime: f64) -> f64 {
        let a = 1.5 * coeffs.b1 / coeffs.b2;
        let b = 3.0 * coeffs.b0 / coeffs.b2;
        let c = 3.0 * n_prime / coeffs.b2;
        let g = |e: f64| ((e + a) * e + b) * e - c;
        let (mut lo, mut hi) = (0.0, c.cbrt() + a.abs() + b.abs() + 10.0);
        assert!(g(hi) > 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn particle_number_polynomial_values() {
        let dc = isotropic_relative();
        // E = 2.5: 2.5^3/6 + 0.75 * 2.5^2 + 2.5
        assert_relative_eq!(
            particle_number_at(&dc, 2.5).unwrap(),
            2.5f64.powi(3) / 6.0 + 0.75 * 2.5 * 2.5 + 2.5,
            max_relative = 1e-15
        );
        assert_eq!(particle_number_at(&dc, 0.0).unwrap(), 0.0);
        // closed-shell cross-check: 13 filled shells hold 455 particles
        let smooth = particle_number_at(&dc, 12.5).unwrap();
        assert!((smooth - 455.0).abs() / 455.0 < 2e-3, "smooth = {smooth}");
        // absolute mode starts the integral at eps0
        let abs = isotropic_absolute();
        assert_eq!(particle_number_at(&abs, abs.eps0).unwrap(), 0.0);
        assert!(particle_number_at(&abs, abs.eps0 - 0.1).is_err());
    }

    #[test]
    fn fermi_energy_matches_independent_bisection() {
        let dc = isotropic_relative();
        for n in [2.0, 10.0, 455.0, 4060.0, 1e6] {
            let result = fermi_energy(&dc, n).unwrap();
            let reference = bisect_cubic(&dc, n);
            assert_relative_eq!(result.e_f, reference, max_relative = 1e-10);
        }
    }

    #[test]
    fn fermi_energy_reference_points() {
        let dc = isotropic_relative();
        let ten = fermi_energy(&dc, 10.0).unwrap();
        assert!((ten.e_f - 2.5263).abs() < 5e-4, "E_F(10) = {}", ten.e_f);
        let shell = fermi_energy(&dc, 455.0).unwrap();
        assert!((shell.e_f - 12.5).abs() < 0.005, "E_F(455) = {}", shell.e_f);
        // roundtrip: integrated level density returns N exactly in relative mode
        for n in [10.0, 455.0, 1e6] {
            let r = fermi_energy(&dc, n).unwrap();
            let back = particle_number_at(&dc, r.e_f).unwrap();
            assert_relative_eq!(back, n, max_relative = 1e-10);
        }
    }

    #[test]
    fn fermi_energy_roundtrip_absolute_mode() {
        let dc = isotropic_absolute();
        for n in [50.0, 455.0, 1e5] {
            let r = fermi_energy(&dc, n).unwrap();
            let back = particle_number_at(&dc, r.e_f).unwrap();
            assert_relative_eq!(back, n, max_relative = 1e-10);
        }
    }

    #[test]
    fn fermi_energy_monotone_in_n() {
        let dc = isotropic_relative();
        let mut prev = 0.0;
        for k in 0..=9 {
            let n = 10f64.powi(k);
            let e = fermi_energy(&dc, n).unwrap().e_f;
            assert!(e > prev, "E_F({n}) = {e} not above {prev}");
            prev = e;
        }
    }

    #[test]
    fn subleading_term_of_the_exact_root() {
        // E_F - (3N'/b2)^(1/3) tends to -b1/(2 b2), not to the approximate
        // root's constant -b1/(4 b2) - b0/(2 b2).
        let dc = isotropic_relative();
        let r = fermi_energy(&dc, 1e9).unwrap();
        let shift = r.e_f - r.e_f_asymptotic;
        assert!((shift + 1.5).abs() < 0.01, "shift = {shift}");
        let approx_shift = r.e_f_approx - r.e_f_asymptotic;
        assert_relative_eq!(approx_shift, -1.75, max_relative = 1e-12);
        // large-N check against the infinite-trap cube root
        let big = fermi_energy(&dc, 1e6).unwrap();
        assert!((big.e_f - (6e6f64).cbrt()).abs() < 2.0);
    }

    #[test]
    fn exact_root_beats_approximate_root_by_many_orders() {
        let dc = isotropic_relative();
        let g = |e: f64, c: f64| ((e + 4.5) * e + 6.0) * e - c;
        for n in [10.0, 1e2, 1e3, 1e4, 1e5, 1e6] {
            let r = fermi_energy(&dc, n).unwrap();
            let c = 3.0 * n / dc.b2;
            let exact_residual = g(r.e_f, c).abs();
            let approx_residual = g(r.e_f_approx, c).abs();
            assert!(
                exact_residual * 1e6 < approx_residual,
                "N = {n}: exact {exact_residual} vs approx {approx_residual}"
            );
        }
    }

    #[test]
    fn pure_cubic_degenerate_coefficients() {
        let dc = DosCoefficients::from_parts(0.0, 0.0, 0.5, 0.0, ZeroPointMode::RelativeSpectrum)
            .unwrap();
        let r = fermi_energy(&dc, 1000.0).unwrap();
        assert_relative_eq!(r.e_f, 6000f64.cbrt(), max_relative = 1e-12);
        let class = classify_cubic(&dc, 1000.0).unwrap();
        assert_eq!(class.real_root_count, 1);
    }

    #[test]
    fn classification_absolute_isotropic() {
        let dc = isotropic_absolute();
        let class = classify_cubic(&dc, 10.0).unwrap();
        assert_relative_eq!(class.p, -48.0, max_relative = 1e-12);
        assert_relative_eq!(class.q0, 117.0, max_relative = 1e-12);
        // (-(-48/3)^(3/2) + 117) * (-3.5/3) = (117 - 64) * (-7/6)
        let literal = class.n_max_literal.unwrap();
        assert_relative_eq!(literal, -53.0 * 3.5 / 3.0, max_relative = 1e-12);
        assert!(literal < 0.0, "literal bound is negative, diagnostic only");
        let alt = class.n_max_b2_reading.unwrap();
        assert_relative_eq!(alt, 53.0 * 0.5 / 3.0, max_relative = 1e-12);
        assert!(alt > 0.0);
    }

    #[test]
    fn relative_mode_has_single_root_for_all_n() {
        let dc = isotropic_relative();
        for k in 0..=9 {
            let n = 10f64.powi(k);
            let class = classify_cubic(&dc, n).unwrap();
            assert_eq!(class.real_root_count, 1, "N = {n}");
            // the three-root window sits entirely at negative N'
            let (lo, hi) = class.three_root_range.unwrap();
            assert!(hi < 1.0, "window = ({lo}, {hi})");
        }
    }

    #[test]
    fn discriminant_sign_matches_depressed_cubic_window() {
        // independent consistency of the two classification routes
        for (coeffs, n) in [
            (isotropic_relative(), 455.0),
            (isotropic_absolute(), 10.0),
            (isotropic_absolute(), 1e4),
        ] {
            let class = classify_cubic(&coeffs, n).unwrap();
            let n_prime = n_prime_value(&coeffs, n, NPrimeForm::Cubic);
            let in_window = class
                .three_root_range
                .map(|(lo, hi)| n_prime > lo && n_prime < hi)
                .unwrap_or(false);
            assert_eq!(class.real_root_count == 3, in_window, "N = {n}");
        }
    }

    #[test]
    fn n_prime_forms_differ_only_in_absolute_mode() {
        let rel = isotropic_relative();
        let cubic = fermi_energy_with(&rel, 455.0, NPrimeForm::Cubic).unwrap();
        let quad = fermi_energy_with(&rel, 455.0, NPrimeForm::Quadratic).unwrap();
        assert_eq!(cubic.e_f, quad.e_f);

        let abs = isotropic_absolute();
        let cubic = fermi_energy_with(&abs, 455.0, NPrimeForm::Cubic).unwrap();
        let quad = fermi_energy_with(&abs, 455.0, NPrimeForm::Quadratic).unwrap();
        // (b2/3) * (eps0^3 - eps0^2) with b2 = 1/2, eps0 = 3/2
        assert_relative_eq!(
            cubic.n_prime - quad.n_prime,
            (0.5 / 3.0) * (1.5f64.powi(3) - 1.5f64.powi(2)),
            max_relative = 1e-12
        );
        assert!(cubic.e_f != quad.e_f);
    }

    #[test]
    fn unsolvable_carries_classification() {
        // absolute-mode N = 1 drives N' negative
        let dc = isotropic_absolute();
        match fermi_energy(&dc, 1.0) {
            Err(Error::Unsolvable { classification, .. }) => {
                assert_relative_eq!(classification.p, -48.0, max_relative = 1e-12);
            }
            other => panic!("expected Unsolvable, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_particle_numbers() {
        let dc = isotropic_relative();
        assert!(fermi_energy(&dc, 0.5).is_err());
        assert!(fermi_energy(&dc, f64::NAN).is_err());
    }
}
