//! Brute-force ground truth: direct sums over the discrete oscillator
//! spectrum in the grand canonical ensemble.
//!
//! Energies are always measured from the ground state, matching the
//! relative-spectrum convention of the continuum formulas. Isotropic traps
//! collapse the triple sum to shells of degeneracy `g(n) = (n+1)(n+2)/2`;
//! anisotropic traps run the triple loop with per-axis cutoffs.
//!
//! Truncation is controlled rigorously: since `1/(e^x + 1) < e^-x`, splitting
//! the Boltzmann weight as `e^(-E/T) <= e^(-0.9 E_c/T) e^(-0.1 E/T)` for
//! `E > E_c` bounds the neglected occupation by
//! `e^(mu/T) e^(-0.9 E_c/T) prod_i (1 - e^(-0.1 omega_i/T))^-1`, and the
//! neglected energy by the same expression times
//! `sum_i omega_i / (e^(0.1 omega_i/T) - 1)`. Cutoffs start at the smallest
//! value this bound admits and are auto-extended until it drops below `1e-8`
//! of the sum.
//!
//! The anisotropic sum is partitioned by the first quantum number; partial
//! sums are combined by pairwise summation in fixed index order, so the
//! rayon path is bit-identical to the serial one.

use crate::error::{Error, Result};
use crate::fermi::fermi_factor;
use crate::quad::pairwise_sum;
use crate::thermo;
use crate::trap::TrapSpec;

/// Energy cutoff plus the rigorous bound on what the cutoff discards.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumTruncation {
    /// Highest retained energy, relative to the ground state.
    pub e_cutoff: f64,
    /// Upper bound on the neglected part of the sum (occupation for number
    /// sums, energy for energy sums).
    pub tail_bound: f64,
}

impl SpectrumTruncation {
    /// Let the evaluation pick and extend its own cutoff.
    pub fn auto() -> Self {
        SpectrumTruncation { e_cutoff: 0.0, tail_bound: f64::NAN }
    }

    /// Start from an explicit cutoff; still auto-extended if the tail bound
    /// does not meet the `1e-8` target.
    pub fn with_cutoff(e_cutoff: f64) -> Self {
        SpectrumTruncation { e_cutoff, tail_bound: f64::NAN }
    }
}

impl Default for SpectrumTruncation {
    fn default() -> Self {
        Self::auto()
    }
}

/// A truncated spectrum sum together with the truncation that produced it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncatedSum {
    pub value: f64,
    pub truncation: SpectrumTruncation,
}

/// Zero-temperature closed-shell bookkeeping for isotropic traps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShellFilling {
    /// Index `M` of the last completely filled shell.
    pub last_filled: u64,
    /// Cumulative capacity through shell `M`: the tetrahedral number
    /// `(M+1)(M+2)(M+3)/6`.
    pub n_shell: u64,
    /// Energies of the last filled and first empty shell; the zero-T
    /// chemical potential sits in between.
    pub e_gap: (f64, f64),
    /// Ground-state-relative energy of the filled shells:
    /// `omega * M(M+1)(M+2)(M+3)/8`.
    pub u_exact: f64,
}

fn tetrahedral(m: u64) -> u64 {
    ((m + 1) as u128 * (m + 2) as u128 * (m + 3) as u128 / 6) as u64
}

/// Shell filling for `n` particles in an isotropic trap of frequency `omega`.
pub fn shell_filling(n: u64, omega: f64) -> Result<ShellFilling> {
    if n == 0 {
        return Err(Error::invalid("particle number must be >= 1".to_string()));
    }
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::invalid(format!("omega must be finite and positive, got {omega}")));
    }
    let mut m = ((6.0 * n as f64).cbrt() as u64).saturating_sub(3);
    while tetrahedral(m + 1) <= n {
        m += 1;
    }
    while tetrahedral(m) > n {
        m -= 1;
    }
    let mf = m as f64;
    Ok(ShellFilling {
        last_filled: m,
        n_shell: tetrahedral(m),
        e_gap: (mf * omega, (mf + 1.0) * omega),
        u_exact: omega * mf * (mf + 1.0) * (mf + 2.0) * (mf + 3.0) / 8.0,
    })
}

#[derive(Clone, Copy)]
enum Weight {
    Count,
    Energy,
}

/// Fraction of the Boltzmann exponent assigned to the cutoff in the tail
/// split; the remaining 0.1 keeps the full spectrum sum convergent.
const TAIL_SPLIT: f64 = 0.9;

/// `-sum_i ln(1 - e^(-omega_i s))`, the log of the full Boltzmann sum at
/// inverse temperature `s`.
fn ln_boltzmann_sum(trap: &TrapSpec, s: f64) -> f64 {
    trap.omega()
        .iter()
        .map(|&w| -(-f64::exp_m1(-w * s)).ln())
        .sum()
}

/// Log of the weight-dependent prefactor of the tail bound at the residual
/// inverse temperature `s = (1 - TAIL_SPLIT)/T`.
fn ln_tail_prefactor(trap: &TrapSpec, s: f64, weight: Weight) -> f64 {
    let base = ln_boltzmann_sum(trap, s);
    match weight {
        Weight::Count => base,
        Weight::Energy => {
            let w_sum: f64 = trap.omega().iter().map(|&w| w / f64::exp_m1(w * s)).sum();
            base + w_sum.ln()
        }
    }
}

fn ln_tail_bound(trap: &TrapSpec, mu: f64, t: f64, e_cutoff: f64, weight: Weight) -> f64 {
    let s = (1.0 - TAIL_SPLIT) / t;
    mu / t - TAIL_SPLIT * e_cutoff / t + ln_tail_prefactor(trap, s, weight)
}

/// Smallest cutoff whose tail bound reaches `ln(1e-8)` against a unit-scale
/// sum; the evaluation loop extends from here if the actual sum is smaller.
fn initial_cutoff(trap: &TrapSpec, mu: f64, t: f64, weight: Weight) -> f64 {
    let s = (1.0 - TAIL_SPLIT) / t;
    let target = (1e-9f64).ln();
    let [wx, wy, wz] = trap.omega();
    let floor = wx + wy + wz + 3.0 * trap.omega_max();
    let ec = t * (mu / t + ln_tail_prefactor(trap, s, weight) - target) / TAIL_SPLIT;
    ec.max(floor)
}

#[cfg(feature = "parallel")]
fn per_axis_sums<F>(parallel: bool, nx_max: u64, f: F) -> Vec<f64>
where
    F: Fn(u64) -> f64 + Sync + Send,
{
    if parallel {
        use rayon::prelude::*;
        (0..=nx_max).into_par_iter().map(f).collect()
    } else {
        (0..=nx_max).map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
fn per_axis_sums<F>(_parallel: bool, nx_max: u64, f: F) -> Vec<f64>
where
    F: Fn(u64) -> f64 + Sync + Send,
{
    (0..=nx_max).map(f).collect()
}

/// Occupation drops below every representable double beyond this argument.
const X_BREAK: f64 = 745.0;

fn spectrum_sum(
    trap: &TrapSpec,
    mu: f64,
    t: f64,
    e_cutoff: f64,
    weight: Weight,
    parallel: bool,
    force_generic: bool,
) -> f64 {
    let value_of = |e: f64| match weight {
        Weight::Count => 1.0,
        Weight::Energy => e,
    };
    if trap.is_isotropic() && !force_generic {
        let w = trap.omega_x();
        let n_max = (e_cutoff / w).floor() as u64;
        let mut acc = 0.0;
        for n in 0..=n_max {
            let e = n as f64 * w;
            let x = (e - mu) / t;
            if x > X_BREAK {
                break;
            }
            let g = ((n + 1) * (n + 2) / 2) as f64;
            acc += g * value_of(e) * fermi_factor(x);
        }
        return acc;
    }

    let [wx, wy, wz] = trap.omega();
    let nx_max = (e_cutoff / wx).floor() as u64;
    let partials = per_axis_sums(parallel, nx_max, |nx| {
        let ex = nx as f64 * wx;
        if (ex - mu) / t > X_BREAK {
            return 0.0;
        }
        let mut acc = 0.0;
        let ny_max = ((e_cutoff - ex) / wy).floor() as u64;
        for ny in 0..=ny_max {
            let exy = ex + ny as f64 * wy;
            if (exy - mu) / t > X_BREAK {
                break;
            }
            let nz_max = ((e_cutoff - exy) / wz).floor() as u64;
            for nz in 0..=nz_max {
                let e = exy + nz as f64 * wz;
                let x = (e - mu) / t;
                if x > X_BREAK {
                    break;
                }
                acc += value_of(e) * fermi_factor(x);
            }
        }
        acc
    });
    pairwise_sum(&partials)
}

fn check_mu_t(mu: f64, t: f64) -> Result<()> {
    if !mu.is_finite() {
        return Err(Error::invalid(format!("chemical potential must be finite, got {mu}")));
    }
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::invalid(format!("temperature must be finite and positive, got {t}")));
    }
    Ok(())
}

fn state_budget(trap: &TrapSpec, e_cutoff: f64) -> Result<()> {
    if trap.is_isotropic() {
        if e_cutoff / trap.omega_x() > 2e8 {
            return Err(Error::Resource(format!(
                "isotropic cutoff {e_cutoff} implies more than 2e8 shells"
            )));
        }
        return Ok(());
    }
    let [wx, wy, wz] = trap.omega();
    let states = (e_cutoff / wx + 1.0) * (e_cutoff / wy + 1.0) * (e_cutoff / wz + 1.0) / 6.0;
    if states > 4e8 {
        return Err(Error::Resource(format!(
            "cutoff {e_cutoff} implies ~{states:.2e} states, above the iteration budget"
        )));
    }
    Ok(())
}

fn evaluate(
    trap: &TrapSpec,
    mu: f64,
    t: f64,
    trunc: SpectrumTruncation,
    weight: Weight,
    parallel: bool,
) -> Result<TruncatedSum> {
    check_mu_t(mu, t)?;
    let mut e_cutoff = if trunc.e_cutoff > 0.0 {
        trunc.e_cutoff
    } else {
        initial_cutoff(trap, mu, t, weight)
    };
    for _ in 0..80 {
        state_budget(trap, e_cutoff)?;
        let value = spectrum_sum(trap, mu, t, e_cutoff, weight, parallel, false);
        let ln_tail = ln_tail_bound(trap, mu, t, e_cutoff, weight);
        if ln_tail <= (1e-8 * value.abs().max(1e-300)).ln() {
            return Ok(TruncatedSum {
                value,
                truncation: SpectrumTruncation { e_cutoff, tail_bound: ln_tail.exp() },
            });
        }
        e_cutoff *= 1.4;
    }
    Err(Error::Resource(format!(
        "tail bound not met after 80 cutoff extensions (mu = {mu}, T = {t})"
    )))
}

/// Grand-canonical particle number `sum 1/(e^((E - mu)/T) + 1)` over the
/// truncated spectrum.
pub fn discrete_number(
    trap: &TrapSpec,
    mu: f64,
    t: f64,
    trunc: SpectrumTruncation,
) -> Result<TruncatedSum> {
    evaluate(trap, mu, t, trunc, Weight::Count, true)
}

/// Single-threaded reference path of [`discrete_number`].
pub fn discrete_number_serial(
    trap: &TrapSpec,
    mu: f64,
    t: f64,
    trunc: SpectrumTruncation,
) -> Result<TruncatedSum> {
    evaluate(trap, mu, t, trunc, Weight::Count, false)
}

/// Grand-canonical internal energy `sum E/(e^((E - mu)/T) + 1)`, energies
/// relative to the ground state.
pub fn discrete_internal_energy(
    trap: &TrapSpec,
    mu: f64,
    t: f64,
    trunc: SpectrumTruncation,
) -> Result<TruncatedSum> {
    evaluate(trap, mu, t, trunc, Weight::Energy, true)
}

/// Single-threaded reference path of [`discrete_internal_energy`].
pub fn discrete_internal_energy_serial(
    trap: &TrapSpec,
    mu: f64,
    t: f64,
    trunc: SpectrumTruncation,
) -> Result<TruncatedSum> {
    evaluate(trap, mu, t, trunc, Weight::Energy, false)
}

/// Chemical potential with `discrete_number(mu) = n`, by bisection on the
/// strictly increasing count.
///
/// At temperatures far below the level spacing, every `mu` across a gap
/// satisfies the `1e-12` residual target in f64. The solver therefore
/// brackets both edges of the residual-tolerance band and returns their
/// midpoint, which collapses to the ordinary root at normal temperatures and
/// to the mid-gap chemical potential in the frozen regime.
pub fn discrete_solve_mu(
    trap: &TrapSpec,
    n: f64,
    t: f64,
    trunc: SpectrumTruncation,
) -> Result<f64> {
    if !n.is_finite() || n < 1.0 {
        return Err(Error::invalid(format!("particle number must be >= 1, got {n}")));
    }
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::invalid(format!("temperature must be finite and positive, got {t}")));
    }

    let failure = std::cell::RefCell::new(None::<Error>);
    let count = |mu: f64| match discrete_number(trap, mu, t, trunc) {
        Ok(s) => s.value,
        Err(e) => {
            *failure.borrow_mut() = Some(e);
            f64::NAN
        }
    };
    let tol = 1e-12 * n;

    // center the bracket on the continuum chemical potential when available
    let mu_guess = continuum_mu_estimate(trap, n, t);
    let mut pad = 0.05 * mu_guess.abs() + 5.0 * t + 3.0 * trap.omega_max() + 1.0;
    let mut lo = mu_guess - pad;
    let mut hi = mu_guess + pad;
    for _ in 0..60 {
        let c = count(lo);
        if let Some(e) = failure.borrow_mut().take() {
            return Err(e);
        }
        if c < n - tol {
            break;
        }
        lo -= pad;
        pad *= 2.0;
    }
    for _ in 0..60 {
        let c = count(hi);
        if let Some(e) = failure.borrow_mut().take() {
            return Err(e);
        }
        if c > n + tol {
            break;
        }
        hi += pad;
        pad *= 2.0;
    }
    if count(lo) >= n - tol || count(hi) <= n + tol {
        return Err(Error::NoConvergence(format!(
            "could not bracket the discrete chemical potential at N = {n}, T = {t}"
        )));
    }

    // boundary of {mu : count > n + tol} from above, {mu : count < n - tol}
    // from below
    let bisect_edge = |mut a: f64, mut b: f64, upper: bool| -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            let c = count(mid);
            let in_band = if upper { c <= n + tol } else { c >= n - tol };
            if in_band == upper {
                a = mid;
            } else {
                b = mid;
            }
            if b - a <= 4.0 * f64::EPSILON * (1.0 + a.abs()) {
                break;
            }
        }
        if upper {
            b
        } else {
            a
        }
    };
    let edge_hi = bisect_edge(lo, hi, true);
    let edge_lo = bisect_edge(lo, edge_hi, false);
    if let Some(e) = failure.borrow_mut().take() {
        return Err(e);
    }
    Ok(0.5 * (edge_lo + edge_hi))
}

fn continuum_mu_estimate(trap: &TrapSpec, n: f64, t: f64) -> f64 {
    let relative = TrapSpec::new(
        trap.omega_x(),
        trap.omega_y(),
        trap.omega_z(),
        crate::trap::ZeroPointMode::RelativeSpectrum,
    )
    .expect("frequencies already validated");
    let coeffs = crate::trap::compute_dos_coefficients(&relative);
    thermo::solve_fugacity(&coeffs, n, t)
        .map(|z| t * z.ln_value())
        .unwrap_or(0.0)
}

/// Specific heat per particle from centered finite differences of the
/// discrete internal energy at fixed `N`, re-solving `mu` at `T +- h`.
/// The step halving must agree to `1e-4` relative (with a `1e-7` absolute
/// floor for the frozen regime where `c` itself vanishes) before a value is
/// accepted.
pub fn discrete_specific_heat(
    trap: &TrapSpec,
    n: f64,
    t: f64,
    trunc: SpectrumTruncation,
) -> Result<f64> {
    let c_of = |h: f64| -> Result<f64> {
        let mu_p = discrete_solve_mu(trap, n, t + h, trunc)?;
        let u_p = discrete_internal_energy(trap, mu_p, t + h, trunc)?.value;
        let mu_m = discrete_solve_mu(trap, n, t - h, trunc)?;
        let u_m = discrete_internal_energy(trap, mu_m, t - h, trunc)?.value;
        Ok((u_p - u_m) / (2.0 * h * n))
    };
    let c1 = c_of(1e-3 * t)?;
    let c2 = c_of(5e-4 * t)?;
    if (c1 - c2).abs() > 1e-4 * c2.abs() + 1e-7 {
        return Err(Error::Inconsistent(format!(
            "finite-difference specific heat unstable at N = {n}, T = {t}: {c1} vs {c2}"
        )));
    }
    Ok(c2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trap::ZeroPointMode;
    use approx::assert_relative_eq;

    fn iso() -> TrapSpec {
        TrapSpec::isotropic(1.0, ZeroPointMode::RelativeSpectrum).unwrap()
    }

    #[test]
    fn shell_identities_up_to_sixty() {
        for m in 0..=60u64 {
            let n = tetrahedral(m);
            let filling = shell_filling(n, 1.0).unwrap();
            assert_eq!(filling.last_filled, m);
            assert_eq!(filling.n_shell, n);
            // direct sums
            let mut count = 0u64;
            let mut energy = 0.0;
            for shell in 0..=m {
                let g = (shell + 1) * (shell + 2) / 2;
                count += g;
                energy += (shell * g) as f64;
            }
            assert_eq!(count, n);
            assert_eq!(filling.u_exact, energy);
        }
        // partially filled shell: M stays at the last complete one
        let f = shell_filling(456, 1.0).unwrap();
        assert_eq!(f.last_filled, 12);
        assert_eq!(f.n_shell, 455);
    }

    #[test]
    fn step_filling_at_low_temperature() {
        let sum = discrete_number(&iso(), 2.5, 0.01, SpectrumTruncation::auto()).unwrap();
        assert!((sum.value - 10.0).abs() < 1e-9, "value = {}", sum.value);
    }

    #[test]
    fn empty_gas_for_deeply_negative_mu() {
        let sum = discrete_number(&iso(), -1e4, 1.0, SpectrumTruncation::auto()).unwrap();
        assert_eq!(sum.value, 0.0);
        let u = discrete_internal_energy(&iso(), -1e4, 1.0, SpectrumTruncation::auto()).unwrap();
        assert_eq!(u.value, 0.0);
    }

    #[test]
    fn tail_bound_invariant_holds() {
        for (mu, t) in [(2.5, 0.5), (10.0, 3.0), (-5.0, 8.0)] {
            let s = discrete_number(&iso(), mu, t, SpectrumTruncation::auto()).unwrap();
            assert!(
                s.truncation.tail_bound < 1e-8 * s.value,
                "mu = {mu}, T = {t}: bound {} vs value {}",
                s.truncation.tail_bound,
                s.value
            );
        }
    }

    #[test]
    fn solve_then_resum_roundtrip() {
        let trap = iso();
        let mu = discrete_solve_mu(&trap, 455.0, 5.0, SpectrumTruncation::auto()).unwrap();
        let back = discrete_number(&trap, mu, 5.0, SpectrumTruncation::auto()).unwrap();
        assert!((back.value - 455.0).abs() <= 1e-10 * 455.0, "back = {}", back.value);
    }

    #[test]
    fn low_temperature_mu_sits_mid_gap() {
        let trap = iso();
        let mu = discrete_solve_mu(&trap, 10.0, 0.01, SpectrumTruncation::auto()).unwrap();
        assert!((mu - 2.5).abs() < 0.05, "mu = {mu}");
        // one particle: the gap between shell 0 and shell 1 is skewed by the
        // threefold degeneracy above: mu -> omega/2 - (T/2) ln 3
        let mu1 = discrete_solve_mu(&trap, 1.0, 0.01, SpectrumTruncation::auto()).unwrap();
        assert!((mu1 - (0.5 - 0.005 * 3f64.ln())).abs() < 0.01, "mu1 = {mu1}");
        assert!(mu1 > 0.0 && mu1 < 1.0);
    }

    #[test]
    fn closed_shell_energy_at_zero_temperature() {
        let trap = iso();
        let mu = discrete_solve_mu(&trap, 455.0, 0.01, SpectrumTruncation::auto()).unwrap();
        let u = discrete_internal_energy(&trap, mu, 0.01, SpectrumTruncation::auto()).unwrap();
        assert!((u.value - 4095.0).abs() < 1e-6, "U = {}", u.value);
    }

    #[test]
    fn monotone_in_mu_and_temperature() {
        let trap = iso();
        let t = 2.0;
        let mut prev = -1.0;
        for mu in [-5.0, -1.0, 0.0, 1.0, 4.0, 9.0] {
            let v = discrete_number(&trap, mu, t, SpectrumTruncation::auto()).unwrap().value;
            assert!(v > prev);
            prev = v;
        }
        // at fixed mu below the lowest level the count grows with T
        let cold = discrete_number(&trap, -2.0, 1.0, SpectrumTruncation::auto()).unwrap().value;
        let warm = discrete_number(&trap, -2.0, 2.0, SpectrumTruncation::auto()).unwrap().value;
        assert!(warm > cold);
    }

    #[test]
    fn doubling_the_cutoff_changes_nothing() {
        let trap = iso();
        for (mu, t) in [(12.5, 5.0), (-50.0, 20.0)] {
            let auto = discrete_number(&trap, mu, t, SpectrumTruncation::auto()).unwrap();
            let doubled = discrete_number(
                &trap,
                mu,
                t,
                SpectrumTruncation::with_cutoff(2.0 * auto.truncation.e_cutoff),
            )
            .unwrap();
            assert!(
                (auto.value - doubled.value).abs() <= 1e-8 * doubled.value.abs().max(1e-300),
                "mu = {mu}, T = {t}"
            );
            let auto_u = discrete_internal_energy(&trap, mu, t, SpectrumTruncation::auto()).unwrap();
            let doubled_u = discrete_internal_energy(
                &trap,
                mu,
                t,
                SpectrumTruncation::with_cutoff(2.0 * auto_u.truncation.e_cutoff),
            )
            .unwrap();
            assert!((auto_u.value - doubled_u.value).abs() <= 1e-8 * doubled_u.value.abs().max(1e-300));
        }
    }

    #[test]
    fn generic_triple_loop_matches_shell_fast_path() {
        let trap = iso();
        for (mu, t) in [(2.5, 0.5), (8.0, 4.0)] {
            let auto = discrete_number(&trap, mu, t, SpectrumTruncation::auto()).unwrap();
            let generic = spectrum_sum(
                &trap,
                mu,
                t,
                auto.truncation.e_cutoff,
                Weight::Count,
                false,
                true,
            );
            assert_relative_eq!(auto.value, generic, max_relative = 1e-12);
        }
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_sum_is_bit_identical_to_serial() {
        let trap = TrapSpec::new(1.0, 1.3, 1.7, ZeroPointMode::RelativeSpectrum).unwrap();
        for (mu, t) in [(30.0, 3.0), (-4.0, 6.0)] {
            let par = discrete_number(&trap, mu, t, SpectrumTruncation::auto()).unwrap();
            let ser = discrete_number_serial(&trap, mu, t, SpectrumTruncation::auto()).unwrap();
            assert_eq!(par.value, ser.value);
            let par_u = discrete_internal_energy(&trap, mu, t, SpectrumTruncation::auto()).unwrap();
            let ser_u =
                discrete_internal_energy_serial(&trap, mu, t, SpectrumTruncation::auto()).unwrap();
            assert_eq!(par_u.value, ser_u.value);
        }
    }

    #[test]
    fn specific_heat_limits() {
        let trap = iso();
        // classical plateau
        let c_hot = discrete_specific_heat(&trap, 455.0, 200.0, SpectrumTruncation::auto()).unwrap();
        assert!((c_hot - 3.0).abs() < 0.06, "c = {c_hot}");
        // the gap suppresses c far below the smooth-spectrum slope pi^2 T/T_F
        let c_cool = discrete_specific_heat(&trap, 455.0, 0.05, SpectrumTruncation::auto()).unwrap();
        assert!(c_cool > 0.0 && c_cool < 0.01, "c = {c_cool}");
        // and exponentially to zero as T drops further below the gap
        let c_cold = discrete_specific_heat(&trap, 455.0, 0.02, SpectrumTruncation::auto()).unwrap();
        assert!(c_cold.abs() < 1e-6, "c = {c_cold}");
    }

    #[test]
    fn rejects_bad_arguments() {
        let trap = iso();
        assert!(discrete_number(&trap, f64::NAN, 1.0, SpectrumTruncation::auto()).is_err());
        assert!(discrete_number(&trap, 0.0, 0.0, SpectrumTruncation::auto()).is_err());
        assert!(discrete_solve_mu(&trap, 0.0, 1.0, SpectrumTruncation::auto()).is_err());
        assert!(shell_filling(0, 1.0).is_err());
        assert!(shell_filling(10, 0.0).is_err());
    }
}
