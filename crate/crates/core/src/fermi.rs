//! Fermi-Dirac integrals `f_n(z)` and their derivative recurrence.
//!
//! For order `n > 0` and fugacity `z > 0`,
//!
//! `f_n(z) = 1/Gamma(n) * integral_0^inf x^(n-1) / (exp(x)/z + 1) dx`,
//!
//! supplemented by the closed forms `f_0(z) = z/(1+z)` and
//! `f_1(z) = ln(1+z)`. Three evaluation regimes cover all representable
//! fugacities:
//!
//! * `z <= 1/2` — the alternating power series `sum (-1)^(k+1) z^k / k^n`;
//! * intermediate `z` — adaptive Gauss-Kronrod quadrature. Half-integer
//!   orders are integrated in the variable `y = sqrt(x)`, which removes the
//!   endpoint singularity of `x^(n-1)` at the origin;
//! * large `ln z` — the Sommerfeld expansion. For integer orders the
//!   expansion terminates and the exponentially small remainder is restored
//!   exactly through `f_n(e^eta) = P_n(eta) - (-1)^n f_n(e^-eta)`, so the
//!   large-`z` branch is exact to machine precision. For half-integer orders
//!   the series is summed to its smallest term, which keeps the error below
//!   1e-12 once `ln z >= 30`; quadrature covers everything below that.
//!
//! The regime boundaries were chosen so the evaluators agree pairwise well
//! inside 1e-9 across every overlap window.

use crate::error::{Error, Result};
use crate::quad;

const SQRT_PI: f64 = 1.772_453_850_905_516;
const LN_HALF: f64 = -std::f64::consts::LN_2;

/// Orders for which `f_n` is provided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FermiOrder {
    Zero,
    Half,
    One,
    ThreeHalves,
    Two,
    Three,
    Four,
}

impl FermiOrder {
    pub const ALL: [FermiOrder; 7] = [
        FermiOrder::Zero,
        FermiOrder::Half,
        FermiOrder::One,
        FermiOrder::ThreeHalves,
        FermiOrder::Two,
        FermiOrder::Three,
        FermiOrder::Four,
    ];

    /// The order as a real number.
    pub fn value(self) -> f64 {
        match self {
            FermiOrder::Zero => 0.0,
            FermiOrder::Half => 0.5,
            FermiOrder::One => 1.0,
            FermiOrder::ThreeHalves => 1.5,
            FermiOrder::Two => 2.0,
            FermiOrder::Three => 3.0,
            FermiOrder::Four => 4.0,
        }
    }

    /// The order `n - 1` when it is also supported.
    pub fn lower(self) -> Option<FermiOrder> {
        match self {
            FermiOrder::Zero | FermiOrder::Half => None,
            FermiOrder::One => Some(FermiOrder::Zero),
            FermiOrder::ThreeHalves => Some(FermiOrder::Half),
            FermiOrder::Two => Some(FermiOrder::One),
            FermiOrder::Three => Some(FermiOrder::Two),
            FermiOrder::Four => Some(FermiOrder::Three),
        }
    }

    pub fn is_integer(self) -> bool {
        !matches!(self, FermiOrder::Half | FermiOrder::ThreeHalves)
    }

    /// Gamma(n); only queried by the quadrature branch (n >= 1/2).
    fn gamma(self) -> f64 {
        match self {
            FermiOrder::Zero => f64::NAN,
            FermiOrder::Half => SQRT_PI,
            FermiOrder::One => 1.0,
            FermiOrder::ThreeHalves => 0.5 * SQRT_PI,
            FermiOrder::Two => 1.0,
            FermiOrder::Three => 2.0,
            FermiOrder::Four => 6.0,
        }
    }

    /// Gamma(n + 1).
    fn gamma_next(self) -> f64 {
        match self {
            FermiOrder::Zero => 1.0,
            FermiOrder::Half => 0.5 * SQRT_PI,
            FermiOrder::One => 1.0,
            FermiOrder::ThreeHalves => 0.75 * SQRT_PI,
            FermiOrder::Two => 2.0,
            FermiOrder::Three => 6.0,
            FermiOrder::Four => 24.0,
        }
    }

    /// `k^n` for positive `k`.
    fn k_pow(self, k: f64) -> f64 {
        match self {
            FermiOrder::Zero => 1.0,
            FermiOrder::Half => k.sqrt(),
            FermiOrder::One => k,
            FermiOrder::ThreeHalves => k * k.sqrt(),
            FermiOrder::Two => k * k,
            FermiOrder::Three => k * k * k,
            FermiOrder::Four => (k * k) * (k * k),
        }
    }

    /// `ln z` above which the Sommerfeld branch takes over.
    fn asymptotic_threshold(self) -> f64 {
        if self.is_integer() {
            15.0
        } else {
            30.0
        }
    }
}

/// Fugacity `z > 0`, stored as `ln z` so that deeply degenerate states
/// (`z` up to `e^700` and beyond the `f64` overflow point) stay exact.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fugacity {
    ln_z: f64,
}

impl Fugacity {
    pub fn from_value(z: f64) -> Result<Self> {
        if !(z.is_finite() && z > 0.0) {
            return Err(Error::invalid(format!("fugacity must be finite and > 0, got {z}")));
        }
        Ok(Fugacity { ln_z: z.ln() })
    }

    pub fn from_ln(ln_z: f64) -> Result<Self> {
        if !ln_z.is_finite() {
            return Err(Error::invalid(format!("ln(fugacity) must be finite, got {ln_z}")));
        }
        Ok(Fugacity { ln_z })
    }

    /// `z`; overflows to infinity only above `ln z ~ 709.8`.
    pub fn value(self) -> f64 {
        self.ln_z.exp()
    }

    pub fn ln_value(self) -> f64 {
        self.ln_z
    }
}

/// Occupation factor `1 / (exp(x) + 1)`, stable for any `x`.
pub(crate) fn fermi_factor(x: f64) -> f64 {
    if x > 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

/// `f_n(z)` with automatic regime selection.
pub fn fermi_integral(n: FermiOrder, z: Fugacity) -> Result<f64> {
    let eta = z.ln_value();
    match n {
        // z/(1+z) = 1/(exp(-ln z) + 1)
        FermiOrder::Zero => Ok(fermi_factor(-eta)),
        FermiOrder::One => Ok(ln_one_plus_z(eta)),
        _ => {
            if eta <= LN_HALF {
                fermi_integral_series(n, z)
            } else if eta < n.asymptotic_threshold() {
                fermi_integral_quadrature(n, z)
            } else {
                eval_large_z(n, eta)
            }
        }
    }
}

/// `d f_n / d z = f_(n-1)(z) / z`.
pub fn fermi_integral_derivative(n: FermiOrder, z: Fugacity) -> Result<f64> {
    let m = n.lower().ok_or_else(|| {
        Error::invalid(format!(
            "derivative of f_{} needs order {} which is not supported",
            n.value(),
            n.value() - 1.0
        ))
    })?;
    let f = fermi_integral(m, z)?;
    let eta = z.ln_value();
    if eta.abs() <= 690.0 {
        Ok(f / z.value())
    } else {
        // keep the quotient representable when z itself would over/underflow
        Ok((f.ln() - eta).exp())
    }
}

/// `ln(1 + e^eta)` without overflow.
fn ln_one_plus_z(eta: f64) -> f64 {
    if eta > 0.0 {
        eta + (-eta).exp().ln_1p()
    } else {
        eta.exp().ln_1p()
    }
}

/// Alternating power series; valid for small fugacity (`z <= 0.8` accepted).
pub fn fermi_integral_series(n: FermiOrder, z: Fugacity) -> Result<f64> {
    let zv = z.value();
    if zv > 0.8 {
        return Err(Error::invalid(format!(
            "series evaluator is restricted to z <= 0.8, got z = {zv}"
        )));
    }
    let mut sum = 0.0;
    let mut zk = 1.0;
    let mut sign = 1.0;
    for k in 1..=400u32 {
        zk *= zv;
        let term = sign * zk / n.k_pow(f64::from(k));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs().max(f64::MIN_POSITIVE) {
            return Ok(sum);
        }
        sign = -sign;
    }
    Ok(sum)
}

/// Direct quadrature of the defining integral. Accepts any `z` with
/// `ln z <= 45`; used in production for the window between the series and
/// the Sommerfeld branch, and everywhere below that in consistency tests.
pub fn fermi_integral_quadrature(n: FermiOrder, z: Fugacity) -> Result<f64> {
    let eta = z.ln_value();
    if eta > 45.0 {
        return Err(Error::invalid(format!(
            "quadrature evaluator is restricted to ln z <= 45, got ln z = {eta}"
        )));
    }
    let upper = eta.max(0.0) + 90.0;
    let out = match n {
        FermiOrder::Two => run_quad(|x| x * fermi_factor(x - eta), upper),
        FermiOrder::Three => run_quad(|x| (x * x) * fermi_factor(x - eta), upper),
        FermiOrder::Four => run_quad(|x| (x * x * x) * fermi_factor(x - eta), upper),
        // substituted variable y = sqrt(x): 2 y^(2n-1) / (exp(y^2 - eta) + 1)
        FermiOrder::Half => run_quad(|y| 2.0 * fermi_factor(y * y - eta), upper.sqrt()),
        FermiOrder::ThreeHalves => {
            run_quad(|y| 2.0 * (y * y) * fermi_factor(y * y - eta), upper.sqrt())
        }
        FermiOrder::Zero | FermiOrder::One => {
            return Err(Error::invalid(
                "orders 0 and 1 are evaluated in closed form, not by quadrature".to_string(),
            ))
        }
    };
    let value = out.value / n.gamma();
    if !out.converged && out.abs_error > 1e-10 * out.value.abs() {
        return Err(Error::Inconsistent(format!(
            "quadrature error estimate {:.3e} exceeds tolerance for f_{}(ln z = {eta})",
            out.abs_error,
            n.value()
        )));
    }
    Ok(value)
}

fn run_quad<F: Fn(f64) -> f64>(f: F, upper: f64) -> quad::QuadOutcome {
    quad::integrate(f, 0.0, upper, 1e-13, 1e-305, 800)
}

/// Sommerfeld expansion
/// `eta^n/Gamma(n+1) * [1 + sum_j 2 eta(2j) n(n-1)...(n-2j+1) / eta^(2j)]`,
/// summed to its smallest term. Terminates exactly for integer orders, where
/// it equals the polynomial part of `f_n(e^eta)`.
pub fn sommerfeld_expansion(n: FermiOrder, z: Fugacity) -> Result<f64> {
    let eta = z.ln_value();
    if eta <= 0.0 {
        return Err(Error::invalid(format!(
            "Sommerfeld expansion needs ln z > 0, got {eta}"
        )));
    }
    let nv = n.value();
    let eta2 = eta * eta;
    let mut sum = 1.0;
    let mut prod = 1.0;
    let mut eta_pow = 1.0;
    let mut prev_mag = f64::INFINITY;
    for j in 1..=12u32 {
        let i = f64::from(2 * (j - 1));
        prod *= (nv - i) * (nv - i - 1.0);
        if prod == 0.0 {
            break;
        }
        eta_pow *= eta2;
        let term = 2.0 * eta_even(j as usize) * prod / eta_pow;
        let mag = term.abs();
        if mag >= prev_mag {
            break;
        }
        sum += term;
        prev_mag = mag;
        if mag < 1e-17 * sum.abs() {
            break;
        }
    }
    let lead = match n {
        FermiOrder::Zero => 1.0,
        FermiOrder::Half => eta.sqrt(),
        FermiOrder::One => eta,
        FermiOrder::ThreeHalves => eta * eta.sqrt(),
        FermiOrder::Two => eta2,
        FermiOrder::Three => eta2 * eta,
        FermiOrder::Four => eta2 * eta2,
    };
    Ok(lead / n.gamma_next() * sum)
}

/// Large-fugacity branch: Sommerfeld polynomial plus, for integer orders, the
/// exact exponentially small remainder.
fn eval_large_z(n: FermiOrder, eta: f64) -> Result<f64> {
    let poly = sommerfeld_expansion(n, Fugacity { ln_z: eta })?;
    if !n.is_integer() {
        return Ok(poly);
    }
    let corr = fermi_integral_series(n, Fugacity { ln_z: -eta })?;
    Ok(match n {
        FermiOrder::Two | FermiOrder::Four => poly - corr,
        _ => poly + corr,
    })
}

/// Dirichlet eta at even integer argument `2j`.
#[allow(clippy::excessive_precision)]
fn eta_even(j: usize) -> f64 {
    // zeta(2), zeta(4), ..., zeta(24)
    const ZETA_EVEN: [f64; 12] = [
        1.644_934_066_848_226_4,
        1.082_323_233_711_138_2,
        1.017_343_061_984_449_1,
        1.004_077_356_197_944_3,
        1.000_994_575_127_818_1,
        1.000_246_086_553_308_0,
        1.000_061_248_135_058_7,
        1.000_015_282_259_408_6,
        1.000_003_817_293_265_0,
        1.000_000_953_962_033_8,
        1.000_000_238_450_502_7,
        1.000_000_059_608_189_1,
    ];
    (1.0 - 2f64.powi(1 - 2 * j as i32)) * ZETA_EVEN[j - 1]
}
