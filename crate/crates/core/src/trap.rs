//! Trap definition and the smoothed level density derived from it.
//!
//! The single-particle spectrum of the trap is `E(n) = sum_i omega_i n_i`
//! measured from the ground state, with zero-point energy
//! `eps0 = (omega_x + omega_y + omega_z) / 2`. At temperatures large against
//! the level spacing the one-particle partition function expands as
//!
//! `Q(beta) ~ a2 beta^-3 + a1 beta^-2 + a0 beta^-1 + a_minus1 + O(beta)`
//!
//! and matching the same expansion against `integral exp(-beta E) rho(E) dE`
//! fixes a quadratic level density `rho(E) = b0 + b1 E + b2 E^2`.
//!
//! All coefficient computations run on an internally sorted copy of the three
//! frequencies so that outputs are bit-identical under any permutation of
//! `(omega_x, omega_y, omega_z)`.

use crate::error::{Error, Result};

/// Where the energy zero sits relative to the oscillator spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroPointMode {
    /// Energies measured from the ground state: `eps0 = 0`.
    RelativeSpectrum,
    /// Energies carry the zero-point offset `eps0 = (wx + wy + wz) / 2`.
    AbsoluteSpectrum,
}

/// Three angular trap frequencies in reduced units plus the energy-zero mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrapSpec {
    omega: [f64; 3],
    zero_point: ZeroPointMode,
}

/// Coefficients of the high-temperature partition-function expansion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartitionCoefficients {
    /// Coefficient of `beta^-3`.
    pub a2: f64,
    /// Coefficient of `beta^-2`.
    pub a1: f64,
    /// Coefficient of `beta^-1`.
    pub a0: f64,
    /// Dimensionless constant term.
    pub a_minus1: f64,
}

/// Coefficients of the smoothed level density `rho(E) = b0 + b1 E + b2 E^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DosCoefficients {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    /// Ground-state energy in reduced units (zero in relative mode).
    pub eps0: f64,
    /// The zero-point mode that produced these coefficients.
    pub mode: ZeroPointMode,
}

impl TrapSpec {
    pub fn new(omega_x: f64, omega_y: f64, omega_z: f64, zero_point: ZeroPointMode) -> Result<Self> {
        for (name, w) in [("omega_x", omega_x), ("omega_y", omega_y), ("omega_z", omega_z)] {
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::invalid(format!(
                    "{name} must be a finite positive frequency, got {w}"
                )));
            }
        }
        Ok(TrapSpec {
            omega: [omega_x, omega_y, omega_z],
            zero_point,
        })
    }

    pub fn isotropic(omega: f64, zero_point: ZeroPointMode) -> Result<Self> {
        Self::new(omega, omega, omega, zero_point)
    }

    pub fn omega_x(&self) -> f64 {
        self.omega[0]
    }

    pub fn omega_y(&self) -> f64 {
        self.omega[1]
    }

    pub fn omega_z(&self) -> f64 {
        self.omega[2]
    }

    pub fn omega(&self) -> [f64; 3] {
        self.omega
    }

    pub fn zero_point(&self) -> ZeroPointMode {
        self.zero_point
    }

    pub fn omega_max(&self) -> f64 {
        self.omega.iter().copied().fold(f64::MIN, f64::max)
    }

    pub fn is_isotropic(&self) -> bool {
        self.omega[0] == self.omega[1] && self.omega[1] == self.omega[2]
    }

    /// Ground-state energy selected by the zero-point mode.
    pub fn eps0(&self) -> f64 {
        match self.zero_point {
            ZeroPointMode::RelativeSpectrum => 0.0,
            ZeroPointMode::AbsoluteSpectrum => {
                let [a, b, c] = self.sorted();
                (a + b + c) / 2.0
            }
        }
    }

    /// Frequencies in ascending order; fixes the evaluation order of every
    /// symmetric expression so permuted traps give bit-identical results.
    pub(crate) fn sorted(&self) -> [f64; 3] {
        let mut w = self.omega;
        w.sort_by(f64::total_cmp);
        w
    }
}

/// Expansion coefficients of the single-particle partition function.
pub fn compute_partition_coefficients(trap: &TrapSpec) -> PartitionCoefficients {
    let [w0, w1, w2] = trap.sorted();
    let a2 = 1.0 / (w0 * w1 * w2);
    let a1 = 0.5 * a2 * (w0 + w1 + w2);
    let a0 = a2 / 12.0
        * (w0 * w0 + w1 * w1 + w2 * w2 + 3.0 * (w0 * w1) + 3.0 * (w1 * w2) + 3.0 * (w2 * w0));
    let a_minus1 =
        0.125 + (w0 / w1 + w0 / w2 + w1 / w0 + w1 / w2 + w2 / w0 + w2 / w1) / 24.0;
    PartitionCoefficients { a2, a1, a0, a_minus1 }
}

impl PartitionCoefficients {
    /// Value of the truncated expansion `a2/beta^3 + a1/beta^2 + a0/beta + a_minus1`.
    pub fn expansion_value(&self, beta: f64) -> f64 {
        ((self.a2 / beta + self.a1) / beta + self.a0) / beta + self.a_minus1
    }
}

/// Level-density coefficients for the trap in its zero-point mode.
pub fn compute_dos_coefficients(trap: &TrapSpec) -> DosCoefficients {
    let pc = compute_partition_coefficients(trap);
    let eps0 = trap.eps0();
    let b2 = 0.5 * pc.a2;
    let (b0, b1) = match trap.zero_point {
        ZeroPointMode::RelativeSpectrum => (pc.a0, pc.a1),
        ZeroPointMode::AbsoluteSpectrum => (
            pc.a0 - eps0 * pc.a1 - eps0 * eps0 * pc.a2,
            pc.a1 + eps0 * pc.a2,
        ),
    };
    DosCoefficients { b0, b1, b2, eps0, mode: trap.zero_point }
}

impl DosCoefficients {
    /// Build coefficients directly. Intended for degenerate cases (for example
    /// `b0 = b1 = 0`) that no physical trap produces.
    pub fn from_parts(b0: f64, b1: f64, b2: f64, eps0: f64, mode: ZeroPointMode) -> Result<Self> {
        if !(b2.is_finite() && b2 > 0.0) {
            return Err(Error::invalid(format!("b2 must be finite and positive, got {b2}")));
        }
        if !b0.is_finite() || !b1.is_finite() || !eps0.is_finite() {
            return Err(Error::invalid("b0, b1 and eps0 must be finite".to_string()));
        }
        Ok(DosCoefficients { b0, b1, b2, eps0, mode })
    }
}

/// Smoothed number of states per unit energy at energy `e`.
pub fn density_of_states(coeffs: &DosCoefficients, e: f64) -> Result<f64> {
    if !e.is_finite() || e < 0.0 {
        return Err(Error::invalid(format!("energy must be finite and >= 0, got {e}")));
    }
    Ok((coeffs.b2 * e + coeffs.b1) * e + coeffs.b0)
}

/// Exact one-particle partition function `prod_i 1 / (1 - exp(-beta omega_i))`,
/// energies measured from the ground state. Used to validate the expansion.
pub fn partition_function_exact(trap: &TrapSpec, beta: f64) -> Result<f64> {
    if !beta.is_finite() || beta <= 0.0 {
        return Err(Error::invalid(format!("beta must be finite and positive, got {beta}")));
    }
    let mut q = 1.0;
    for w in trap.sorted() {
        // 1 - exp(-x) via expm1 keeps precision for small beta * omega.
        q /= -f64::exp_m1(-beta * w);
    }
    if !q.is_finite() {
        return Err(Error::Range(format!(
            "partition function overflowed at beta = {beta}"
        )));
    }
    Ok(q)
}
