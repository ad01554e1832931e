//! Thermodynamics of a finite number of spin-polarized ideal fermions in a
//! three-dimensional anisotropic harmonic trap.
//!
//! The crate works in reduced units (`hbar = k_B = 1`), so one trap-frequency
//! unit is one energy unit is one temperature unit. It provides:
//!
//! * [`trap`] — the trap definition, the high-temperature expansion of the
//!   single-particle partition function, and the smoothed level density
//!   `rho(E) = b0 + b1 E + b2 E^2` derived from it;
//! * [`fermi`] — Fermi-Dirac integrals `f_n(z)` for orders
//!   `n in {0, 1/2, 1, 3/2, 2, 3, 4}` across all fugacity regimes;
//! * [`degenerate`] — the zero-temperature Fermi energy (cubic root) with its
//!   finite-number corrections and solvability diagnostics;
//! * [`thermo`] — fugacity, internal energy, specific heat, Fermi temperature
//!   and temperature sweeps at finite temperature;
//! * [`oracle`] — brute-force sums over the discrete oscillator spectrum used
//!   as ground truth for everything above.
//!
//! With the default `parallel` feature, temperature sweeps and the discrete
//! spectrum sums fan out over rayon. The partition of work and the reduction
//! order are fixed, so parallel results are bit-identical to the serial
//! reference paths.

pub mod degenerate;
pub mod error;
pub mod fermi;
pub mod oracle;
mod quad;
mod roots;
pub mod thermo;
pub mod trap;

pub use error::{Error, Result};
pub use fermi::{fermi_integral, fermi_integral_derivative, FermiOrder, Fugacity};
pub use thermo::{SweepTable, ThermoPoint};
pub use trap::{DosCoefficients, PartitionCoefficients, TrapSpec, ZeroPointMode};
