//! Reduced-unit conventions shared by every current-returning operation.
//!
//! All quantities are expressed with `k_B = hbar = 1`: temperatures and
//! chemical potentials are energies, entropy currents are energies per
//! time, and Planck's constant is `h = 2 pi`. In these units the boson
//! closed forms read `E' = pi T^2 / 12`, `S' = pi T / 6`, and the thermal
//! conductance quantum is `pi T / 6`.

/// Planck's constant in reduced units (`h = 2 pi` when `hbar = 1`).
pub const PLANCK_H: f64 = core::f64::consts::TAU;
