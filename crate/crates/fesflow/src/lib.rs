//! Single-channel transport and information limits for particles obeying
//! fractional exclusion statistics.
//!
//! The crate has three layers:
//!
//! - [`exclusion`] and [`transport`] evaluate the occupation function
//!   `w(x)^g (1+w)^(1-g) = e^x` and the one-sided/net energy, entropy,
//!   number and heat currents of a ballistic single channel by adaptive
//!   quadrature ([`quad`]).
//! - [`bounds`] checks the two universal entropy-current bounds (the
//!   general `S'^2 <= (pi/3) E'` form and the tighter heat-current form),
//!   recovers the thermal conductance quantum `pi T / 6`, and runs
//!   parameter sweeps.
//! - [`partitions`] and [`qinfo`] cover the information side: exact
//!   restricted partition counts, wideband capacity asymptotics, and a
//!   finite-dimensional quantum layer (von Neumann entropy, Holevo
//!   bounds, two-way information with and without interference).
//!
//! Everything uses reduced units, see [`units`].
//!
//! The crate is `no_std`-compatible (with `alloc`); the default `std`
//! feature simply forwards to the dependencies' `std` features.

#![cfg_attr(not(feature = "std"), no_std)]
#![warn(missing_docs)]

extern crate alloc;

pub mod bounds;
pub mod exclusion;
pub mod partitions;
pub mod qinfo;
pub mod quad;
pub mod stat;
pub mod transport;
pub mod units;

pub use stat::StatParam;
pub use transport::{ChannelSetup, Currents, Reservoir, SideCurrents};
