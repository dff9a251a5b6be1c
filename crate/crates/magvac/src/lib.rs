//! Energetics of the QED vacuum in a strong uniform magnetic field.
//!
//! The library computes, in natural Heaviside-Lorentz units internally:
//!
//! * zeta-regularized negative-spectrum vacuum energies with and without the
//!   field, their renormalized difference, and the paramagnetic screening
//!   factor B' = B sqrt(1 - 16 alpha / 3 pi) ([`vacuum`]),
//! * the quantized photon-emission lines n0 = (k_perp^2 + 2 |k| m) / (2 eB),
//!   the Hermite-Gaussian rate kernel, binned number/energy spectra, mean
//!   photon number, and Poisson count statistics ([`emission`]),
//! * reproducible Monte Carlo sampling of emission events ([`sampler`]),
//! * compact-object energy-release and force estimators ([`astro`]).
//!
//! External quantities (Gauss, cm, erg) enter and leave through [`units`];
//! every physics routine works with eB in eV^2 and volumes in eV^-3.

pub mod astro;
pub mod emission;
pub mod error;
pub mod quad;
pub mod sampler;
pub mod specfun;
pub mod units;
pub mod vacuum;

pub use error::{Error, Result};
