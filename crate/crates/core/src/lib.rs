//! Dynamics of a spin-½ particle in a rotating magnetic field, treated at three
//! levels of quantization:
//!
//! * [`semiclassical`]: classical external field, exact Rabi solution and a
//!   unitary time integrator for arbitrary fields.
//! * [`photon`]: the circular field promoted to a single truncated boson mode,
//!   with the interaction-picture block decomposition.
//! * [`jaynes_cummings`]: the linearly polarized field, with and without the
//!   rotating wave approximation.
//! * [`fermion`]: the Pauli spinor itself second-quantized on a two-mode
//!   fermionic Fock space.
//!
//! Everything is built on the small dense complex linear algebra layer in
//! [`algebra`]. Units are natural (ħ = 1); energies and angular frequencies
//! share units.

pub mod algebra;
pub mod checks;
mod error;
pub mod exec;
pub mod fermion;
pub mod jaynes_cummings;
pub mod photon;
pub mod semiclassical;

pub use error::{Error, Result};
