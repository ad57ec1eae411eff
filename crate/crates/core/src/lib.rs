//! State-dependent quantum copying.
//!
//! * [`qstate`]: dense kets, operators, density matrices.
//! * [`cloner`]: the ancilla preparation map `V`, the copy unitary `U = I ⊗ V†`
//!   and the fixed-ancilla (no-cloning) counterexamples.
//! * [`symmetry`]: SU(2) irreps, Clebsch–Gordan coefficients, containment tests.
//! * [`emission`]: dipole amplitudes, the interaction Hamiltonian, clonable
//!   domains and copying with an excited-state manifold as the ancilla.
//! * [`experiment`]: canned experiments and their reports, driven by the CLI.

pub mod cloner;
pub mod config;
pub mod emission;
pub mod error;
pub mod experiment;
pub mod qstate;
pub mod random;
pub mod symmetry;

pub use error::{Error, Result};
