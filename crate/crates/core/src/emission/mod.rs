//! Light–matter layer: dipole transition amplitudes, the interaction
//! Hamiltonian on a truncated Fock space, the clonable domain and the
//! adaptive-ancilla copying map for an excited-state manifold.
//!
//! Amplitudes follow `M_ge = R_e ⟨l_g m_g|C^(1)_q|l_e m_e⟩`, with `R_e` the
//! user-supplied radial factor and `q` the mode's spherical component. They
//! vanish unless `Δl = ±1` and `m_g = m_e + q`.

mod atom;
mod domain;
mod hamiltonian;
mod polarization;

pub use atom::{AtomicLevel, AtomicSystem};
pub use domain::{
    adaptive_ancilla, clonable_domain, spontaneous_emission_output, stimulated_clone, ClonableDomain, ExcitedEnsemble,
    ModeMap, DOMAIN_TOL,
};
pub use hamiltonian::{build_interaction_hamiltonian, CouplingForm, FockLabel, InteractionHamiltonian, DEFAULT_N_MAX};
pub use polarization::{spherical_unit_vector, PolarizationMode};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::symmetry::spherical_tensor_element;

/// Amplitudes at or below this magnitude count as forbidden.
pub const AMPLITUDE_TOL: f64 = 1e-12;

/// `M_ge` for the decay `e → g` into `pol`.
pub fn transition_amplitude(system: &AtomicSystem, e: &AtomicLevel, pol: &PolarizationMode) -> Result<Complex64> {
    let known = system.excited_level(&e.label)?;
    if known != e {
        return Err(Error::UnknownLevel(format!("{} (quantum numbers differ from the system's level)", e.label)));
    }
    amplitude_by_label(system, &e.label, pol)
}

pub(crate) fn amplitude_by_label(system: &AtomicSystem, label: &str, pol: &PolarizationMode) -> Result<Complex64> {
    let e = system.excited_level(label)?;
    let g = system.ground();
    let angular = spherical_tensor_element(g.l, g.m, 1, pol.q(), e.l, e.m);
    Ok(Complex64::new(system.radial_factor(label)? * angular, 0.0))
}

pub(crate) fn is_allowed(amplitude: Complex64) -> bool {
    amplitude.norm() > AMPLITUDE_TOL
}
