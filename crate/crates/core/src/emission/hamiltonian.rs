use num_complex::Complex64;
use serde::Serialize;

use super::{amplitude_by_label, AtomicSystem, PolarizationMode};
use crate::error::{Error, Result};
use crate::qstate::OperatorMatrix;

/// Smallest truncation where single-photon and stimulated couplings differ.
pub const DEFAULT_N_MAX: u32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CouplingForm {
    /// `−Σ_γ (D_γ + D_γ†) ⊗ (a_γ + a_γ†)`.
    Full,
    /// Keeps only `D_γ ⊗ a_γ†` (emission) and `D_γ† ⊗ a_γ` (absorption).
    RotatingWave,
}

/// Photon occupation numbers, one per mode, in the Hamiltonian's mode order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FockLabel {
    pub occupations: Vec<u32>,
}

impl FockLabel {
    pub fn new(occupations: Vec<u32>, n_max: u32) -> Result<Self> {
        if let Some(n) = occupations.iter().find(|&&n| n > n_max) {
            return Err(Error::InvalidInput(format!("occupation {n} exceeds n_max = {n_max}")));
        }
        Ok(FockLabel { occupations })
    }

    pub fn vacuum(modes: usize) -> Self {
        FockLabel { occupations: vec![0; modes] }
    }

    pub fn total(&self) -> u32 {
        self.occupations.iter().sum()
    }
}

/// `Ĥ_int` on `(ground ⊕ excited) ⊗ Fock`, atom index major.
///
/// Atom index 0 is the ground level, `1..` follow the system's excited list.
/// Fock states are enumerated with the first mode's occupation most significant.
#[derive(Clone, Debug)]
pub struct InteractionHamiltonian {
    pub matrix: OperatorMatrix,
    pub atom_labels: Vec<String>,
    pub mode_labels: Vec<String>,
    pub n_max: u32,
    pub form: CouplingForm,
}

impl InteractionHamiltonian {
    pub fn fock_dim(&self) -> usize {
        (self.n_max as usize + 1).pow(self.mode_labels.len() as u32)
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim_in()
    }

    pub fn index(&self, atom: usize, fock: &FockLabel) -> Result<usize> {
        if atom >= self.atom_labels.len() {
            return Err(Error::IndexOutOfRange { index: atom, dim: self.atom_labels.len() });
        }
        if fock.occupations.len() != self.mode_labels.len() {
            return Err(Error::DimensionMismatch { expected: self.mode_labels.len(), found: fock.occupations.len() });
        }
        if fock.occupations.iter().any(|&n| n > self.n_max) {
            return Err(Error::InvalidInput("occupation above n_max".into()));
        }
        Ok(atom * self.fock_dim() + fock_index(&fock.occupations, self.n_max))
    }

    /// Index of `|atom_label, n⟩` for a single-mode Hamiltonian.
    pub fn single_mode_index(&self, atom_label: &str, n: u32) -> Result<usize> {
        let atom = self
            .atom_labels
            .iter()
            .position(|l| l == atom_label)
            .ok_or_else(|| Error::UnknownLevel(atom_label.to_string()))?;
        self.index(atom, &FockLabel { occupations: vec![n] })
    }

    /// Atomic excitation (0 for ground, 1 for excited) plus total photon number.
    pub fn excitation_number(&self) -> OperatorMatrix {
        let fock_dim = self.fock_dim();
        let mut m = OperatorMatrix::zeros(self.dim(), self.dim());
        for atom in 0..self.atom_labels.len() {
            for f in 0..fock_dim {
                let occ = fock_occupations(f, self.mode_labels.len(), self.n_max);
                let n = occ.iter().sum::<u32>() + u32::from(atom > 0);
                let i = atom * fock_dim + f;
                m[(i, i)] = Complex64::new(f64::from(n), 0.0);
            }
        }
        m
    }

    /// The coupling block between ground and excited levels, as its largest entry.
    pub fn max_coupling(&self) -> f64 {
        self.matrix.max_abs()
    }
}

fn fock_index(occupations: &[u32], n_max: u32) -> usize {
    let base = n_max as usize + 1;
    occupations.iter().fold(0, |acc, &n| acc * base + n as usize)
}

fn fock_occupations(mut index: usize, modes: usize, n_max: u32) -> Vec<u32> {
    let base = n_max as usize + 1;
    let mut occ = vec![0; modes];
    for slot in occ.iter_mut().rev() {
        *slot = (index % base) as u32;
        index /= base;
    }
    occ
}

/// Build `Ĥ_int = −Σ_γ (D_γ + D_γ†) ⊗ (a_γ + a_γ†)` with
/// `D_γ = Σ_e M(e, γ) |g⟩⟨e|`, optionally in the rotating-wave form.
pub fn build_interaction_hamiltonian(
    system: &AtomicSystem,
    modes: &[PolarizationMode],
    n_max: u32,
    form: CouplingForm,
) -> Result<InteractionHamiltonian> {
    if modes.is_empty() {
        return Err(Error::InvalidInput("at least one polarization mode is required".into()));
    }
    if n_max < 1 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    let atom_labels: Vec<String> = std::iter::once(system.ground().label.clone())
        .chain(system.excited().iter().map(|e| e.label.clone()))
        .collect();
    let fock_dim = (n_max as usize + 1).pow(modes.len() as u32);
    let dim = atom_labels.len() * fock_dim;
    let mut h = OperatorMatrix::zeros(dim, dim);

    for (ei, e) in system.excited().iter().enumerate() {
        let excited_row = (ei + 1) * fock_dim;
        for (k, mode) in modes.iter().enumerate() {
            let amp = amplitude_by_label(system, &e.label, mode)?;
            if amp.norm() == 0.0 {
                continue;
            }
            for f in 0..fock_dim {
                let occ = fock_occupations(f, modes.len(), n_max);
                let n = occ[k];
                if n < n_max {
                    // ⟨g, n+1| D_γ ⊗ a_γ† |e, n⟩ = M √(n+1)
                    let mut up = occ.clone();
                    up[k] += 1;
                    let g_up = fock_index(&up, n_max);
                    let value = -amp * f64::from(n + 1).sqrt();
                    h[(g_up, excited_row + f)] += value;
                    h[(excited_row + f, g_up)] += value.conj();
                    if form == CouplingForm::Full {
                        // ⟨e, n+1| D_γ† ⊗ a_γ† |g, n⟩ = M* √(n+1)
                        let value = -amp.conj() * f64::from(n + 1).sqrt();
                        h[(excited_row + g_up, f)] += value;
                        h[(f, excited_row + g_up)] += value.conj();
                    }
                }
            }
        }
    }

    Ok(InteractionHamiltonian {
        matrix: h,
        atom_labels,
        mode_labels: modes.iter().map(|m| m.label().to_string()).collect(),
        n_max,
        form,
    })
}
