use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::Serialize;

use super::{amplitude_by_label, is_allowed, AtomicSystem, PolarizationMode};
use crate::cloner::{self, CloneReport, CopyBasis};
use crate::error::{Error, Result};
use crate::qstate::{DensityMatrix, Ket, OperatorMatrix};

/// A photon is in the clonable domain when the norm of its weight outside
/// the allowed components is below this.
pub const DOMAIN_TOL: f64 = 1e-9;

/// Allowed polarization components of an atom, as modes and as an
/// orthonormal basis of their span inside the `[σ−, π, σ+]` space.
#[derive(Clone, Debug, Serialize)]
pub struct ClonableDomain {
    pub modes: Vec<PolarizationMode>,
    pub basis: Vec<Ket>,
}

impl ClonableDomain {
    pub fn dimension(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn labels(&self) -> BTreeSet<String> {
        self.modes.iter().map(|m| m.label().to_string()).collect()
    }

    pub fn contains_q(&self, q: i32) -> bool {
        self.modes.iter().any(|m| m.q() == q)
    }

    /// Norm of the part of `photon` (over `[σ−, π, σ+]`) outside the domain span.
    pub fn leakage(&self, photon: &Ket) -> Result<f64> {
        if photon.dim() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, found: photon.dim() });
        }
        let photon = photon.normalize()?;
        let outside: f64 = PolarizationMode::standard_modes()
            .iter()
            .enumerate()
            .filter(|(_, m)| !self.contains_q(m.q()))
            .map(|(i, _)| photon.amplitude(i).norm_sqr())
            .sum();
        Ok(outside.sqrt())
    }

    pub fn contains(&self, photon: &Ket) -> Result<bool> {
        Ok(self.leakage(photon)? < DOMAIN_TOL)
    }
}

/// The spherical components `q` for which some excited level decays with a
/// nonzero amplitude.
pub fn clonable_domain(system: &AtomicSystem) -> ClonableDomain {
    let mut modes = Vec::new();
    let mut basis = Vec::new();
    for (i, mode) in PolarizationMode::standard_modes().into_iter().enumerate() {
        let allowed = system
            .excited()
            .iter()
            .any(|e| amplitude_by_label(system, &e.label, &mode).map(is_allowed).unwrap_or(false));
        if allowed {
            basis.push(Ket::basis(mode.label(), 3, i).expect("index < 3"));
            modes.push(mode);
        }
    }
    ClonableDomain { modes, basis }
}

/// Photon-basis index → excited level. Index `i` of a photon ket is the
/// amplitude of `modes[i]`, and its ancilla partner is `levels[i]`.
#[derive(Clone, Debug, Serialize)]
pub struct ModeMap {
    modes: Vec<PolarizationMode>,
    levels: Vec<String>,
}

impl ModeMap {
    pub fn new(system: &AtomicSystem, entries: Vec<(PolarizationMode, String)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("mode map is empty".into()));
        }
        let mut seen_modes = BTreeSet::new();
        let mut seen_levels = BTreeSet::new();
        for (mode, level) in &entries {
            system.excited_level(level)?;
            if !seen_modes.insert(mode.label().to_string()) {
                return Err(Error::InvalidInput(format!("mode `{}` mapped twice", mode.label())));
            }
            if !seen_levels.insert(level.clone()) {
                return Err(Error::InvalidInput(format!("excited level `{level}` mapped twice")));
            }
        }
        let (modes, levels) = entries.into_iter().unzip();
        Ok(ModeMap { modes, levels })
    }

    /// Pair each mode with the first unused excited level it couples to.
    /// Modes with no allowed partner are left out.
    pub fn by_selection_rules(system: &AtomicSystem, modes: &[PolarizationMode]) -> Result<Self> {
        let mut used = BTreeSet::new();
        let mut entries = Vec::new();
        for mode in modes {
            for e in system.excited() {
                if used.contains(&e.label) {
                    continue;
                }
                if is_allowed(amplitude_by_label(system, &e.label, mode)?) {
                    used.insert(e.label.clone());
                    entries.push((mode.clone(), e.label.clone()));
                    break;
                }
            }
        }
        Self::new(system, entries)
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn modes(&self) -> &[PolarizationMode] {
        &self.modes
    }

    pub fn levels(&self) -> &[String] {
        &self.levels
    }

    pub fn entries(&self) -> impl Iterator<Item = (&PolarizationMode, &str)> {
        self.modes.iter().zip(self.levels.iter().map(String::as_str))
    }
}

fn check_domain(photon: &Ket, system: &AtomicSystem, map: &ModeMap) -> Result<Ket> {
    if photon.dim() != map.len() {
        return Err(Error::DimensionMismatch { expected: map.len(), found: photon.dim() });
    }
    let photon = photon.normalize()?;
    let mut leak = 0.0;
    let mut worst: Option<(f64, &str)> = None;
    for (i, (mode, level)) in map.entries().enumerate() {
        if !is_allowed(amplitude_by_label(system, level, mode)?) {
            let w = photon.amplitude(i).norm_sqr();
            leak += w;
            if worst.is_none_or(|(best, _)| w > best) {
                worst = Some((w, mode.label()));
            }
        }
    }
    if leak.sqrt() >= DOMAIN_TOL {
        let (weight, component) = worst.expect("leak implies a forbidden component");
        return Err(Error::DomainViolation { component: component.to_string(), weight });
    }
    Ok(photon)
}

/// `|A_γ⟩ = Σ_j α_j |e_j⟩`: the photon's amplitudes transplanted onto the
/// mapped excited levels (ordered as in `map`).
pub fn adaptive_ancilla(photon: &Ket, system: &AtomicSystem, map: &ModeMap) -> Result<Ket> {
    let photon = check_domain(photon, system, map)?;
    Ket::new("A_γ", photon.amplitudes().to_vec())
}

fn manifold_basis(map: &ModeMap) -> Result<CopyBasis> {
    let n = map.len();
    let photon_basis =
        map.modes().iter().enumerate().map(|(i, m)| Ket::basis(m.label(), n, i)).collect::<Result<Vec<_>>>()?;
    let excited_basis =
        map.levels().iter().enumerate().map(|(i, l)| Ket::basis(l.as_str(), n, i)).collect::<Result<Vec<_>>>()?;
    CopyBasis::new(photon_basis, excited_basis)
}

/// `|γ⟩ ⊗ |A_γ⟩ → |γ⟩ ⊗ |γ⟩` with the excited manifold as the ancilla.
///
/// Fails with [`Error::DomainViolation`] when the photon has weight on a
/// component whose mapped transition is forbidden.
pub fn stimulated_clone(photon: &Ket, system: &AtomicSystem, map: &ModeMap) -> Result<CloneReport> {
    let ancilla = adaptive_ancilla(photon, system, map)?;
    let basis = manifold_basis(map)?;
    let mut report = cloner::clone(photon, &basis)?;
    report.ancilla = ancilla;
    Ok(report)
}

/// Atomic state before spontaneous decay.
#[derive(Clone, Debug)]
pub enum ExcitedEnsemble {
    /// Equal-weight mixture over every excited level.
    Isotropic,
    /// A pure state over the excited manifold, in the system's level order.
    Pure(Ket),
    Mixed(DensityMatrix),
}

/// Polarization state of a spontaneously emitted photon.
///
/// The vacuum weighs every mode equally, so the emitted state is
/// `K ρ_atom K† / Tr(…)` with `K[q, e] = M(e, q)`. For any diagonal
/// (ensemble-averaged) atomic state this is `Σ_q w_q |q⟩⟨q|`,
/// `w_q ∝ Σ_e p_e |M(e, q)|²`.
pub fn spontaneous_emission_output(
    system: &AtomicSystem,
    ensemble: &ExcitedEnsemble,
    modes: &[PolarizationMode],
) -> Result<DensityMatrix> {
    if modes.is_empty() {
        return Err(Error::InvalidInput("at least one polarization mode is required".into()));
    }
    let n = system.excited().len();
    let rho_atom = match ensemble {
        ExcitedEnsemble::Isotropic => DensityMatrix::maximally_mixed(n)?,
        ExcitedEnsemble::Pure(k) => {
            if k.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: k.dim() });
            }
            DensityMatrix::pure(k)?
        }
        ExcitedEnsemble::Mixed(rho) => {
            if rho.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: rho.dim() });
            }
            rho.clone()
        }
    };
    let mut k = OperatorMatrix::zeros(modes.len(), n);
    for (qi, mode) in modes.iter().enumerate() {
        for (ei, e) in system.excited().iter().enumerate() {
            k[(qi, ei)] = amplitude_by_label(system, &e.label, mode)?;
        }
    }
    let unnormalized = k.matmul(rho_atom.matrix())?.matmul(&k.adjoint())?;
    let total = unnormalized.trace().re;
    if total <= 1e-24 {
        return Err(Error::NoDecayChannel);
    }
    DensityMatrix::new(unnormalized.scale(Complex64::new(1.0 / total, 0.0)))
}
