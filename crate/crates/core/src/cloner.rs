//! State-dependent copying.
//!
//! Given orthonormal bases `{|ψᵢ⟩}` of the system and `{|A_ψᵢ⟩}` of the
//! ancilla, the preparation map `V|ψᵢ⟩ = |A_ψᵢ⟩` and the copy unitary
//! `U(|ψᵢ⟩ ⊗ |A_ψⱼ⟩) = |ψᵢ⟩ ⊗ |ψⱼ⟩` together send `|Ψ⟩ ⊗ V|Ψ⟩` to
//! `|Ψ⟩ ⊗ |Ψ⟩` for every `|Ψ⟩`. Structurally `U = I ⊗ V†`: nothing in `U`
//! depends on the input, all of the copying lives in the ancilla preparation.

use log::warn;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qstate::{apply, fidelity, inner_product, tensor_product, Ket, OperatorMatrix, DEFAULT_TOL};

/// Inputs whose norm deviates from one by more than this are renormalized with a warning.
pub const RENORMALIZE_WARN_TOL: f64 = 1e-6;

/// Paired orthonormal bases of the system and ancilla spaces, both of dimension `n`.
#[derive(Clone, Debug)]
pub struct CopyBasis {
    system: Vec<Ket>,
    ancilla: Vec<Ket>,
}

impl CopyBasis {
    pub fn new(system: Vec<Ket>, ancilla: Vec<Ket>) -> Result<Self> {
        Self::with_tolerance(system, ancilla, DEFAULT_TOL)
    }

    pub fn with_tolerance(system: Vec<Ket>, ancilla: Vec<Ket>, tol: f64) -> Result<Self> {
        let n = system.len();
        if n == 0 {
            return Err(Error::InvalidDimension("copy basis needs at least one vector".into()));
        }
        if ancilla.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: ancilla.len() });
        }
        for k in system.iter().chain(&ancilla) {
            if k.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: k.dim() });
            }
        }
        check_orthonormal("system", &system, tol)?;
        check_orthonormal("ancilla", &ancilla, tol)?;
        Ok(CopyBasis { system, ancilla })
    }

    /// System and ancilla both in the computational basis (`V = I`).
    pub fn computational(n: usize) -> Result<Self> {
        let basis = computational_kets("ψ", n)?;
        let ancilla = computational_kets("A", n)?;
        Self::new(basis, ancilla)
    }

    /// Computational system basis, ancilla basis given by the columns of `w`.
    pub fn from_ancilla_unitary(w: &OperatorMatrix) -> Result<Self> {
        if !w.is_square() {
            return Err(Error::InvalidDimension("ancilla unitary must be square".into()));
        }
        let n = w.dim_in();
        let ancilla = (0..n).map(|j| Ket::new(format!("A{}", j + 1), w.column(j))).collect::<Result<Vec<_>>>()?;
        Self::new(computational_kets("ψ", n)?, ancilla)
    }

    pub fn dim(&self) -> usize {
        self.system.len()
    }

    pub fn system(&self) -> &[Ket] {
        &self.system
    }

    pub fn ancilla(&self) -> &[Ket] {
        &self.ancilla
    }
}

fn computational_kets(prefix: &str, n: usize) -> Result<Vec<Ket>> {
    (0..n).map(|i| Ket::basis(format!("{prefix}{}", i + 1), n, i)).collect()
}

fn check_orthonormal(which: &'static str, kets: &[Ket], tol: f64) -> Result<()> {
    let mut deviation = 0.0f64;
    for (i, a) in kets.iter().enumerate() {
        for (j, b) in kets.iter().enumerate() {
            let expected = if i == j { 1.0 } else { 0.0 };
            deviation = deviation.max((inner_product(a, b)? - expected).norm());
        }
    }
    if deviation < tol {
        Ok(())
    } else {
        Err(Error::NotOrthonormal { which, deviation })
    }
}

/// `V = Σᵢ |A_ψᵢ⟩⟨ψᵢ|`.
pub fn ancilla_prep_map(basis: &CopyBasis) -> OperatorMatrix {
    let n = basis.dim();
    basis
        .system
        .iter()
        .zip(&basis.ancilla)
        .fold(OperatorMatrix::zeros(n, n), |acc, (psi, a)| acc.add(&OperatorMatrix::outer(a, psi)).expect("same shape"))
}

/// The copy unitary `U = I ⊗ V†` on the `n²`-dimensional product space.
pub fn build_copy_unitary(basis: &CopyBasis) -> OperatorMatrix {
    let v = ancilla_prep_map(basis);
    OperatorMatrix::identity(basis.dim()).kron(&v.adjoint())
}

/// `|A_Ψ⟩ = V|Ψ⟩`.
pub fn prepare_ancilla(input: &Ket, basis: &CopyBasis) -> Result<Ket> {
    let a = apply(&ancilla_prep_map(basis), input)?;
    Ok(a.with_label(format!("A_{}", input.label())))
}

#[derive(Clone, Debug, Serialize)]
pub struct CloneReport {
    pub input: Ket,
    pub ancilla: Ket,
    pub output: Ket,
    pub target: Ket,
    pub fidelity: f64,
    /// True when the ancilla was prepared as `V|Ψ⟩`.
    pub matched: bool,
}

impl CloneReport {
    /// Recompute `|⟨target|output⟩|²` from the stored kets.
    pub fn recompute_fidelity(&self) -> Result<f64> {
        fidelity(&self.target, &self.output)
    }
}

fn normalized_input(input: &Ket, n: usize) -> Result<Ket> {
    if input.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: input.dim() });
    }
    let norm = input.norm();
    if (norm - 1.0).abs() > RENORMALIZE_WARN_TOL {
        warn!("input `{}` has norm {norm}; renormalizing before cloning", input.label());
    }
    input.normalize()
}

fn run_copy(input: Ket, ancilla: Ket, basis: &CopyBasis, matched: bool) -> Result<CloneReport> {
    let u = build_copy_unitary(basis);
    let output = apply(&u, &tensor_product(&input, &ancilla))?.with_label("out");
    let target = tensor_product(&input, &input);
    let fidelity = fidelity(&target, &output)?;
    Ok(CloneReport { input, ancilla, output, target, fidelity, matched })
}

/// Copy `input` using the matched ancilla `V|Ψ⟩`.
pub fn clone(input: &Ket, basis: &CopyBasis) -> Result<CloneReport> {
    let input = normalized_input(input, basis.dim())?;
    let ancilla = prepare_ancilla(&input, basis)?;
    run_copy(input, ancilla, basis, true)
}

/// Apply the same `U` with the ancilla frozen at `|A_ψₖ⟩` regardless of the input.
///
/// The output is `|Ψ⟩ ⊗ |ψₖ⟩`, so the fidelity against `|Ψ⟩ ⊗ |Ψ⟩` is
/// `|⟨Ψ|ψₖ⟩|²`.
pub fn clone_with_fixed_ancilla(input: &Ket, fixed_ancilla_index: usize, basis: &CopyBasis) -> Result<CloneReport> {
    let n = basis.dim();
    if fixed_ancilla_index >= n {
        return Err(Error::IndexOutOfRange { index: fixed_ancilla_index, dim: n });
    }
    let input = normalized_input(input, n)?;
    let ancilla = basis.ancilla[fixed_ancilla_index].clone();
    run_copy(input, ancilla, basis, false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WitnessVerdict {
    Consistent,
    Contradiction,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct OverlapWitness {
    pub overlap: Complex64,
    pub residual: f64,
    pub verdict: WitnessVerdict,
}

/// Overlap test behind the no-cloning theorem.
///
/// If one unitary with a fixed ancilla copied two states of overlap `s`,
/// unitarity would force `s = s²`. Only `s ∈ {0, 1}` satisfies it. The
/// caller is expected to pass `|s| ≤ 1`.
pub fn no_cloning_overlap_witness(s: Complex64) -> OverlapWitness {
    no_cloning_overlap_witness_with_tol(s, DEFAULT_TOL)
}

pub fn no_cloning_overlap_witness_with_tol(s: Complex64, tol: f64) -> OverlapWitness {
    let residual = (s - s * s).norm();
    let verdict = if residual < tol { WitnessVerdict::Consistent } else { WitnessVerdict::Contradiction };
    OverlapWitness { overlap: s, residual, verdict }
}
