use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ket::Ket;
use super::operator::OperatorMatrix;
use super::DEFAULT_TOL;
use crate::error::{Error, Result};

/// Which factor of a bipartite space survives a partial trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

/// A validated density operator: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: OperatorMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: OperatorMatrix) -> Result<Self> {
        Self::with_tolerance(matrix, DEFAULT_TOL)
    }

    pub fn with_tolerance(matrix: OperatorMatrix, tol: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidDensity(format!(
                "matrix is {}x{}, not square",
                matrix.dim_out(),
                matrix.dim_in()
            )));
        }
        let herm = matrix.hermiticity_defect();
        if herm >= tol {
            return Err(Error::InvalidDensity(format!("not Hermitian (defect {herm:.3e})")));
        }
        let trace = matrix.trace();
        if (trace - 1.0).norm() >= tol {
            return Err(Error::InvalidDensity(format!("trace is {trace}, expected 1")));
        }
        let min_eig = min_eigenvalue(&matrix);
        if min_eig < -tol {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min_eig:.3e}")));
        }
        Ok(DensityMatrix { matrix })
    }

    /// `|k⟩⟨k|` for the normalized `k`.
    pub fn pure(k: &Ket) -> Result<Self> {
        let k = k.normalize()?;
        Self::new(OperatorMatrix::outer(&k, &k))
    }

    /// `Σ_i w_i |k_i⟩⟨k_i|` with weights renormalized to sum to one.
    pub fn mixture(components: &[(f64, Ket)]) -> Result<Self> {
        let dim =
            components.first().map(|(_, k)| k.dim()).ok_or_else(|| Error::InvalidDensity("empty mixture".into()))?;
        let total: f64 = components.iter().map(|(w, _)| *w).sum();
        if components.iter().any(|(w, _)| *w < 0.0) || total <= 0.0 {
            return Err(Error::InvalidDensity("mixture weights must be non-negative with positive sum".into()));
        }
        let mut acc = OperatorMatrix::zeros(dim, dim);
        for (w, k) in components {
            let k = k.normalize()?;
            acc = acc.add(&OperatorMatrix::outer(&k, &k).scale(Complex64::new(w / total, 0.0)))?;
        }
        Self::new(acc)
    }

    /// `I/dim`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension("dimension must be positive".into()));
        }
        Self::new(OperatorMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0)))
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim_in()
    }

    pub fn matrix(&self) -> &OperatorMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.matrix.matmul(&self.matrix).expect("square").trace().re
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev = hermitian_eigenvalues(&self.matrix);
        ev.sort_by(f64::total_cmp);
        ev
    }
}

fn hermitian_eigenvalues(m: &OperatorMatrix) -> Vec<f64> {
    let n = m.dim_in();
    let dm = DMatrix::from_fn(n, n, |i, j| m[(i, j)]);
    dm.symmetric_eigenvalues().iter().copied().collect()
}

fn min_eigenvalue(m: &OperatorMatrix) -> f64 {
    hermitian_eigenvalues(m).into_iter().fold(f64::INFINITY, f64::min)
}

/// Reduced state of `rho` on the kept factor of a `d_a × d_b` bipartition.
pub fn partial_trace(rho: &DensityMatrix, dims: (usize, usize), keep: Subsystem) -> Result<DensityMatrix> {
    let (d_a, d_b) = dims;
    if d_a == 0 || d_b == 0 || d_a * d_b != rho.dim() {
        return Err(Error::Factorization { dim: rho.dim(), d_a, d_b });
    }
    let m = rho.matrix();
    let out = match keep {
        Subsystem::A => {
            let mut r = OperatorMatrix::zeros(d_a, d_a);
            for i in 0..d_a {
                for j in 0..d_a {
                    r[(i, j)] = (0..d_b).map(|k| m[(i * d_b + k, j * d_b + k)]).sum();
                }
            }
            r
        }
        Subsystem::B => {
            let mut r = OperatorMatrix::zeros(d_b, d_b);
            for i in 0..d_b {
                for j in 0..d_b {
                    r[(i, j)] = (0..d_a).map(|k| m[(k * d_b + i, k * d_b + j)]).sum();
                }
            }
            r
        }
    };
    DensityMatrix::new(out)
}
