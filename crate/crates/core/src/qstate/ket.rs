use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ONE, ZERO};
use crate::error::{Error, Result};

/// A state vector in a labeled finite-dimensional Hilbert space.
///
/// Kets are immutable once built. Construction does not normalize; call
/// [`Ket::normalize`] when a unit vector is required.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ket {
    label: String,
    amplitudes: Vec<Complex64>,
}

impl Ket {
    pub fn new(label: impl Into<String>, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidDimension("a ket needs at least one amplitude".into()));
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite amplitude".into()));
        }
        Ok(Ket { label: label.into(), amplitudes })
    }

    /// Convenience constructor from real amplitudes.
    pub fn from_reals(label: impl Into<String>, amplitudes: &[f64]) -> Result<Self> {
        Ket::new(label, amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The computational basis vector `|index⟩` of a `dim`-dimensional space.
    pub fn basis(label: impl Into<String>, dim: usize, index: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension("dimension must be positive".into()));
        }
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(Ket { label: label.into(), amplitudes })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() < tol
    }

    pub fn normalize(&self) -> Result<Ket> {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(self.scale(Complex64::new(1.0 / norm, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> Ket {
        Ket { label: self.label.clone(), amplitudes: self.amplitudes.iter().map(|a| a * factor).collect() }
    }

    /// `self + other`, keeping the label of `self`.
    pub fn add(&self, other: &Ket) -> Result<Ket> {
        check_dims(self.dim(), other.dim())?;
        Ok(Ket {
            label: self.label.clone(),
            amplitudes: self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a + b).collect(),
        })
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Ket) -> Result<f64> {
        check_dims(self.dim(), other.dim())?;
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &Ket, tol: f64) -> bool {
        matches!(self.max_abs_diff(other), Ok(d) if d < tol)
    }
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        Err(Error::DimensionMismatch { expected, found })
    } else {
        Ok(())
    }
}

/// Kronecker product `a ⊗ b`, with `a`'s index major.
pub fn tensor_product(a: &Ket, b: &Ket) -> Ket {
    let amplitudes = a.amplitudes.iter().flat_map(|x| b.amplitudes.iter().map(move |y| x * y)).collect();
    Ket { label: format!("{}⊗{}", a.label, b.label), amplitudes }
}

/// `⟨a|b⟩`, antilinear in `a`.
pub fn inner_product(a: &Ket, b: &Ket) -> Result<Complex64> {
    check_dims(a.dim(), b.dim())?;
    Ok(a.amplitudes.iter().zip(&b.amplitudes).map(|(x, y)| x.conj() * y).sum())
}

/// `|⟨a|b⟩|²`. Insensitive to the global phase of either argument.
pub fn fidelity(a: &Ket, b: &Ket) -> Result<f64> {
    Ok(inner_product(a, b)?.norm_sqr())
}
