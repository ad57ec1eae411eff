//! Dense finite-dimensional Hilbert-space arithmetic.
//!
//! Composite spaces use first-factor-major Kronecker ordering throughout:
//! index `i * d_b + j` of `A ⊗ B` holds the pair `(i, j)`.

mod density;
mod ket;
mod operator;

pub use density::{partial_trace, DensityMatrix, Subsystem};
pub use ket::{fidelity, inner_product, tensor_product, Ket};
pub use operator::{apply, OperatorMatrix};

use num_complex::Complex64;

/// Default absolute tolerance for numerical checks.
pub const DEFAULT_TOL: f64 = 1e-10;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
