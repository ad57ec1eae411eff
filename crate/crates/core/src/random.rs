//! Seeded random states and unitaries.
//!
//! The generator is fixed so that fixtures can be reproduced elsewhere:
//!
//! 1. `ChaCha20Rng::seed_from_u64(seed)` (rand_chacha 0.3 semantics).
//! 2. A uniform draw is `(next_u64() >> 11) * 2^-53`, in `[0, 1)`.
//! 3. A standard normal draw uses Box–Muller on two uniforms `u1, u2`:
//!    `sqrt(-2 ln(1 - u1)) * cos(2π u2)`. Only the cosine branch is used.
//! 4. A random ket draws `re` then `im` for each amplitude in index order and
//!    normalizes the result.
//! 5. A random unitary draws a ket per column (unnormalized, same order) and
//!    orthonormalizes the columns left to right by modified Gram–Schmidt.

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::qstate::{Ket, OperatorMatrix};

pub type StateRng = ChaCha20Rng;

pub fn seeded_rng(seed: u64) -> StateRng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn standard_normal(rng: &mut impl RngCore) -> f64 {
    let u1 = uniform(rng);
    let u2 = uniform(rng);
    (-2.0 * (1.0 - u1).ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn gaussian_amplitudes(dim: usize, rng: &mut impl RngCore) -> Vec<Complex64> {
    (0..dim)
        .map(|_| {
            let re = standard_normal(rng);
            let im = standard_normal(rng);
            Complex64::new(re, im)
        })
        .collect()
}

/// Normalized ket with i.i.d. complex Gaussian amplitudes.
pub fn random_ket(dim: usize, rng: &mut impl RngCore) -> Ket {
    loop {
        let k = Ket::new("random", gaussian_amplitudes(dim, rng)).expect("dim > 0");
        if let Ok(n) = k.normalize() {
            return n;
        }
    }
}

/// Haar-like random unitary from Gram–Schmidt on Gaussian columns.
pub fn random_unitary(dim: usize, rng: &mut impl RngCore) -> OperatorMatrix {
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while columns.len() < dim {
        let mut v = gaussian_amplitudes(dim, rng);
        for c in &columns {
            let proj: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(c) {
                *x -= proj * y;
            }
        }
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        // Degenerate draws are astronomically unlikely; redraw rather than divide by ~0.
        if norm < 1e-8 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= norm);
        columns.push(v);
    }
    let kets: Vec<Ket> = columns.into_iter().map(|c| Ket::new("col", c).expect("dim > 0")).collect();
    OperatorMatrix::from_columns(&kets).expect("consistent columns")
}
