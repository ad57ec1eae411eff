use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A photon polarization mode tied to one spherical component `q` of the
/// dipole coupling: `e_0 = ẑ`, `e_{±1} = ∓(x̂ ± iŷ)/√2`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarizationMode {
    label: String,
    q: i32,
    cartesian: [Complex64; 3],
}

/// Cartesian components of the spherical unit vector `e_q`.
pub fn spherical_unit_vector(q: i32) -> Option<[Complex64; 3]> {
    let s = FRAC_1_SQRT_2;
    let c = Complex64::new;
    match q {
        -1 => Some([c(s, 0.0), c(0.0, -s), c(0.0, 0.0)]),
        0 => Some([c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]),
        1 => Some([c(-s, 0.0), c(0.0, -s), c(0.0, 0.0)]),
        _ => None,
    }
}

impl PolarizationMode {
    pub fn spherical(q: i32) -> Result<Self> {
        let cartesian =
            spherical_unit_vector(q).ok_or_else(|| Error::InvalidMode(format!("q = {q} not in {{-1, 0, +1}}")))?;
        Ok(PolarizationMode { label: default_label(q).to_string(), q, cartesian })
    }

    pub fn sigma_minus() -> Self {
        Self::spherical(-1).expect("valid")
    }

    pub fn pi() -> Self {
        Self::spherical(0).expect("valid")
    }

    pub fn sigma_plus() -> Self {
        Self::spherical(1).expect("valid")
    }

    /// `[σ−, π, σ+]`, the order used for the 3-dimensional polarization space.
    pub fn standard_modes() -> Vec<Self> {
        vec![Self::sigma_minus(), Self::pi(), Self::sigma_plus()]
    }

    /// Parse `sigma-`, `pi`, `sigma+` (also `q=-1`, `q=0`, `q=+1`).
    pub fn from_name(name: &str) -> Result<Self> {
        match name.trim() {
            "sigma-" | "σ-" | "σ−" | "q=-1" => Ok(Self::sigma_minus()),
            "pi" | "π" | "q=0" => Ok(Self::pi()),
            "sigma+" | "σ+" | "q=+1" | "q=1" => Ok(Self::sigma_plus()),
            other => Err(Error::InvalidMode(format!("unknown polarization `{other}`"))),
        }
    }

    /// Build from an explicit Cartesian vector, which must be a unit vector
    /// equal to `e_q` up to a global phase.
    pub fn from_cartesian(label: impl Into<String>, q: i32, cartesian: [Complex64; 3]) -> Result<Self> {
        let reference =
            spherical_unit_vector(q).ok_or_else(|| Error::InvalidMode(format!("q = {q} not in {{-1, 0, +1}}")))?;
        let norm: f64 = cartesian.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidMode(format!("polarization vector has norm {norm}")));
        }
        let overlap: Complex64 = reference.iter().zip(&cartesian).map(|(a, b)| a.conj() * b).sum();
        if (overlap.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidMode(format!("vector is not aligned with e_{q}")));
        }
        Ok(PolarizationMode { label: label.into(), q, cartesian })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn q(&self) -> i32 {
        self.q
    }

    pub fn cartesian(&self) -> &[Complex64; 3] {
        &self.cartesian
    }
}

impl Serialize for PolarizationMode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.label)
    }
}

fn default_label(q: i32) -> &'static str {
    match q {
        -1 => "sigma-",
        0 => "pi",
        _ => "sigma+",
    }
}
