use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symmetry::{IrrepLabel, Parity};

/// One `|l m⟩` atomic level. Parity is always `(−1)^l`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomicLevel {
    pub label: String,
    pub l: u32,
    pub m: i32,
    #[serde(default)]
    pub energy: f64,
}

impl AtomicLevel {
    pub fn new(label: impl Into<String>, l: u32, m: i32, energy: f64) -> Result<Self> {
        let label = label.into();
        if m.unsigned_abs() > l {
            return Err(Error::InvalidSystem(format!("level `{label}` has |m| = {} > l = {l}", m.abs())));
        }
        if !energy.is_finite() {
            return Err(Error::InvalidSystem(format!("level `{label}` has non-finite energy")));
        }
        Ok(AtomicLevel { label, l, m, energy })
    }

    pub fn parity(&self) -> Parity {
        Parity::of_orbital(self.l)
    }

    pub fn irrep(&self) -> IrrepLabel {
        IrrepLabel::orbital(self.l)
    }
}

/// A ground level plus a manifold of excited levels, each dipole-coupled
/// to the ground level through a positive radial factor.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomicSystem {
    ground: AtomicLevel,
    excited: Vec<AtomicLevel>,
    radial_factors: BTreeMap<String, f64>,
}

impl AtomicSystem {
    pub fn new(ground: AtomicLevel, excited: Vec<AtomicLevel>, radial_factors: BTreeMap<String, f64>) -> Result<Self> {
        if excited.is_empty() {
            return Err(Error::InvalidSystem("excited manifold is empty".into()));
        }
        let mut seen = BTreeSet::new();
        seen.insert(ground.label.as_str());
        for e in &excited {
            if !seen.insert(e.label.as_str()) {
                return Err(Error::InvalidSystem(format!("duplicate level label `{}`", e.label)));
            }
        }
        for e in &excited {
            match radial_factors.get(&e.label) {
                Some(r) if *r > 0.0 && r.is_finite() => {}
                Some(r) => {
                    return Err(Error::InvalidSystem(format!(
                        "radial factor for `{}` must be positive, got {r}",
                        e.label
                    )))
                }
                None => return Err(Error::InvalidSystem(format!("missing radial factor for `{}`", e.label))),
            }
        }
        if let Some(extra) = radial_factors.keys().find(|k| !excited.iter().any(|e| &e.label == *k)) {
            return Err(Error::InvalidSystem(format!("radial factor given for unknown level `{extra}`")));
        }
        Ok(AtomicSystem { ground, excited, radial_factors })
    }

    /// All radial factors set to one.
    pub fn with_unit_radial(ground: AtomicLevel, excited: Vec<AtomicLevel>) -> Result<Self> {
        let radial = excited.iter().map(|e| (e.label.clone(), 1.0)).collect();
        Self::new(ground, excited, radial)
    }

    /// `1s` ground state with the full `2p` manifold (`m = −1, 0, +1`).
    pub fn s_to_p_manifold() -> Self {
        let ground = AtomicLevel::new("1s", 0, 0, 0.0).expect("valid");
        let excited = (-1..=1).map(|m| AtomicLevel::new(p_label(2, m), 1, m, 1.0).expect("valid")).collect();
        Self::with_unit_radial(ground, excited).expect("valid")
    }

    /// The `2p` manifold plus a dipole-dark `2s` level.
    pub fn hydrogen_like() -> Self {
        let mut excited: Vec<AtomicLevel> = Self::s_to_p_manifold().excited;
        excited.push(AtomicLevel::new("2s", 0, 0, 1.0).expect("valid"));
        Self::with_unit_radial(AtomicLevel::new("1s", 0, 0, 0.0).expect("valid"), excited).expect("valid")
    }

    pub fn ground(&self) -> &AtomicLevel {
        &self.ground
    }

    pub fn excited(&self) -> &[AtomicLevel] {
        &self.excited
    }

    pub fn excited_level(&self, label: &str) -> Result<&AtomicLevel> {
        self.excited.iter().find(|e| e.label == label).ok_or_else(|| Error::UnknownLevel(label.to_string()))
    }

    pub fn excited_index(&self, label: &str) -> Result<usize> {
        self.excited.iter().position(|e| e.label == label).ok_or_else(|| Error::UnknownLevel(label.to_string()))
    }

    pub fn radial_factor(&self, label: &str) -> Result<f64> {
        self.radial_factors.get(label).copied().ok_or_else(|| Error::UnknownLevel(label.to_string()))
    }

    pub fn radial_factors(&self) -> &BTreeMap<String, f64> {
        &self.radial_factors
    }
}

fn p_label(n: u32, m: i32) -> String {
    match m {
        0 => format!("{n}p0"),
        m if m > 0 => format!("{n}p+{m}"),
        m => format!("{n}p{m}"),
    }
}
