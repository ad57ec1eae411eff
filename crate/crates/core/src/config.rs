//! TOML atomic-system configuration. See `docs/config-schema.md`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::emission::{AtomicLevel, AtomicSystem, ModeMap, PolarizationMode};
use crate::error::{Error, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LevelEntry {
    label: String,
    l: u32,
    m: i32,
    #[serde(default)]
    energy: f64,
    radial_factor: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModeEntry {
    mode: String,
    level: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    ground: LevelEntry,
    excited: Vec<LevelEntry>,
    #[serde(default)]
    mode_map: Vec<ModeEntry>,
}

/// A parsed configuration: the atom and, when given, an explicit mode map.
#[derive(Clone, Debug)]
pub struct SystemConfig {
    pub system: AtomicSystem,
    pub mode_map: Option<ModeMap>,
}

impl SystemConfig {
    /// The given mode map, or one derived from the selection rules over `[σ−, π, σ+]`.
    pub fn mode_map_or_auto(&self) -> Result<ModeMap> {
        match &self.mode_map {
            Some(m) => Ok(m.clone()),
            None => ModeMap::by_selection_rules(&self.system, &PolarizationMode::standard_modes()),
        }
    }
}

pub fn parse_config(text: &str) -> Result<SystemConfig> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    if raw.ground.radial_factor.is_some() {
        return Err(Error::InvalidSystem("the ground level takes no radial_factor".into()));
    }
    let ground = AtomicLevel::new(raw.ground.label, raw.ground.l, raw.ground.m, raw.ground.energy)?;
    let mut radial = BTreeMap::new();
    let mut excited = Vec::with_capacity(raw.excited.len());
    for e in raw.excited {
        radial.insert(e.label.clone(), e.radial_factor.unwrap_or(1.0));
        excited.push(AtomicLevel::new(e.label, e.l, e.m, e.energy)?);
    }
    if radial.len() != excited.len() {
        return Err(Error::InvalidSystem("duplicate excited level label".into()));
    }
    let system = AtomicSystem::new(ground, excited, radial)?;
    let mode_map = if raw.mode_map.is_empty() {
        None
    } else {
        let entries = raw
            .mode_map
            .into_iter()
            .map(|m| Ok((PolarizationMode::from_name(&m.mode)?, m.level)))
            .collect::<Result<Vec<_>>>()?;
        Some(ModeMap::new(&system, entries)?)
    };
    Ok(SystemConfig { system, mode_map })
}

pub fn load_config(path: &Path) -> Result<SystemConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}
