//! Canned experiments behind the CLI. Each run is a pure function of its
//! [`ExperimentSpec`]: the same spec and seed always produce the same bytes.

mod report;
mod state;

pub use report::{fmt_complex, fmt_real, Check, OutputFormat, Report, Table, REPORT_SCHEMA_VERSION};
pub use state::{parse_complex, resolve_or_random, StateSpec};

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::cloner::{
    self, build_copy_unitary, clone_with_fixed_ancilla, no_cloning_overlap_witness, CloneReport, CopyBasis,
    WitnessVerdict,
};
use crate::config::{load_config, SystemConfig};
use crate::emission::{
    self, clonable_domain, spontaneous_emission_output, stimulated_clone, AtomicSystem, ExcitedEnsemble,
    PolarizationMode,
};
use crate::error::{Error, Result};
use crate::qstate::{fidelity, inner_product, DensityMatrix, Ket};
use crate::random::{random_unitary, seeded_rng};
use crate::symmetry::{contains, contains_weight, IrrepLabel};

pub const FIDELITY_TOL: f64 = 1e-10;
pub const UNITARITY_TOL: f64 = 1e-12;
pub const PATH_AGREEMENT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentKind {
    CloneDemo,
    FixedAncilla,
    NoCloningWitness,
    SelectionRules,
    Domain,
    StimulatedClone,
    Spontaneous,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 7] = [
        ExperimentKind::CloneDemo,
        ExperimentKind::FixedAncilla,
        ExperimentKind::NoCloningWitness,
        ExperimentKind::SelectionRules,
        ExperimentKind::Domain,
        ExperimentKind::StimulatedClone,
        ExperimentKind::Spontaneous,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::CloneDemo => "clone-demo",
            ExperimentKind::FixedAncilla => "fixed-ancilla",
            ExperimentKind::NoCloningWitness => "no-cloning-witness",
            ExperimentKind::SelectionRules => "selection-rules",
            ExperimentKind::Domain => "domain",
            ExperimentKind::StimulatedClone => "stimulated-clone",
            ExperimentKind::Spontaneous => "spontaneous",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown experiment `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    pub config: Option<PathBuf>,
    pub state: Option<StateSpec>,
    pub seed: u64,
    /// Dimension of randomly drawn states when `state` does not fix it.
    pub dim: usize,
    /// Fixed ancilla index for `fixed-ancilla` (0-based).
    pub index: usize,
    /// Draw a seeded random ancilla basis instead of the computational one.
    pub random_basis: bool,
    /// Single overlap for `no-cloning-witness`; a sweep over `[0, 1]` otherwise.
    pub overlap: Option<Complex64>,
    pub format: OutputFormat,
}

impl ExperimentSpec {
    pub fn new(kind: ExperimentKind) -> Self {
        ExperimentSpec {
            kind,
            config: None,
            state: None,
            seed: 0,
            dim: 2,
            index: 0,
            random_basis: false,
            overlap: None,
            format: OutputFormat::Json,
        }
    }
}

/// Execute the experiment and build its report.
pub fn run(spec: &ExperimentSpec) -> Result<Report> {
    match spec.kind {
        ExperimentKind::CloneDemo => run_clone(spec, false),
        ExperimentKind::FixedAncilla => run_clone(spec, true),
        ExperimentKind::NoCloningWitness => run_witness(spec),
        ExperimentKind::SelectionRules => run_selection_rules(spec),
        ExperimentKind::Domain => run_domain(spec),
        ExperimentKind::StimulatedClone => run_stimulated(spec),
        ExperimentKind::Spontaneous => run_spontaneous(spec),
    }
}

/// `run` followed by rendering in the spec's format.
pub fn run_to_string(spec: &ExperimentSpec) -> Result<String> {
    run(spec)?.render(spec.format)
}

fn load_system(spec: &ExperimentSpec) -> Result<SystemConfig> {
    match &spec.config {
        Some(path) => load_config(path),
        None => Ok(SystemConfig { system: AtomicSystem::hydrogen_like(), mode_map: None }),
    }
}

fn config_echo(spec: &ExperimentSpec) -> Value {
    match &spec.config {
        Some(p) => json!(p.file_name().map(|f| f.to_string_lossy().into_owned())),
        None => json!("builtin:hydrogen-like"),
    }
}

fn state_echo(spec: &ExperimentSpec) -> Value {
    match &spec.state {
        Some(s) => json!(s.to_string()),
        None => json!("random"),
    }
}

fn ket_rows(table: &mut Table, labels: &[String], output: &Ket, target: &Ket) {
    for (i, label) in labels.iter().enumerate() {
        table.push(vec![label.clone(), fmt_complex(output.amplitude(i)), fmt_complex(target.amplitude(i))]);
    }
}

fn pair_labels(a: &[String], b: &[String]) -> Vec<String> {
    a.iter().flat_map(|x| b.iter().map(move |y| format!("{x}⊗{y}"))).collect()
}

fn run_clone(spec: &ExperimentSpec, fixed: bool) -> Result<Report> {
    let dim = spec.state.as_ref().and_then(StateSpec::dim).unwrap_or(spec.dim);
    if dim < 1 {
        return Err(Error::InvalidDimension("dimension must be positive".into()));
    }
    let mut rng = seeded_rng(spec.seed);
    let basis = if spec.random_basis {
        CopyBasis::from_ancilla_unitary(&random_unitary(dim, &mut rng))?
    } else {
        CopyBasis::computational(dim)?
    };
    let input = resolve_or_random(spec.state.as_ref(), dim, &mut rng)?;
    let report: CloneReport =
        if fixed { clone_with_fixed_ancilla(&input, spec.index, &basis)? } else { cloner::clone(&input, &basis)? };
    let u = build_copy_unitary(&basis);
    let defect = u.unitarity_defect();

    let mut checks = vec![Check::new("copy_unitary_unitarity", defect, 0.0, UNITARITY_TOL)];
    let mut outputs = json!({
        "ancilla": report.ancilla,
        "output": report.output,
        "target": report.target,
        "fidelity": report.fidelity,
        "matched": report.matched,
        "unitarity_defect": defect,
    });
    if fixed {
        let overlap = fidelity(&report.input, &basis.system()[spec.index])?;
        outputs["expected_fidelity"] = json!(overlap);
        checks.push(Check::new("fidelity_equals_overlap", report.fidelity, overlap, FIDELITY_TOL));
    } else {
        checks.push(Check::new("clone_fidelity", report.fidelity, 1.0, FIDELITY_TOL));
    }

    let names: Vec<String> = basis.system().iter().map(|k| k.label().to_string()).collect();
    let mut table = Table::new(&["component", "output", "target"]);
    ket_rows(&mut table, &pair_labels(&names, &names), &report.output, &report.target);

    let mut inputs = json!({
        "dim": dim,
        "state_spec": state_echo(spec),
        "state": report.input,
        "basis": if spec.random_basis { "random" } else { "computational" },
    });
    if fixed {
        inputs["fixed_ancilla_index"] = json!(spec.index);
    }
    Ok(Report::new(spec.kind.name(), spec.seed, inputs, outputs, checks, table))
}

fn run_witness(spec: &ExperimentSpec) -> Result<Report> {
    let overlaps: Vec<Complex64> = match spec.overlap {
        Some(s) => {
            if s.norm() > 1.0 + 1e-12 {
                return Err(Error::InvalidInput(format!("overlap {s} has modulus above 1")));
            }
            vec![s]
        }
        None => (0..=100).map(|k| Complex64::new(f64::from(k) / 100.0, 0.0)).collect(),
    };
    let mut table = Table::new(&["overlap", "residual", "verdict"]);
    let mut rows = Vec::new();
    let mut wrong = 0usize;
    for s in overlaps {
        let w = no_cloning_overlap_witness(s);
        let expected = if s == Complex64::new(0.0, 0.0) || s == Complex64::new(1.0, 0.0) {
            WitnessVerdict::Consistent
        } else {
            WitnessVerdict::Contradiction
        };
        if w.verdict != expected {
            wrong += 1;
        }
        let verdict = match w.verdict {
            WitnessVerdict::Consistent => "CONSISTENT",
            WitnessVerdict::Contradiction => "CONTRADICTION",
        };
        table.push(vec![fmt_complex(s), fmt_real(w.residual), verdict.to_string()]);
        rows.push(w);
    }
    let inputs = json!({
        "overlap": spec.overlap,
        "sweep": spec.overlap.is_none(),
    });
    let outputs = json!({ "witnesses": rows });
    let checks = vec![Check::new("verdict_mismatches", wrong as f64, 0.0, 0.0)];
    Ok(Report::new(spec.kind.name(), spec.seed, inputs, outputs, checks, table))
}

fn run_selection_rules(spec: &ExperimentSpec) -> Result<Report> {
    let cfg = load_system(spec)?;
    let sys = &cfg.system;
    let g = sys.ground();
    let photon = IrrepLabel::photon_dipole();
    let mut table = Table::new(&["transition", "l_e", "m_e", "mode", "q", "amplitude", "allowed", "irrep_contains"]);
    let mut rows = Vec::new();
    let mut component_mismatches = 0usize;
    let mut irrep_violations = 0usize;
    for e in sys.excited() {
        let irrep_ok = contains(g.irrep(), (e.irrep(), photon));
        let mut any_allowed = false;
        for mode in PolarizationMode::standard_modes() {
            let amp = emission::transition_amplitude(sys, e, &mode)?;
            let allowed = amp.norm() > emission::AMPLITUDE_TOL;
            any_allowed |= allowed;
            let weight_ok = contains_weight((g.irrep(), 2 * g.m), (e.irrep(), 2 * e.m), (photon, 2 * mode.q()));
            if allowed != weight_ok {
                component_mismatches += 1;
            }
            let transition = format!("{}->{}", e.label, g.label);
            table.push(vec![
                transition.clone(),
                e.l.to_string(),
                e.m.to_string(),
                mode.label().to_string(),
                mode.q().to_string(),
                fmt_real(amp.re),
                allowed.to_string(),
                irrep_ok.to_string(),
            ]);
            rows.push(json!({
                "transition": transition,
                "excited": e.label,
                "l_e": e.l,
                "m_e": e.m,
                "mode": mode.label(),
                "q": mode.q(),
                "amplitude": amp,
                "allowed": allowed,
                "irrep_contains": irrep_ok,
                "weight_contains": weight_ok,
            }));
        }
        // Per level only one direction is exact: a level can be dark for the
        // given m values even when the irreps couple.
        if any_allowed && !irrep_ok {
            irrep_violations += 1;
        }
    }
    let inputs = json!({
        "config": config_echo(spec),
        "ground": g,
        "excited": sys.excited(),
        "radial_factors": sys.radial_factors(),
    });
    let outputs = json!({ "rows": rows });
    let checks = vec![
        Check::new("component_biconditional_mismatches", component_mismatches as f64, 0.0, 0.0),
        Check::new("irrep_forbidden_but_allowed", irrep_violations as f64, 0.0, 0.0),
    ];
    Ok(Report::new(spec.kind.name(), spec.seed, inputs, outputs, checks, table))
}

fn run_domain(spec: &ExperimentSpec) -> Result<Report> {
    let cfg = load_system(spec)?;
    let d = clonable_domain(&cfg.system);
    let mut gram_defect = 0.0f64;
    for (i, a) in d.basis.iter().enumerate() {
        for (j, b) in d.basis.iter().enumerate() {
            let expected = if i == j { 1.0 } else { 0.0 };
            gram_defect = gram_defect.max((inner_product(a, b)? - expected).norm());
        }
    }
    let mut table = Table::new(&["mode", "q", "in_domain"]);
    for m in PolarizationMode::standard_modes() {
        table.push(vec![m.label().to_string(), m.q().to_string(), d.contains_q(m.q()).to_string()]);
    }
    let inputs = json!({
        "config": config_echo(spec),
        "ground": cfg.system.ground(),
        "excited": cfg.system.excited(),
    });
    let outputs = json!({
        "dimension": d.dimension(),
        "modes": d.modes,
        "basis": d.basis,
    });
    let checks = vec![Check::new("basis_orthonormality", gram_defect, 0.0, UNITARITY_TOL)];
    Ok(Report::new(spec.kind.name(), spec.seed, inputs, outputs, checks, table))
}

fn run_stimulated(spec: &ExperimentSpec) -> Result<Report> {
    let cfg = load_system(spec)?;
    let map = cfg.mode_map_or_auto()?;
    let mut rng = seeded_rng(spec.seed);
    let photon = resolve_or_random(spec.state.as_ref(), map.len(), &mut rng)?.with_label("γ");
    let report = stimulated_clone(&photon, &cfg.system, &map)?;
    let abstract_path = cloner::clone(&photon, &CopyBasis::computational(map.len())?)?;
    let agreement = report.output.max_abs_diff(&abstract_path.output)?;

    let mode_names: Vec<String> = map.modes().iter().map(|m| m.label().to_string()).collect();
    let mut table = Table::new(&["component", "output", "target"]);
    ket_rows(&mut table, &pair_labels(&mode_names, &mode_names), &report.output, &report.target);

    let inputs = json!({
        "config": config_echo(spec),
        "state_spec": state_echo(spec),
        "photon": report.input,
        "mode_map": map.entries().map(|(m, l)| json!({"mode": m.label(), "level": l})).collect::<Vec<_>>(),
    });
    let outputs = json!({
        "ancilla": report.ancilla,
        "output": report.output,
        "target": report.target,
        "fidelity": report.fidelity,
        "abstract_path_max_diff": agreement,
        "domain": clonable_domain(&cfg.system).labels(),
    });
    let checks = vec![
        Check::new("clone_fidelity", report.fidelity, 1.0, FIDELITY_TOL),
        Check::new("abstract_path_agreement", agreement, 0.0, PATH_AGREEMENT_TOL),
    ];
    Ok(Report::new(spec.kind.name(), spec.seed, inputs, outputs, checks, table))
}

fn run_spontaneous(spec: &ExperimentSpec) -> Result<Report> {
    let cfg = load_system(spec)?;
    let sys = &cfg.system;
    let n = sys.excited().len();
    let ensemble = match &spec.state {
        Some(s) => ExcitedEnsemble::Pure(s.resolve(n)?),
        None => ExcitedEnsemble::Isotropic,
    };
    let modes = PolarizationMode::standard_modes();
    let rho = spontaneous_emission_output(sys, &ensemble, &modes)?;
    let m = rho.matrix();

    let mut table = Table::new(&["row", "sigma-", "pi", "sigma+"]);
    for (i, mode) in modes.iter().enumerate() {
        let mut row = vec![mode.label().to_string()];
        row.extend((0..modes.len()).map(|j| fmt_complex(m[(i, j)])));
        table.push(row);
    }
    let mixed_dev = m.max_abs_diff(DensityMatrix::maximally_mixed(modes.len())?.matrix());
    let mut checks = vec![
        Check::new("trace", rho.trace().re, 1.0, FIDELITY_TOL),
        Check::new("hermiticity_defect", m.hermiticity_defect(), 0.0, FIDELITY_TOL),
    ];
    if matches!(ensemble, ExcitedEnsemble::Isotropic) && spec.config.is_none() {
        checks.push(Check::new("maximally_mixed_deviation", mixed_dev, 0.0, FIDELITY_TOL));
    }
    let inputs = json!({
        "config": config_echo(spec),
        "ensemble": match &ensemble {
            ExcitedEnsemble::Isotropic => json!("isotropic"),
            ExcitedEnsemble::Pure(k) => json!(k),
            ExcitedEnsemble::Mixed(_) => json!("mixed"),
        },
        "excited": sys.excited(),
        "modes": modes,
    });
    let rows: Vec<Vec<Complex64>> = m.rows().map(<[Complex64]>::to_vec).collect();
    let outputs = json!({
        "density_matrix": rows,
        "purity": rho.purity(),
        "populations": (0..modes.len()).map(|i| m[(i, i)].re).collect::<Vec<_>>(),
        "maximally_mixed_deviation": mixed_dev,
    });
    Ok(Report::new(spec.kind.name(), spec.seed, inputs, outputs, checks, table))
}
