mod common;

use std::io::Write;

use common::{canned_specs, config_path, validate_report};
use num_complex::Complex64;
use stateclone::config::{load_config, parse_config};
use stateclone::experiment::{run, run_to_string, ExperimentKind, ExperimentSpec, OutputFormat, StateSpec};
use stateclone::Error;

fn json(spec: &ExperimentSpec) -> serde_json::Value {
    serde_json::from_str(&run_to_string(spec).unwrap()).unwrap()
}

fn amplitudes(v: &serde_json::Value) -> Vec<Complex64> {
    v["amplitudes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| Complex64::new(p[0].as_f64().unwrap(), p[1].as_f64().unwrap()))
        .collect()
}

#[test]
fn clone_demo_plus_reports_uniform_output() {
    let mut spec = ExperimentSpec::new(ExperimentKind::CloneDemo);
    spec.state = Some("0.7071067811865476,0.7071067811865476".parse().unwrap());
    let v = json(&spec);
    for a in amplitudes(&v["outputs"]["output"]) {
        assert!((a - Complex64::new(0.5, 0.0)).norm() < 1e-12);
    }
    assert!((v["outputs"]["fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert_eq!(v["passed"], true);
}

#[test]
fn fixed_ancilla_plus_reports_half() {
    let mut spec = ExperimentSpec::new(ExperimentKind::FixedAncilla);
    spec.state = Some(StateSpec::Plus);
    let v = json(&spec);
    assert!((v["outputs"]["fidelity"].as_f64().unwrap() - 0.5).abs() < 1e-10);
    assert_eq!(v["passed"], true);
}

#[test]
fn selection_rules_mark_2p_allowed_and_2s_forbidden() {
    let v = json(&ExperimentSpec::new(ExperimentKind::SelectionRules));
    let rows = v["outputs"]["rows"].as_array().unwrap();
    for q in -1..=1 {
        assert!(rows
            .iter()
            .any(|r| r["excited"].as_str().unwrap().starts_with("2p") && r["q"] == q && r["allowed"] == true));
    }
    let s_rows: Vec<_> = rows.iter().filter(|r| r["excited"] == "2s").collect();
    assert_eq!(s_rows.len(), 3);
    assert!(s_rows.iter().all(|r| r["allowed"] == false && r["irrep_contains"] == false));
}

#[test]
fn every_canned_report_is_schema_valid_and_passes() {
    for (name, spec) in canned_specs() {
        let report = run(&spec).unwrap();
        let v = serde_json::to_value(&report).unwrap();
        validate_report(&v).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(report.passed, "{name} has a failing check");
    }
}

#[test]
fn validator_rejects_tampered_reports() {
    let mut v = json(&ExperimentSpec::new(ExperimentKind::NoCloningWitness));
    v["checks"][0]["passed"] = serde_json::json!(false);
    assert!(validate_report(&v).is_err());
    let mut v = json(&ExperimentSpec::new(ExperimentKind::NoCloningWitness));
    v["extra"] = serde_json::json!(1);
    assert!(validate_report(&v).is_err());
}

#[test]
fn seeds_change_random_reports() {
    let mut a = ExperimentSpec::new(ExperimentKind::CloneDemo);
    a.dim = 3;
    let mut b = a.clone();
    b.seed = 1;
    assert_ne!(run_to_string(&a).unwrap(), run_to_string(&b).unwrap());
    assert_eq!(run_to_string(&a).unwrap(), run_to_string(&a.clone()).unwrap());
}

#[test]
fn out_of_domain_photon_is_a_domain_violation() {
    let mut spec = ExperimentSpec::new(ExperimentKind::StimulatedClone);
    spec.config = Some(config_path("pi_only.toml"));
    spec.state = Some("1,1".parse().unwrap());
    assert!(matches!(run(&spec), Err(Error::DomainViolation { .. })));
}

#[test]
fn invalid_inputs_are_rejected() {
    let mut spec = ExperimentSpec::new(ExperimentKind::FixedAncilla);
    spec.index = 5;
    assert!(matches!(run(&spec), Err(Error::IndexOutOfRange { .. })));

    let mut spec = ExperimentSpec::new(ExperimentKind::CloneDemo);
    spec.state = Some("0,0".parse().unwrap());
    assert!(matches!(run(&spec), Err(Error::ZeroNorm)));

    let mut spec = ExperimentSpec::new(ExperimentKind::NoCloningWitness);
    spec.overlap = Some(Complex64::new(1.5, 0.0));
    assert!(matches!(run(&spec), Err(Error::InvalidInput(_))));
}

#[test]
fn config_errors_map_to_kinds() {
    let mut spec = ExperimentSpec::new(ExperimentKind::Domain);
    spec.config = Some(config_path("does-not-exist.toml"));
    assert!(matches!(run(&spec), Err(Error::Config(_))));

    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "[ground]\nlabel = \"g\"\nl = 0\nm = 0\nbogus = 1\nexcited = []").unwrap();
    assert!(matches!(load_config(f.path()), Err(Error::Config(_))));

    let bad_m = "[ground]\nlabel = \"g\"\nl = 0\nm = 2\n[[excited]]\nlabel = \"e\"\nl = 1\nm = 0\n";
    assert!(parse_config(bad_m).is_err());
}

#[test]
fn shipped_configs_load() {
    for name in ["hydrogen_2p.toml", "pi_only.toml", "s_to_s.toml"] {
        load_config(&config_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn csv_and_table_share_rows() {
    let mut spec = ExperimentSpec::new(ExperimentKind::Domain);
    spec.format = OutputFormat::Csv;
    let csv = run_to_string(&spec).unwrap();
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.starts_with("mode,q,in_domain"));
    spec.format = OutputFormat::Table;
    let table = run_to_string(&spec).unwrap();
    assert!(table.contains("[PASS] basis_orthonormality"));
}
