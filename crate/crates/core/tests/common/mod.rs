//! Independent oracles shared by the integration and acceptance tests.
//! Nothing here calls the code paths being checked.
#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use stateclone::cloner::CopyBasis;
use stateclone::qstate::OperatorMatrix;

// ---------------------------------------------------------------------------
// Clebsch–Gordan via diagonalization of total J² on the product basis.
// ---------------------------------------------------------------------------

/// Coupled states of `j1 ⊗ j2` from J² diagonalization.
///
/// Product basis `|m1, m2⟩` is ordered `m1` descending (major), `m2`
/// descending. For each `J`, the highest-weight vector comes from the
/// `M = J` block's eigenvector with eigenvalue `J(J+1)`, signed so the
/// `m1 = j1` component is positive; lower `M` follow by applying `J−` and
/// normalizing.
pub struct J2Oracle {
    tj1: i32,
    tj2: i32,
    /// `(twice_J, twice_M)` → vector over the product basis.
    states: Vec<((i32, i32), Vec<f64>)>,
}

fn ladder(tj: i32, tm: i32, up: bool) -> f64 {
    let j = f64::from(tj) / 2.0;
    let m = f64::from(tm) / 2.0;
    let mp = if up { m + 1.0 } else { m - 1.0 };
    (j * (j + 1.0) - m * mp).max(0.0).sqrt()
}

impl J2Oracle {
    pub fn new(tj1: i32, tj2: i32) -> Self {
        let m1s: Vec<i32> = (-tj1..=tj1).rev().step_by(2).collect();
        let m2s: Vec<i32> = (-tj2..=tj2).rev().step_by(2).collect();
        let basis: Vec<(i32, i32)> = m1s.iter().flat_map(|&a| m2s.iter().map(move |&b| (a, b))).collect();
        let dim = basis.len();
        let idx = |m1: i32, m2: i32| basis.iter().position(|&p| p == (m1, m2));

        // J² = J1² + J2² + 2 J1z J2z + J1+ J2− + J1− J2+
        let j1 = f64::from(tj1) / 2.0;
        let j2 = f64::from(tj2) / 2.0;
        let mut j2mat = DMatrix::<f64>::zeros(dim, dim);
        for (c, &(m1, m2)) in basis.iter().enumerate() {
            let (fm1, fm2) = (f64::from(m1) / 2.0, f64::from(m2) / 2.0);
            j2mat[(c, c)] += j1 * (j1 + 1.0) + j2 * (j2 + 1.0) + 2.0 * fm1 * fm2;
            if let Some(r) = idx(m1 + 2, m2 - 2) {
                j2mat[(r, c)] += ladder(tj1, m1, true) * ladder(tj2, m2, false);
            }
            if let Some(r) = idx(m1 - 2, m2 + 2) {
                j2mat[(r, c)] += ladder(tj1, m1, false) * ladder(tj2, m2, true);
            }
        }

        let lower = |v: &[f64]| -> Vec<f64> {
            let mut out = vec![0.0; dim];
            for (c, &(m1, m2)) in basis.iter().enumerate() {
                if v[c] == 0.0 {
                    continue;
                }
                if let Some(r) = idx(m1 - 2, m2) {
                    out[r] += ladder(tj1, m1, false) * v[c];
                }
                if let Some(r) = idx(m1, m2 - 2) {
                    out[r] += ladder(tj2, m2, false) * v[c];
                }
            }
            let n = out.iter().map(|x| x * x).sum::<f64>().sqrt();
            out.iter().map(|x| x / n).collect()
        };

        let mut states = Vec::new();
        let lo = (tj1 - tj2).abs();
        for tj in (lo..=tj1 + tj2).step_by(2) {
            let block: Vec<usize> = (0..dim).filter(|&i| basis[i].0 + basis[i].1 == tj).collect();
            let sub = DMatrix::from_fn(block.len(), block.len(), |a, b| j2mat[(block[a], block[b])]);
            let eig = SymmetricEigen::new(sub);
            let target = f64::from(tj) / 2.0 * (f64::from(tj) / 2.0 + 1.0);
            let k = (0..block.len())
                .min_by(|&a, &b| (eig.eigenvalues[a] - target).abs().total_cmp(&(eig.eigenvalues[b] - target).abs()))
                .unwrap();
            assert!((eig.eigenvalues[k] - target).abs() < 1e-9, "J² eigenvalue not found");
            let mut top = vec![0.0; dim];
            for (a, &i) in block.iter().enumerate() {
                top[i] = eig.eigenvectors[(a, k)];
            }
            let lead = block.iter().find(|&&i| basis[i].0 == tj1).map(|&i| top[i]).unwrap();
            if lead < 0.0 {
                top.iter_mut().for_each(|x| *x = -*x);
            }
            let mut v = top;
            let mut tm = tj;
            loop {
                states.push(((tj, tm), v.clone()));
                if tm == -tj {
                    break;
                }
                v = lower(&v);
                tm -= 2;
            }
        }
        J2Oracle { tj1, tj2, states }
    }

    /// `⟨j1 m1; j2 m2|J M⟩` (doubled arguments), 0 outside the table.
    pub fn coefficient(&self, tm1: i32, tm2: i32, tj: i32, tm: i32) -> f64 {
        let m2s: Vec<i32> = (-self.tj2..=self.tj2).rev().step_by(2).collect();
        let m1s: Vec<i32> = (-self.tj1..=self.tj1).rev().step_by(2).collect();
        let (Some(a), Some(b)) = (m1s.iter().position(|&x| x == tm1), m2s.iter().position(|&x| x == tm2)) else {
            return 0.0;
        };
        let i = a * m2s.len() + b;
        self.states.iter().find(|(k, _)| *k == (tj, tm)).map_or(0.0, |(_, v)| v[i])
    }

    /// Dimension of the `J = tj/2` sector found by projection (counts `2J+1` per occurrence).
    pub fn sector_dimension(&self, tj: i32) -> usize {
        self.states.iter().filter(|((j, _), _)| *j == tj).count()
    }
}

// ---------------------------------------------------------------------------
// Dipole angular factor by numerical integration over the sphere.
// ---------------------------------------------------------------------------

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Associated Legendre `P_l^m(x)`, `m ≥ 0`, with the Condon–Shortley phase.
fn assoc_legendre(l: u32, m: u32, x: f64) -> f64 {
    let mut pmm = 1.0;
    let s = (1.0 - x * x).max(0.0).sqrt();
    for k in 0..m {
        pmm *= -((2 * k + 1) as f64) * s;
    }
    if l == m {
        return pmm;
    }
    let mut pm1 = x * (2 * m + 1) as f64 * pmm;
    if l == m + 1 {
        return pm1;
    }
    let mut pm0 = pmm;
    for ll in (m + 2)..=l {
        let p = ((2 * ll - 1) as f64 * x * pm1 - (ll + m - 1) as f64 * pm0) / (ll - m) as f64;
        pm0 = pm1;
        pm1 = p;
    }
    pm1
}

pub fn spherical_harmonic(l: u32, m: i32, theta: f64, phi: f64) -> Complex64 {
    let am = m.unsigned_abs();
    if am > l {
        return Complex64::new(0.0, 0.0);
    }
    let norm = ((2 * l + 1) as f64 / (4.0 * PI) * factorial(l - am) / factorial(l + am)).sqrt();
    let y = Complex64::from_polar(norm * assoc_legendre(l, am, theta.cos()), f64::from(am as i32) * phi);
    if m >= 0 {
        y
    } else if am.is_multiple_of(2) {
        y.conj()
    } else {
        -y.conj()
    }
}

/// `∫ Y*_{l_g m_g} (ε · r̂) Y_{l_e m_e} dΩ` with Gauss–Legendre in `cos θ`
/// and the trapezoid rule in `φ`. `ε · r̂` is not conjugated.
pub fn dipole_angular_integral(
    l_g: u32,
    m_g: i32,
    l_e: u32,
    m_e: i32,
    eps: &[Complex64; 3],
    points: usize,
) -> Complex64 {
    let nodes = gauss_legendre(points);
    let mut acc = Complex64::new(0.0, 0.0);
    for &(x, w) in &nodes {
        let theta = x.acos();
        let s = (1.0 - x * x).sqrt();
        for k in 0..points {
            let phi = 2.0 * PI * k as f64 / points as f64;
            let rhat = [s * phi.cos(), s * phi.sin(), x];
            let dot: Complex64 = eps.iter().zip(rhat).map(|(e, r)| e * r).sum();
            let f = spherical_harmonic(l_g, m_g, theta, phi).conj() * dot * spherical_harmonic(l_e, m_e, theta, phi);
            acc += f * w * (2.0 * PI / points as f64);
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// Copy unitary assembled column by column from U(|ψᵢ⟩⊗|A_ψⱼ⟩) = |ψᵢ⟩⊗|ψⱼ⟩.
// ---------------------------------------------------------------------------

fn kron_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// `U e_c = Σ_{ij} ⟨ψᵢ⊗A_ψⱼ | e_c⟩ |ψᵢ⊗ψⱼ⟩` for each computational column `c`.
pub fn brute_force_copy_unitary(basis: &CopyBasis) -> OperatorMatrix {
    let n = basis.dim();
    let d = n * n;
    let inputs: Vec<Vec<Complex64>> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| kron_vec(basis.system()[i].amplitudes(), basis.ancilla()[j].amplitudes()))
        .collect();
    let outputs: Vec<Vec<Complex64>> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| kron_vec(basis.system()[i].amplitudes(), basis.system()[j].amplitudes()))
        .collect();
    let mut rows = vec![vec![Complex64::new(0.0, 0.0); d]; d];
    for c in 0..d {
        for (inp, out) in inputs.iter().zip(&outputs) {
            let coeff = inp[c].conj();
            if coeff == Complex64::new(0.0, 0.0) {
                continue;
            }
            for r in 0..d {
                rows[r][c] += coeff * out[r];
            }
        }
    }
    OperatorMatrix::from_rows(rows).unwrap()
}

/// Copy basis with both the system and the ancilla basis drawn at random.
pub fn random_copy_basis(n: usize, rng: &mut stateclone::random::StateRng) -> CopyBasis {
    let cols = |w: &OperatorMatrix, p: &str| -> Vec<stateclone::qstate::Ket> {
        (0..n).map(|j| stateclone::qstate::Ket::new(format!("{p}{}", j + 1), w.column(j)).unwrap()).collect()
    };
    let s = stateclone::random::random_unitary(n, rng);
    let a = stateclone::random::random_unitary(n, rng);
    CopyBasis::new(cols(&s, "ψ"), cols(&a, "A")).unwrap()
}

// ---------------------------------------------------------------------------
// Canned experiments, golden files and report-schema validation.
// ---------------------------------------------------------------------------

use std::path::PathBuf;

use stateclone::experiment::{ExperimentKind, ExperimentSpec, OutputFormat, StateSpec};

pub fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn config_path(name: &str) -> PathBuf {
    repo_root().join("configs").join(name)
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Every canned experiment, keyed by its golden file name.
/// The CLI tests replay the same list through the binary.
pub fn canned_specs() -> Vec<(&'static str, ExperimentSpec)> {
    use ExperimentKind::*;
    let spec = |kind| ExperimentSpec::new(kind);
    let with = |kind, f: &dyn Fn(&mut ExperimentSpec)| {
        let mut s = ExperimentSpec::new(kind);
        f(&mut s);
        s
    };
    vec![
        ("clone-demo-plus.json", with(CloneDemo, &|s| s.state = Some(StateSpec::Plus))),
        (
            "clone-demo-plus.table",
            with(CloneDemo, &|s| {
                s.state = Some(StateSpec::Plus);
                s.format = OutputFormat::Table;
            }),
        ),
        (
            "clone-demo-random.json",
            with(CloneDemo, &|s| {
                s.seed = 7;
                s.dim = 4;
                s.random_basis = true;
            }),
        ),
        ("fixed-ancilla-plus.json", with(FixedAncilla, &|s| s.state = Some(StateSpec::Plus))),
        ("no-cloning-witness-sweep.json", spec(NoCloningWitness)),
        ("no-cloning-witness-sweep.csv", with(NoCloningWitness, &|s| s.format = OutputFormat::Csv)),
        (
            "no-cloning-witness-single.json",
            with(NoCloningWitness, &|s| {
                s.overlap = Some(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
            }),
        ),
        ("selection-rules.json", spec(SelectionRules)),
        ("selection-rules.table", with(SelectionRules, &|s| s.format = OutputFormat::Table)),
        ("domain-hydrogen-2p.json", with(Domain, &|s| s.config = Some(config_path("hydrogen_2p.toml")))),
        ("domain-pi-only.json", with(Domain, &|s| s.config = Some(config_path("pi_only.toml")))),
        ("domain-s-to-s.json", with(Domain, &|s| s.config = Some(config_path("s_to_s.toml")))),
        (
            "stimulated-clone-hydrogen-2p.json",
            with(StimulatedClone, &|s| {
                s.config = Some(config_path("hydrogen_2p.toml"));
                s.seed = 42;
            }),
        ),
        (
            "stimulated-clone-pi-only.json",
            with(StimulatedClone, &|s| {
                s.config = Some(config_path("pi_only.toml"));
                s.state = Some(StateSpec::Basis(0));
            }),
        ),
        ("spontaneous.json", spec(Spontaneous)),
        ("spontaneous-pi-only.json", with(Spontaneous, &|s| s.config = Some(config_path("pi_only.toml")))),
    ]
}

pub fn update_golden() -> bool {
    std::env::var_os("UPDATE_GOLDEN").is_some()
}

/// Structural validation against the documented report schema (version 1).
pub fn validate_report(v: &serde_json::Value) -> Result<(), String> {
    let obj = v.as_object().ok_or("report is not an object")?;
    let expected_keys = ["schema_version", "experiment", "seed", "inputs", "outputs", "checks", "passed"];
    for k in obj.keys() {
        if !expected_keys.contains(&k.as_str()) {
            return Err(format!("unexpected key `{k}`"));
        }
    }
    let field = |k: &str| obj.get(k).ok_or(format!("missing `{k}`"));
    if field("schema_version")?.as_u64() != Some(1) {
        return Err("schema_version must be 1".into());
    }
    let name = field("experiment")?.as_str().ok_or("experiment must be a string")?;
    if ExperimentKind::ALL.iter().all(|k| k.name() != name) {
        return Err(format!("unknown experiment `{name}`"));
    }
    field("seed")?.as_u64().ok_or("seed must be an unsigned integer")?;
    field("inputs")?.as_object().ok_or("inputs must be an object")?;
    field("outputs")?.as_object().ok_or("outputs must be an object")?;
    let passed = field("passed")?.as_bool().ok_or("passed must be a boolean")?;
    let checks = field("checks")?.as_array().ok_or("checks must be an array")?;
    if checks.is_empty() {
        return Err("checks must not be empty".into());
    }
    let mut all = true;
    for c in checks {
        let c = c.as_object().ok_or("check is not an object")?;
        c.get("name").and_then(|x| x.as_str()).ok_or("check.name must be a string")?;
        let num = |k: &str| c.get(k).and_then(|x| x.as_f64()).ok_or(format!("check.{k} must be a number"));
        let (obs, exp, tol) = (num("observed")?, num("expected")?, num("tolerance")?);
        let p = c.get("passed").and_then(|x| x.as_bool()).ok_or("check.passed must be a boolean")?;
        if p != ((obs - exp).abs() <= tol) {
            return Err("check.passed disagrees with |observed − expected| ≤ tolerance".into());
        }
        all &= p;
    }
    if all != passed {
        return Err("passed must be the conjunction of all checks".into());
    }
    Ok(())
}

/// Compare `text` with the stored golden file, or rewrite it under `UPDATE_GOLDEN`.
pub fn check_golden(name: &str, text: &str) -> Result<(), String> {
    let path = golden_dir().join(name);
    if update_golden() {
        std::fs::create_dir_all(golden_dir()).map_err(|e| e.to_string())?;
        std::fs::write(&path, text).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let stored = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if stored == text {
        Ok(())
    } else {
        let line = stored.lines().zip(text.lines()).position(|(a, b)| a != b).map_or(0, |i| i + 1);
        Err(format!("{name} differs from golden (first differing line {line})"))
    }
}
