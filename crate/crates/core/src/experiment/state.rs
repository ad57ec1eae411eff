use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand_chacha::rand_core::RngCore;

use crate::error::{Error, Result};
use crate::qstate::Ket;
use crate::random::random_ket;

/// How an input state is specified on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum StateSpec {
    /// Explicit amplitudes, renormalized on use.
    Amplitudes(Vec<Complex64>),
    /// Uniform superposition `Σ|i⟩/√n`.
    Plus,
    /// `Σ (−1)^i |i⟩/√n`.
    Minus,
    /// Computational basis vector `|k⟩` (0-based).
    Basis(usize),
}

impl StateSpec {
    /// Fixed dimension implied by the spec, if any.
    pub fn dim(&self) -> Option<usize> {
        match self {
            StateSpec::Amplitudes(a) => Some(a.len()),
            _ => None,
        }
    }

    pub fn resolve(&self, dim: usize) -> Result<Ket> {
        if dim == 0 {
            return Err(Error::InvalidDimension("dimension must be positive".into()));
        }
        let ket = match self {
            StateSpec::Amplitudes(a) => {
                if a.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: a.len() });
                }
                Ket::new("Ψ", a.clone())?
            }
            StateSpec::Plus => Ket::new("Ψ", vec![Complex64::new(1.0, 0.0); dim])?,
            StateSpec::Minus => {
                Ket::new("Ψ", (0..dim).map(|i| Complex64::new(if i % 2 == 0 { 1.0 } else { -1.0 }, 0.0)).collect())?
            }
            StateSpec::Basis(k) => Ket::basis("Ψ", dim, *k)?,
        };
        ket.normalize()
    }
}

/// Resolve an optional spec, drawing a seeded random state when absent.
pub fn resolve_or_random(spec: Option<&StateSpec>, dim: usize, rng: &mut impl RngCore) -> Result<Ket> {
    match spec {
        Some(s) => s.resolve(dim),
        None => Ok(random_ket(dim, rng).with_label("Ψ")),
    }
}

impl FromStr for StateSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "plus" => return Ok(StateSpec::Plus),
            "minus" => return Ok(StateSpec::Minus),
            _ => {}
        }
        if let Some(k) = s.strip_prefix("basis:") {
            let k = k.parse().map_err(|_| Error::InvalidInput(format!("bad basis index `{k}`")))?;
            return Ok(StateSpec::Basis(k));
        }
        let amps = s.split(',').map(parse_complex).collect::<Result<Vec<_>>>()?;
        Ok(StateSpec::Amplitudes(amps))
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::Plus => write!(f, "plus"),
            StateSpec::Minus => write!(f, "minus"),
            StateSpec::Basis(k) => write!(f, "basis:{k}"),
            StateSpec::Amplitudes(a) => {
                let parts: Vec<String> = a.iter().map(|c| format!("{}{:+}i", c.re, c.im)).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

/// Parse `a`, `bi`, `a+bi`, `a-bi` (also `j` for the imaginary unit).
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::InvalidInput(format!("cannot parse complex number `{s}`"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    let num = |x: &str| -> Result<f64> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => x.parse::<f64>().map_err(|_| bad()),
        }
    };
    let value = match t.strip_suffix('i').or_else(|| t.strip_suffix('j')) {
        None => Complex64::new(t.parse::<f64>().map_err(|_| bad())?, 0.0),
        Some(body) => {
            let bytes = body.as_bytes();
            let split = (1..bytes.len())
                .rev()
                .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
            match split {
                Some(i) => Complex64::new(body[..i].parse::<f64>().map_err(|_| bad())?, num(&body[i..])?),
                None => Complex64::new(0.0, num(body)?),
            }
        }
    };
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}
