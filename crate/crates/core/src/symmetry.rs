//! SU(2) irreps with parity, Clebsch–Gordan coefficients and the
//! containment test `Γ_g ⊂ Γ_e ⊗ Γ_γ` that gates dipole transitions.
//!
//! Angular momenta are carried as twice their value (`twice_j`, `twice_m`)
//! so half-integers stay exact. Clebsch–Gordan coefficients use the
//! Condon–Shortley phase convention: `⟨j1 j1; j2 (J−j1)|J J⟩ > 0`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Unspecified,
}

impl Parity {
    /// `(−1)^l`.
    pub fn of_orbital(l: u32) -> Self {
        if l.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Product parity; unspecified if either factor is.
    pub fn combine(self, other: Parity) -> Parity {
        match (self, other) {
            (Parity::Unspecified, _) | (_, Parity::Unspecified) => Parity::Unspecified,
            (a, b) if a == b => Parity::Even,
            _ => Parity::Odd,
        }
    }

    /// Equal, or at least one side unspecified.
    pub fn compatible(self, other: Parity) -> bool {
        self == Parity::Unspecified || other == Parity::Unspecified || self == other
    }

    fn suffix(self) -> &'static str {
        match self {
            Parity::Even => "+",
            Parity::Odd => "-",
            Parity::Unspecified => "",
        }
    }
}

/// An irreducible representation of SU(2) × parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IrrepLabel {
    pub twice_j: u32,
    pub parity: Parity,
}

impl IrrepLabel {
    pub fn new(twice_j: u32, parity: Parity) -> Self {
        IrrepLabel { twice_j, parity }
    }

    /// Integer `j` with the given parity.
    pub fn integer(j: u32, parity: Parity) -> Self {
        IrrepLabel { twice_j: 2 * j, parity }
    }

    /// Orbital irrep `l` with parity `(−1)^l`.
    pub fn orbital(l: u32) -> Self {
        IrrepLabel::integer(l, Parity::of_orbital(l))
    }

    /// Electric-dipole photon: `j = 1`, odd parity.
    pub fn photon_dipole() -> Self {
        IrrepLabel::integer(1, Parity::Odd)
    }

    pub fn j(&self) -> f64 {
        f64::from(self.twice_j) / 2.0
    }

    pub fn dimension(&self) -> u32 {
        self.twice_j + 1
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice_j.is_multiple_of(2) {
            write!(f, "{}{}", self.twice_j / 2, self.parity.suffix())
        } else {
            write!(f, "{}/2{}", self.twice_j, self.parity.suffix())
        }
    }
}

/// Irreps in `j1 ⊗ j2`: `J = |j1−j2|, …, j1+j2`, each carrying the product parity.
pub fn decompose_product(j1: IrrepLabel, j2: IrrepLabel) -> Vec<IrrepLabel> {
    let parity = j1.parity.combine(j2.parity);
    let lo = j1.twice_j.abs_diff(j2.twice_j);
    let hi = j1.twice_j + j2.twice_j;
    (lo..=hi).step_by(2).map(|twice_j| IrrepLabel { twice_j, parity }).collect()
}

/// Whether `target` occurs in `product.0 ⊗ product.1`, parity included when specified.
pub fn contains(target: IrrepLabel, product: (IrrepLabel, IrrepLabel)) -> bool {
    let (a, b) = product;
    let parity = a.parity.combine(b.parity);
    target.twice_j >= a.twice_j.abs_diff(b.twice_j)
        && target.twice_j <= a.twice_j + b.twice_j
        && (target.twice_j + a.twice_j + b.twice_j).is_multiple_of(2)
        && target.parity.compatible(parity)
}

fn valid_projection(twice_j: u32, twice_m: i32) -> bool {
    twice_m.unsigned_abs() <= twice_j && (twice_j as i32 - twice_m) % 2 == 0
}

/// Weight-resolved containment: `|j_t m_t⟩` can occur in `|j_a m_a⟩ ⊗ |j_b m_b⟩`.
///
/// Irrep containment plus conservation of the magnetic quantum number
/// (`m_t = m_a + m_b`). This is the `Δm` refinement of [`contains`].
pub fn contains_weight(target: (IrrepLabel, i32), a: (IrrepLabel, i32), b: (IrrepLabel, i32)) -> bool {
    valid_projection(target.0.twice_j, target.1)
        && valid_projection(a.0.twice_j, a.1)
        && valid_projection(b.0.twice_j, b.1)
        && target.1 == a.1 + b.1
        && contains(target.0, (a.0, b.0))
}

fn factorial(n: i64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn half(twice: i32) -> Option<i64> {
    (twice % 2 == 0).then_some(i64::from(twice / 2))
}

/// `⟨j1 m1; j2 m2 | J M⟩`, all arguments doubled.
///
/// Evaluated with the Racah closed form in exact rational arithmetic; only
/// the final square root is taken in floating point. Returns 0 outside the
/// support (invalid projections, `M ≠ m1 + m2`, or triangle failure).
pub fn clebsch_gordan(tj1: i32, tm1: i32, tj2: i32, tm2: i32, tj: i32, tm: i32) -> f64 {
    if tj1 < 0 || tj2 < 0 || tj < 0 {
        return 0.0;
    }
    if !valid_projection(tj1 as u32, tm1)
        || !valid_projection(tj2 as u32, tm2)
        || !valid_projection(tj as u32, tm)
        || tm != tm1 + tm2
    {
        return 0.0;
    }
    let (Some(a), Some(b), Some(c)) = (half(tj1 + tj2 - tj), half(tj1 - tj2 + tj), half(-tj1 + tj2 + tj)) else {
        return 0.0;
    };
    if a < 0 || b < 0 || c < 0 {
        return 0.0;
    }
    // All remaining half-sums are integers once the projections are valid.
    let h = |x: i32| i64::from(x / 2);
    let j1_m_m1 = h(tj1 - tm1);
    let j1_p_m1 = h(tj1 + tm1);
    let j2_m_m2 = h(tj2 - tm2);
    let j2_p_m2 = h(tj2 + tm2);
    let j_p_m = h(tj + tm);
    let j_m_m = h(tj - tm);
    let total_plus_one = h(tj1 + tj2 + tj) + 1;
    let j_m_j2_p_m1 = h(tj - tj2 + tm1);
    let j_m_j1_m_m2 = h(tj - tj1 - tm2);

    let numerator = BigInt::from(tj + 1)
        * factorial(a)
        * factorial(b)
        * factorial(c)
        * factorial(j_p_m)
        * factorial(j_m_m)
        * factorial(j1_m_m1)
        * factorial(j1_p_m1)
        * factorial(j2_m_m2)
        * factorial(j2_p_m2);
    let prefactor = BigRational::new(numerator, factorial(total_plus_one));

    let k_min = 0.max(-j_m_j2_p_m1).max(-j_m_j1_m_m2);
    let k_max = a.min(j1_m_m1).min(j2_p_m2);
    let mut sum = BigRational::zero();
    for k in k_min..=k_max {
        let den = factorial(k)
            * factorial(a - k)
            * factorial(j1_m_m1 - k)
            * factorial(j2_p_m2 - k)
            * factorial(j_m_j2_p_m1 + k)
            * factorial(j_m_j1_m_m2 + k);
        let term = BigRational::new(BigInt::one(), den);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return 0.0;
    }
    let sign = if sum.is_negative() { -1.0 } else { 1.0 };
    let squared = prefactor * &sum * &sum;
    sign * squared.to_f64().unwrap_or(f64::NAN).sqrt()
}

/// Reduced-form matrix element `⟨l_f m_f | C^(k)_q | l_i m_i⟩` of the
/// normalized spherical harmonic `C^(k)_q = √(4π/(2k+1)) Y_kq`, via Wigner–Eckart:
///
/// `√((2l_i+1)/(2l_f+1)) ⟨l_i 0; k 0|l_f 0⟩ ⟨l_i m_i; k q|l_f m_f⟩`.
pub fn spherical_tensor_element(l_f: u32, m_f: i32, k: u32, q: i32, l_i: u32, m_i: i32) -> f64 {
    let (lf, li, k2) = (2 * l_f as i32, 2 * l_i as i32, 2 * k as i32);
    let reduced = clebsch_gordan(li, 0, k2, 0, lf, 0);
    if reduced == 0.0 {
        return 0.0;
    }
    let ratio = f64::from(2 * l_i + 1) / f64::from(2 * l_f + 1);
    ratio.sqrt() * reduced * clebsch_gordan(li, 2 * m_i, k2, 2 * q, lf, 2 * m_f)
}

/// Full coupling table for `j1 ⊗ j2`, keyed by doubled `(m1, m2, J, M)`.
#[derive(Clone, Debug)]
pub struct CGTable {
    pub j1: IrrepLabel,
    pub j2: IrrepLabel,
    entries: BTreeMap<(i32, i32, i32, i32), f64>,
}

impl CGTable {
    pub fn build(j1: IrrepLabel, j2: IrrepLabel) -> Self {
        let (tj1, tj2) = (j1.twice_j as i32, j2.twice_j as i32);
        let mut entries = BTreeMap::new();
        for total in decompose_product(j1, j2) {
            let tj = total.twice_j as i32;
            for tm1 in (-tj1..=tj1).step_by(2) {
                for tm2 in (-tj2..=tj2).step_by(2) {
                    let tm = tm1 + tm2;
                    if tm.abs() > tj {
                        continue;
                    }
                    let c = clebsch_gordan(tj1, tm1, tj2, tm2, tj, tm);
                    if c != 0.0 {
                        entries.insert((tm1, tm2, tj, tm), c);
                    }
                }
            }
        }
        CGTable { j1, j2, entries }
    }

    pub fn get(&self, tm1: i32, tm2: i32, tj: i32, tm: i32) -> f64 {
        self.entries.get(&(tm1, tm2, tj, tm)).copied().unwrap_or(0.0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(i32, i32, i32, i32), &f64)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest deviation from orthonormality over rows `(J, M)` and columns `(m1, m2)`.
    pub fn orthogonality_defect(&self) -> f64 {
        let (tj1, tj2) = (self.j1.twice_j as i32, self.j2.twice_j as i32);
        let uncoupled: Vec<(i32, i32)> =
            (-tj1..=tj1).step_by(2).flat_map(|a| (-tj2..=tj2).step_by(2).map(move |b| (a, b))).collect();
        let coupled: Vec<(i32, i32)> = decompose_product(self.j1, self.j2)
            .into_iter()
            .flat_map(|l| {
                let tj = l.twice_j as i32;
                (-tj..=tj).step_by(2).map(move |tm| (tj, tm))
            })
            .collect();
        let mut defect = 0.0f64;
        for (i, &(ja, ma)) in coupled.iter().enumerate() {
            for &(jb, mb) in &coupled[i..] {
                let s: f64 =
                    uncoupled.iter().map(|&(m1, m2)| self.get(m1, m2, ja, ma) * self.get(m1, m2, jb, mb)).sum();
                let expected = if (ja, ma) == (jb, mb) { 1.0 } else { 0.0 };
                defect = defect.max((s - expected).abs());
            }
        }
        for (i, &(a1, a2)) in uncoupled.iter().enumerate() {
            for &(b1, b2) in &uncoupled[i..] {
                let s: f64 = coupled.iter().map(|&(j, m)| self.get(a1, a2, j, m) * self.get(b1, b2, j, m)).sum();
                let expected = if (a1, a2) == (b1, b2) { 1.0 } else { 0.0 };
                defect = defect.max((s - expected).abs());
            }
        }
        defect
    }
}
