use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use super::ket::{check_dims, Ket};
use super::{ONE, ZERO};
use crate::error::{Error, Result};

/// Dense complex matrix, row-major, `dim_out × dim_in`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    dim_out: usize,
    dim_in: usize,
    entries: Vec<Complex64>,
}

impl OperatorMatrix {
    pub fn zeros(dim_out: usize, dim_in: usize) -> Self {
        OperatorMatrix { dim_out, dim_in, entries: vec![ZERO; dim_out * dim_in] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim_out = rows.len();
        let dim_in = rows.first().map_or(0, Vec::len);
        if dim_out == 0 || dim_in == 0 {
            return Err(Error::InvalidDimension("empty matrix".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != dim_in) {
            return Err(Error::DimensionMismatch { expected: dim_in, found: bad.len() });
        }
        Ok(OperatorMatrix { dim_out, dim_in, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect()).collect())
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Ket]) -> Result<Self> {
        let dim_in = columns.len();
        let dim_out = columns.first().map_or(0, Ket::dim);
        if dim_in == 0 {
            return Err(Error::InvalidDimension("no columns".into()));
        }
        let mut m = Self::zeros(dim_out, dim_in);
        for (j, col) in columns.iter().enumerate() {
            check_dims(dim_out, col.dim())?;
            for (i, a) in col.amplitudes().iter().enumerate() {
                m[(i, j)] = *a;
            }
        }
        Ok(m)
    }

    /// `|a⟩⟨b|`.
    pub fn outer(a: &Ket, b: &Ket) -> Self {
        let mut m = Self::zeros(a.dim(), b.dim());
        for (i, x) in a.amplitudes().iter().enumerate() {
            for (j, y) in b.amplitudes().iter().enumerate() {
                m[(i, j)] = x * y.conj();
            }
        }
        m
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn is_square(&self) -> bool {
        self.dim_out == self.dim_in
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim_out).map(|i| self[(i, j)]).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.entries.chunks(self.dim_in)
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.dim_in, self.dim_out);
        for i in 0..self.dim_out {
            for j in 0..self.dim_in {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn matmul(&self, rhs: &OperatorMatrix) -> Result<Self> {
        check_dims(self.dim_in, rhs.dim_out)?;
        let mut m = Self::zeros(self.dim_out, rhs.dim_in);
        for i in 0..self.dim_out {
            for k in 0..self.dim_in {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.dim_in {
                    m.entries[i * rhs.dim_in + j] += a * rhs[(k, j)];
                }
            }
        }
        Ok(m)
    }

    /// Kronecker product `self ⊗ rhs`, `self` index major.
    pub fn kron(&self, rhs: &OperatorMatrix) -> Self {
        let mut m = Self::zeros(self.dim_out * rhs.dim_out, self.dim_in * rhs.dim_in);
        for i1 in 0..self.dim_out {
            for j1 in 0..self.dim_in {
                let a = self[(i1, j1)];
                if a == ZERO {
                    continue;
                }
                for i2 in 0..rhs.dim_out {
                    for j2 in 0..rhs.dim_in {
                        m[(i1 * rhs.dim_out + i2, j1 * rhs.dim_in + j2)] = a * rhs[(i2, j2)];
                    }
                }
            }
        }
        m
    }

    pub fn add(&self, rhs: &OperatorMatrix) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &OperatorMatrix) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        OperatorMatrix {
            dim_out: self.dim_out,
            dim_in: self.dim_in,
            entries: self.entries.iter().map(|a| a * factor).collect(),
        }
    }

    fn zip_with(&self, rhs: &OperatorMatrix, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        check_dims(self.dim_out, rhs.dim_out)?;
        check_dims(self.dim_in, rhs.dim_in)?;
        Ok(OperatorMatrix {
            dim_out: self.dim_out,
            dim_in: self.dim_in,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(*a, *b)).collect(),
        })
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim_out.min(self.dim_in)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entrywise modulus of `self - rhs`; `f64::INFINITY` on shape mismatch.
    pub fn max_abs_diff(&self, rhs: &OperatorMatrix) -> f64 {
        if self.dim_out != rhs.dim_out || self.dim_in != rhs.dim_in {
            return f64::INFINITY;
        }
        self.entries.iter().zip(&rhs.entries).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// `‖M†M − I‖_max`.
    pub fn unitarity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let gram = self.adjoint().matmul(self).expect("square");
        gram.max_abs_diff(&Self::identity(self.dim_in))
    }

    /// `‖M − M†‖_max`.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() < tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() < tol
    }

    pub fn commutator(&self, rhs: &OperatorMatrix) -> Result<Self> {
        self.matmul(rhs)?.sub(&rhs.matmul(self)?)
    }
}

impl Index<(usize, usize)> for OperatorMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim_in + j]
    }
}

impl IndexMut<(usize, usize)> for OperatorMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim_in + j]
    }
}

/// Matrix-vector product `m|k⟩`. The result keeps the ket's label.
pub fn apply(m: &OperatorMatrix, k: &Ket) -> Result<Ket> {
    check_dims(m.dim_in, k.dim())?;
    let amplitudes = m.rows().map(|row| row.iter().zip(k.amplitudes()).map(|(a, b)| a * b).sum()).collect();
    Ket::new(k.label(), amplitudes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_ket, random_unitary, seeded_rng};
    use proptest::prelude::*;

    #[test]
    fn identity_is_a_no_op() {
        let k = Ket::from_reals("k", &[0.6, 0.8]).unwrap();
        assert_eq!(apply(&OperatorMatrix::identity(2), &k).unwrap(), k);
    }

    #[test]
    fn swap_moves_basis_vector() {
        let x = OperatorMatrix::from_real_rows(&[&[0., 1.], &[1., 0.]]).unwrap();
        let out = apply(&x, &Ket::basis("k", 2, 0).unwrap()).unwrap();
        assert_eq!(out.amplitudes(), Ket::basis("k", 2, 1).unwrap().amplitudes());
        assert!(x.is_unitary(1e-12));
        assert!(x.is_hermitian(1e-12));
    }

    #[test]
    fn apply_rejects_wrong_dimension() {
        let err = apply(&OperatorMatrix::identity(3), &Ket::basis("k", 2, 0).unwrap()).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 3, found: 2 }));
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i = OperatorMatrix::identity(2).kron(&OperatorMatrix::identity(3));
        assert_eq!(i, OperatorMatrix::identity(6));
    }

    #[test]
    fn kron_acts_factorwise() {
        let mut rng = seeded_rng(3);
        let a = random_unitary(2, &mut rng);
        let b = random_unitary(3, &mut rng);
        let x = random_ket(2, &mut rng);
        let y = random_ket(3, &mut rng);
        let lhs = apply(&a.kron(&b), &super::super::tensor_product(&x, &y)).unwrap();
        let rhs = super::super::tensor_product(&apply(&a, &x).unwrap(), &apply(&b, &y).unwrap());
        assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-13);
    }

    #[test]
    fn non_square_is_never_unitary() {
        assert!(!OperatorMatrix::zeros(2, 3).is_unitary(1.0));
    }

    proptest! {
        #[test]
        fn unitaries_preserve_norm(seed in any::<u64>(), dim in 1usize..7) {
            let mut rng = seeded_rng(seed);
            let u = random_unitary(dim, &mut rng);
            prop_assert!(u.is_unitary(1e-10));
            let k = random_ket(dim, &mut rng);
            let out = apply(&u, &k).unwrap();
            prop_assert!((out.norm() - k.norm()).abs() < 1e-10);
        }
    }
}
