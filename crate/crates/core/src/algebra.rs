//! The coefficient C*-algebra: full or diagonal `k × k` complex matrices.
//!
//! Elements carry their [`AlgebraDescriptor`] so that mixing algebras is an
//! error rather than a silent shape bug. Operations on diagonal elements reduce
//! to entrywise scalar arithmetic; full elements go through dense Hermitian
//! eigendecompositions and SVDs.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, ONE, ZERO};

/// Relative tolerance used for positivity and Loewner checks unless overridden.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// `inverse` refuses elements with `sigma_min <= SINGULARITY_RATIO * sigma_max`.
pub const SINGULARITY_RATIO: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Full,
    Diagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDescriptor {
    pub kind: AlgebraKind,
    pub dim: usize,
}

impl AlgebraDescriptor {
    pub fn new(kind: AlgebraKind, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDescriptor("matrix size must be at least 1".into()));
        }
        Ok(Self { kind, dim })
    }

    pub fn full(dim: usize) -> Result<Self> {
        Self::new(AlgebraKind::Full, dim)
    }

    pub fn diagonal(dim: usize) -> Result<Self> {
        Self::new(AlgebraKind::Diagonal, dim)
    }

    pub fn is_diagonal(&self) -> bool {
        self.kind == AlgebraKind::Diagonal
    }

    /// Complex dimension of the algebra as a vector space.
    pub fn basis_len(&self) -> usize {
        match self.kind {
            AlgebraKind::Full => self.dim * self.dim,
            AlgebraKind::Diagonal => self.dim,
        }
    }

    /// Matrix coordinates `(row, col)` of the standard basis `E_rc` of the algebra.
    pub fn basis_positions(&self) -> Vec<(usize, usize)> {
        match self.kind {
            AlgebraKind::Full => (0..self.dim).flat_map(|r| (0..self.dim).map(move |c| (r, c))).collect(),
            AlgebraKind::Diagonal => (0..self.dim).map(|r| (r, r)).collect(),
        }
    }

    pub(crate) fn ensure_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch { left: *self, right: *other })
        }
    }
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            AlgebraKind::Full => "full",
            AlgebraKind::Diagonal => "diagonal",
        };
        write!(f, "{kind}({})", self.dim)
    }
}

/// An element of the algebra. Diagonal elements have exactly zero off-diagonal entries.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    descriptor: AlgebraDescriptor,
    entries: CMatrix,
}

impl AlgebraElement {
    pub fn from_matrix(descriptor: AlgebraDescriptor, entries: CMatrix) -> Result<Self> {
        let k = descriptor.dim;
        if entries.nrows() != k || entries.ncols() != k {
            return Err(Error::ShapeMismatch {
                what: "algebra element size",
                expected: k,
                found: if entries.nrows() != k { entries.nrows() } else { entries.ncols() },
            });
        }
        if descriptor.is_diagonal() {
            for c in 0..k {
                for r in 0..k {
                    if r != c && entries[(r, c)] != ZERO {
                        return Err(Error::NotDiagonal { row: r, col: c });
                    }
                }
            }
        }
        Ok(Self { descriptor, entries })
    }

    pub(crate) fn from_matrix_unchecked(descriptor: AlgebraDescriptor, entries: CMatrix) -> Self {
        debug_assert_eq!(entries.nrows(), descriptor.dim);
        Self { descriptor, entries }
    }

    /// Full-algebra element with the given entries.
    pub fn full(entries: CMatrix) -> Result<Self> {
        let descriptor = AlgebraDescriptor::full(entries.nrows())?;
        Self::from_matrix(descriptor, entries)
    }

    /// Diagonal-algebra element `diag(values)`.
    pub fn diagonal(values: &[Complex64]) -> Result<Self> {
        let descriptor = AlgebraDescriptor::diagonal(values.len())?;
        let entries = CMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(values));
        Ok(Self { descriptor, entries })
    }

    pub fn real_diagonal(values: &[f64]) -> Result<Self> {
        let values: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Self::diagonal(&values)
    }

    pub fn zero(descriptor: AlgebraDescriptor) -> Self {
        Self { descriptor, entries: CMatrix::zeros(descriptor.dim, descriptor.dim) }
    }

    pub fn identity(descriptor: AlgebraDescriptor) -> Self {
        Self { descriptor, entries: CMatrix::identity(descriptor.dim, descriptor.dim) }
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        self.descriptor
    }

    pub fn dim(&self) -> usize {
        self.descriptor.dim
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_matrix(self) -> CMatrix {
        self.entries
    }

    pub fn diagonal_entries(&self) -> Vec<Complex64> {
        self.entries.diagonal().iter().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|z| *z == ZERO)
    }

    pub fn adjoint(&self) -> Self {
        Self { descriptor: self.descriptor, entries: self.entries.adjoint() }
    }

    pub fn multiply(&self, rhs: &Self) -> Result<Self> {
        self.descriptor.ensure_same(&rhs.descriptor)?;
        Ok(self.mul_unchecked(rhs))
    }

    pub(crate) fn mul_unchecked(&self, rhs: &Self) -> Self {
        let entries = if self.descriptor.is_diagonal() {
            let mut out = CMatrix::zeros(self.dim(), self.dim());
            for i in 0..self.dim() {
                out[(i, i)] = self.entries[(i, i)] * rhs.entries[(i, i)];
            }
            out
        } else {
            &self.entries * &rhs.entries
        };
        Self { descriptor: self.descriptor, entries }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.descriptor.ensure_same(&rhs.descriptor)?;
        Ok(Self { descriptor: self.descriptor, entries: &self.entries + &rhs.entries })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.descriptor.ensure_same(&rhs.descriptor)?;
        Ok(Self { descriptor: self.descriptor, entries: &self.entries - &rhs.entries })
    }

    pub(crate) fn add_assign_unchecked(&mut self, rhs: &Self) {
        self.entries += &rhs.entries;
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self { descriptor: self.descriptor, entries: self.entries.map(|z| z * factor) }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        Self { descriptor: self.descriptor, entries: self.entries.map(|z| z * factor) }
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        if self.descriptor.is_diagonal() {
            self.entries.diagonal().iter().map(|z| z.norm()).fold(0.0, f64::max)
        } else {
            linalg::spectral_norm(&self.entries)
        }
    }

    fn asymmetry(&self) -> f64 {
        if self.descriptor.is_diagonal() {
            self.entries.diagonal().iter().map(|z| 2.0 * z.im.abs()).fold(0.0, f64::max)
        } else {
            linalg::spectral_norm(&(&self.entries - self.entries.adjoint()))
        }
    }

    /// Eigenvalues of the Hermitian part `(a + a*)/2`, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        if self.descriptor.is_diagonal() {
            let mut values: Vec<f64> = self.entries.diagonal().iter().map(|z| z.re).collect();
            values.sort_by(f64::total_cmp);
            values
        } else {
            linalg::hermitian_eigenvalues(&self.entries)
        }
    }

    /// Positivity test with tolerance scaled by `1 + ‖a‖`.
    pub fn is_positive(&self, tol: f64) -> bool {
        let floor = tol * (1.0 + self.operator_norm());
        if self.asymmetry() > floor {
            return false;
        }
        self.hermitian_eigenvalues().first().is_none_or(|&min| min >= -floor)
    }

    /// `a ⪯ b` in the Loewner order, i.e. `b − a` positive within tolerance.
    pub fn loewner_leq(&self, other: &Self, tol: f64) -> Result<bool> {
        Ok(other.sub(self)?.is_positive(tol))
    }

    /// Positive square root of a positive element; eigenvalues are clamped at zero.
    pub fn hermitian_sqrt(&self, tol: f64) -> Result<Self> {
        if !self.is_positive(tol) {
            return Err(Error::NotPositive {
                min_eigenvalue: self.hermitian_eigenvalues().first().copied().unwrap_or(0.0),
                asymmetry: self.asymmetry(),
            });
        }
        Ok(self.psd_sqrt())
    }

    fn psd_sqrt(&self) -> Self {
        let entries = if self.descriptor.is_diagonal() {
            let mut out = CMatrix::zeros(self.dim(), self.dim());
            for i in 0..self.dim() {
                out[(i, i)] = Complex64::new(self.entries[(i, i)].re.max(0.0).sqrt(), 0.0);
            }
            out
        } else {
            let (values, vectors) = linalg::hermitian_eigen(&self.entries);
            linalg::spectral_function(&values, &vectors, |v| v.max(0.0).sqrt())
        };
        Self { descriptor: self.descriptor, entries }
    }

    /// `|a| = (a* a)^{1/2}`.
    pub fn abs(&self) -> Self {
        self.adjoint().mul_unchecked(self).psd_sqrt()
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.descriptor.is_diagonal() {
            let diag: Vec<Complex64> = self.diagonal_entries();
            let sigma_max = diag.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let sigma_min = diag.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
            check_singular(sigma_min, sigma_max)?;
            let mut out = CMatrix::zeros(self.dim(), self.dim());
            for (i, z) in diag.iter().enumerate() {
                out[(i, i)] = ONE / z;
            }
            return Ok(Self { descriptor: self.descriptor, entries: out });
        }
        let sv = linalg::singular_values(&self.entries);
        let sigma_max = sv.first().copied().unwrap_or(0.0);
        let sigma_min = sv.last().copied().unwrap_or(0.0);
        check_singular(sigma_min, sigma_max)?;
        let entries = self.entries.clone().try_inverse().ok_or(Error::SingularElement { sigma_min, sigma_max })?;
        Ok(Self { descriptor: self.descriptor, entries })
    }
}

fn check_singular(sigma_min: f64, sigma_max: f64) -> Result<()> {
    if !(sigma_max > 0.0) || sigma_min <= SINGULARITY_RATIO * sigma_max {
        Err(Error::SingularElement { sigma_min, sigma_max })
    } else {
        Ok(())
    }
}
