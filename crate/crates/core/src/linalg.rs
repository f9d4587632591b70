//! Dense complex helpers shared by the algebra and frame layers.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Eigendecomposition of the Hermitian part of `m`, eigenvalues ascending.
///
/// Columns of the returned matrix are the matching unit eigenvectors.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), CMatrix::zeros(0, 0));
    }
    let herm = hermitian_part(m);
    let eig = nalgebra::SymmetricEigen::new(herm);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut values: Vec<f64> = hermitian_part(m).symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).map(|z| z * 0.5)
}

/// Singular values in descending order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut values: Vec<f64> = m.singular_values().iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

pub fn spectral_norm(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Reassembles `V diag(f(λ)) V*` from an eigendecomposition.
pub(crate) fn spectral_function(values: &[f64], vectors: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let mut scaled = vectors.clone();
    for (j, &lambda) in values.iter().enumerate() {
        let factor = f(lambda);
        scaled.column_mut(j).iter_mut().for_each(|z| *z *= factor);
    }
    &scaled * vectors.adjoint()
}
