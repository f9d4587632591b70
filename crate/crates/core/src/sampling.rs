//! Seeded random algebra elements, vectors and operators.
//!
//! Entries are independent standard complex Gaussians restricted to the
//! descriptor's sparsity pattern.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{AlgebraDescriptor, AlgebraElement};
use crate::hilbert_module::{ModuleOperator, ModuleVector};
use crate::linalg::CMatrix;

pub type SampleRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_element<R: Rng + ?Sized>(descriptor: AlgebraDescriptor, rng: &mut R) -> AlgebraElement {
    let k = descriptor.dim;
    let mut m = CMatrix::zeros(k, k);
    for (r, c) in descriptor.basis_positions() {
        m[(r, c)] = complex_normal(rng);
    }
    AlgebraElement::from_matrix_unchecked(descriptor, m)
}

/// Random positive semidefinite element `g g*`.
pub fn random_positive<R: Rng + ?Sized>(descriptor: AlgebraDescriptor, rng: &mut R) -> AlgebraElement {
    let g = random_element(descriptor, rng);
    g.mul_unchecked(&g.adjoint())
}

pub fn random_vector<R: Rng + ?Sized>(descriptor: AlgebraDescriptor, rank: usize, rng: &mut R) -> ModuleVector {
    let comps = (0..rank).map(|_| random_element(descriptor, rng)).collect();
    ModuleVector::new(comps).expect("rank >= 1")
}

/// Random vector rescaled to `‖x‖ = 1`.
pub fn random_unit_vector<R: Rng + ?Sized>(descriptor: AlgebraDescriptor, rank: usize, rng: &mut R) -> ModuleVector {
    loop {
        let x = random_vector(descriptor, rank, rng);
        let norm = x.norm();
        if norm > 1e-12 {
            return x.scale_real(1.0 / norm);
        }
    }
}

pub fn random_operator<R: Rng + ?Sized>(descriptor: AlgebraDescriptor, rank: usize, rng: &mut R) -> ModuleOperator {
    let blocks = (0..rank * rank).map(|_| random_element(descriptor, rng)).collect();
    ModuleOperator::new(rank, blocks).expect("rank >= 1")
}
