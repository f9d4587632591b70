//! Ready-made families on `[0, 1]` with Lebesgue measure.
//!
//! The ramp family acts on the diagonal algebra `{diag(a, b)}` as a module
//! over itself by `diag(a, b) ↦ diag(ωa, (√3/2)ωb)`. Its frame operator is
//! `diag(1/3, 1/4)`, so its optimal bounds are `1/4` and `1/3`, and its
//! canonical dual is `diag(a, b) ↦ diag(3ωa, 2√3ωb)` with bounds `3` and `4`.

use crate::algebra::{AlgebraDescriptor, AlgebraElement};
use crate::error::Result;
use crate::frames::OperatorFamily;
use crate::hilbert_module::ModuleOperator;
use crate::quadrature::QuadratureRule;

fn linear_diagonal_family(nodes: usize, slope: &[f64]) -> Result<OperatorFamily> {
    let rule = QuadratureRule::gauss_legendre(0.0, 1.0, nodes)?;
    let c1 = ModuleOperator::scalar(AlgebraElement::real_diagonal(slope)?);
    let c0 = ModuleOperator::zero(c1.descriptor(), 1);
    OperatorFamily::parametric(rule, vec![c0, c1])
}

/// `T_ω = diag(ω, (√3/2)ω)` acting on the two-dimensional diagonal algebra.
pub fn ramp_family(nodes: usize) -> Result<OperatorFamily> {
    linear_diagonal_family(nodes, &[1.0, 3f64.sqrt() / 2.0])
}

/// `Λ_ω = diag(3ω, 2√3ω)`, the canonical dual of [`ramp_family`].
pub fn ramp_dual_family(nodes: usize) -> Result<OperatorFamily> {
    linear_diagonal_family(nodes, &[3.0, 2.0 * 3f64.sqrt()])
}

/// Slope coefficients of [`ramp_dual_family`].
pub fn ramp_dual_slope() -> [f64; 2] {
    [3.0, 2.0 * 3f64.sqrt()]
}

/// Constant identity family on `Aⁿ`; its frame operator is the identity.
pub fn parseval_family(descriptor: AlgebraDescriptor, rank: usize, nodes: usize) -> Result<OperatorFamily> {
    let rule = QuadratureRule::gauss_legendre(0.0, 1.0, nodes)?;
    OperatorFamily::constant(rule, ModuleOperator::identity(descriptor, rank))
}
