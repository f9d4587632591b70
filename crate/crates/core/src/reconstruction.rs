//! Recovering `x` from `y = S_T x`, either by applying `s⁻¹` directly or by
//! the relaxation iteration `x_{m+1} = x_m + λ(y − x_m·s)`.
//!
//! For a frame with bounds `A, B` and `λ ∈ (0, 2/B)` the residual contracts by
//! `q = max(|1 − λA|, |1 − λB|)` per step. `λ = 1/B` gives `q = (B − A)/B`,
//! and `λ = 2/(A + B)` gives the smaller `q = (B − A)/(B + A)`.

use serde::{Deserialize, Serialize};

use crate::algebra::SINGULARITY_RATIO;
use crate::error::{Error, Result};
use crate::frames::{FrameBounds, FrameOperatorData, OperatorFamily};
use crate::hilbert_module::{L2Family, ModuleVector};
use crate::linalg;

pub const DEFAULT_MAX_ITERATIONS: usize = 10_000;

/// Relaxation parameter choice for the iterative method.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relaxation {
    /// `λ = 1/B`.
    InverseUpper,
    /// `λ = 2/(A + B)`.
    Balanced,
    Fixed(f64),
}

impl Relaxation {
    pub fn resolve(self, bounds: FrameBounds) -> f64 {
        match self {
            Self::InverseUpper => 1.0 / bounds.upper,
            Self::Balanced => 2.0 / (bounds.lower + bounds.upper),
            Self::Fixed(lambda) => lambda,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Method {
    Direct,
    Neumann { lambda: f64, contraction: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionResult {
    pub x_hat: ModuleVector,
    /// Iterates computed, counting `x₀ = λy` as the first; zero for the direct method.
    pub iterations: usize,
    /// Relative residuals `‖y − x_m·s‖ / (‖y‖ + 1)`, one per iterate.
    pub residual_history: Vec<f64>,
    pub method: Method,
}

impl ReconstructionResult {
    pub fn final_residual(&self) -> f64 {
        self.residual_history.last().copied().unwrap_or(0.0)
    }
}

/// Contraction factor `max(|1 − λA|, |1 − λB|)`.
pub fn contraction_factor(bounds: FrameBounds, lambda: f64) -> f64 {
    (1.0 - lambda * bounds.lower).abs().max((1.0 - lambda * bounds.upper).abs())
}

fn relative_residual(data: &FrameOperatorData, x: &ModuleVector, y: &ModuleVector) -> Result<f64> {
    let r = y.sub(&data.apply(x)?)?;
    Ok(r.norm() / (y.norm() + 1.0))
}

/// `x̂ = y·s⁻¹`.
pub fn reconstruct_direct(data: &FrameOperatorData, y: &ModuleVector) -> Result<ReconstructionResult> {
    let inv = data.inverse()?;
    let x_hat = inv.apply(y)?;
    let residual = relative_residual(data, &x_hat, y)?;
    Ok(ReconstructionResult { x_hat, iterations: 0, residual_history: vec![residual], method: Method::Direct })
}

/// Relaxation iteration from `x₀ = λy`, stopping once the relative residual is `≤ tol`.
pub fn reconstruct_neumann(
    data: &FrameOperatorData,
    y: &ModuleVector,
    relaxation: Relaxation,
    tol: f64,
    max_iter: usize,
) -> Result<ReconstructionResult> {
    let bounds = data.optimal_bounds();
    if !(bounds.upper > 0.0) || bounds.lower <= SINGULARITY_RATIO * bounds.upper {
        return Err(Error::NotAFrame { lower_bound: bounds.lower });
    }
    let lambda = relaxation.resolve(bounds);
    if !(lambda > 0.0 && lambda < 2.0 / bounds.upper) {
        return Err(Error::InvalidArgument(format!(
            "relaxation parameter {lambda} outside (0, {})",
            2.0 / bounds.upper
        )));
    }
    if data.descriptor() != y.descriptor() || data.rank() != y.rank() {
        return Err(Error::ShapeMismatch { what: "signal rank", expected: data.rank(), found: y.rank() });
    }

    let s = data.s_flat();
    let y_flat = y.to_flat();
    let scale = y.norm() + 1.0;
    let mut x = y_flat.map(|z| z * lambda);
    let mut history = Vec::new();
    loop {
        let r = &y_flat - &x * s;
        let residual = linalg::spectral_norm(&r) / scale;
        history.push(residual);
        if residual <= tol {
            break;
        }
        if history.len() >= max_iter {
            return Err(Error::NoConvergence { iterations: history.len(), residual });
        }
        x += r.map(|z| z * lambda);
    }
    Ok(ReconstructionResult {
        x_hat: ModuleVector::from_flat_unchecked(data.descriptor(), &x),
        iterations: history.len(),
        residual_history: history,
        method: Method::Neumann { lambda, contraction: contraction_factor(bounds, lambda) },
    })
}

/// `x = S_T⁻¹ ∫ T_ω* c_ω dμ` for analysis coefficients `c = R_T x`.
pub fn reconstruct_from_coefficients(
    family: &OperatorFamily,
    data: &FrameOperatorData,
    coefficients: &L2Family,
) -> Result<ModuleVector> {
    data.inverse()?.apply(&family.synthesis(coefficients)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraDescriptor, AlgebraElement};
    use crate::hilbert_module::ModuleOperator;
    use crate::quadrature::QuadratureRule;

    fn ramp_data() -> FrameOperatorData {
        let rule = QuadratureRule::gauss_legendre(0.0, 1.0, 2).unwrap();
        let c1 = ModuleOperator::scalar(AlgebraElement::real_diagonal(&[1.0, 3f64.sqrt() / 2.0]).unwrap());
        OperatorFamily::parametric(rule, vec![ModuleOperator::zero(c1.descriptor(), 1), c1]).unwrap().frame_operator()
    }

    #[test]
    fn direct_inverts_ramp() {
        let data = ramp_data();
        let y = ModuleVector::new(vec![AlgebraElement::real_diagonal(&[1.0 / 3.0, 0.25]).unwrap()]).unwrap();
        let res = reconstruct_direct(&data, &y).unwrap();
        let d = res.x_hat.components()[0].diagonal_entries();
        assert!((d[0].re - 1.0).abs() < 1e-14 && (d[1].re - 1.0).abs() < 1e-14);
        assert_eq!(res.iterations, 0);
        assert!(res.final_residual() < 1e-15);
    }

    #[test]
    fn neumann_on_ramp() {
        let data = ramp_data();
        let y = ModuleVector::ones(data.descriptor(), 1);
        let res = reconstruct_neumann(&data, &y, Relaxation::InverseUpper, 1e-12, 100).unwrap();
        assert!(res.iterations <= 25, "{} iterations", res.iterations);
        match res.method {
            Method::Neumann { lambda, contraction } => {
                assert!((lambda - 3.0).abs() < 1e-12);
                assert!((contraction - 0.25).abs() < 1e-12);
            }
            Method::Direct => unreachable!(),
        }
        let balanced = reconstruct_neumann(&data, &y, Relaxation::Balanced, 1e-12, 100).unwrap();
        assert!(balanced.iterations < res.iterations);
    }

    #[test]
    fn parseval_converges_immediately() {
        let rule = QuadratureRule::gauss_legendre(0.0, 1.0, 3).unwrap();
        let d = AlgebraDescriptor::full(2).unwrap();
        let data = OperatorFamily::constant(rule, ModuleOperator::identity(d, 2)).unwrap().frame_operator();
        let y = crate::sampling::random_vector(d, 2, &mut crate::sampling::rng_from_seed(5));
        let res = reconstruct_neumann(&data, &y, Relaxation::Fixed(1.0), 1e-12, 10).unwrap();
        assert_eq!(res.iterations, 1);
        let direct = reconstruct_direct(&data, &y).unwrap();
        assert!(direct.x_hat.sub(&y).unwrap().norm() < 1e-14);
    }

    #[test]
    fn error_paths() {
        let data = ramp_data();
        let y = ModuleVector::ones(data.descriptor(), 1);
        assert!(matches!(
            reconstruct_neumann(&data, &y, Relaxation::Fixed(7.0), 1e-12, 100),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            reconstruct_neumann(&data, &y, Relaxation::InverseUpper, 1e-300, 5),
            Err(Error::NoConvergence { iterations: 5, .. })
        ));

        let rule = QuadratureRule::counting(2).unwrap();
        let proj = ModuleOperator::scalar(AlgebraElement::real_diagonal(&[1.0, 0.0]).unwrap());
        let bessel = OperatorFamily::constant(rule, proj).unwrap().frame_operator();
        assert!(matches!(reconstruct_direct(&bessel, &y), Err(Error::SingularFrameOperator { .. })));
        assert!(matches!(
            reconstruct_neumann(&bessel, &y, Relaxation::InverseUpper, 1e-12, 10),
            Err(Error::NotAFrame { .. })
        ));
    }
}
