//! Canonical duals `{T_ω S_T⁻¹}` and verification of dual pairs.

use serde::{Deserialize, Serialize};

use crate::algebra::SINGULARITY_RATIO;
use crate::error::{Error, Result};
use crate::frames::{FrameBounds, OperatorFamily};
use crate::hilbert_module::ModuleOperator;
use crate::linalg::{self, CMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualPairReport {
    pub is_dual: bool,
    /// `‖∫ T_ω* Λ_ω dμ − I‖`.
    pub resolution_residual: f64,
    /// Optimal bounds of the candidate dual family.
    pub dual_bounds: FrameBounds,
    pub tolerance: f64,
}

fn require_frame(family: &OperatorFamily) -> Result<crate::frames::FrameOperatorData> {
    let data = family.frame_operator();
    let bounds = data.optimal_bounds();
    if !(bounds.upper > 0.0) || bounds.lower <= SINGULARITY_RATIO * bounds.upper {
        return Err(Error::NotAFrame { lower_bound: bounds.lower });
    }
    Ok(data)
}

/// The canonical dual: node operators `s⁻¹·M_ω` (apply `S_T⁻¹`, then `T_ω`).
///
/// Parametric families stay parametric, with every coefficient premultiplied by `s⁻¹`.
pub fn canonical_dual(family: &OperatorFamily) -> Result<OperatorFamily> {
    let data = require_frame(family)?;
    family.precompose(&data.inverse()?)
}

/// The operator `x ↦ ∫ T_ω*(Λ_ω x) dμ`, i.e. blocks `Σ wᵢ Nᵢ Mᵢ*`.
pub fn resolution_operator(primal: &OperatorFamily, dual: &OperatorFamily) -> Result<ModuleOperator> {
    primal.ensure_compatible(dual)?;
    let dim = primal.descriptor().dim * primal.rank();
    let mut acc = CMatrix::zeros(dim, dim);
    for ((w, m), nu) in primal.rule().weights().iter().zip(primal.node_operators()).zip(dual.node_operators()) {
        acc += (nu.to_flat() * m.to_flat().adjoint()).map(|z| z * *w);
    }
    Ok(ModuleOperator::from_flat_projected(primal.descriptor(), &acc))
}

pub fn is_dual_pair(primal: &OperatorFamily, dual: &OperatorFamily, tol: f64) -> Result<DualPairReport> {
    let r = resolution_operator(primal, dual)?;
    let dim = r.descriptor().dim * r.rank();
    let resolution_residual = linalg::spectral_norm(&(r.to_flat() - CMatrix::identity(dim, dim)));
    Ok(DualPairReport {
        is_dual: resolution_residual <= tol,
        resolution_residual,
        dual_bounds: dual.frame_operator().optimal_bounds(),
        tolerance: tol,
    })
}

/// Optimal bounds of the canonical dual; these equal `(1/B, 1/A)` of the primal.
pub fn dual_bounds(family: &OperatorFamily) -> Result<FrameBounds> {
    Ok(canonical_dual(family)?.frame_operator().optimal_bounds())
}
