use serde::{Deserialize, Serialize};

use super::{FrameBounds, OperatorFamily};
use crate::error::Result;
use crate::hilbert_module::{L2Family, ModuleOperator, ModuleVector};
use crate::linalg::{self, CMatrix};
use crate::sampling;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BelowBoundedness {
    pub bounded_below: bool,
    pub sigma_min: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Independence {
    pub independent: bool,
    pub kernel_dim: usize,
    /// Complex dimension of the discretized `l²(Ω, H)`.
    pub domain_dim: usize,
    pub synthesis_rank: usize,
}

impl OperatorFamily {
    /// `R_T x = {T_ω x}` at every node.
    pub fn analysis(&self, x: &ModuleVector) -> Result<L2Family> {
        let samples = self.node_operators().iter().map(|m| m.apply(x)).collect::<Result<Vec<_>>>()?;
        L2Family::new(self.rule().clone(), samples)
    }

    /// `R_T* {y_ω} = Σᵢ wᵢ T_{ωᵢ}* y_{ωᵢ}`.
    pub fn synthesis(&self, y: &L2Family) -> Result<ModuleVector> {
        self.rule().ensure_same(y.rule())?;
        let mut acc = ModuleVector::zero(self.descriptor(), self.rank());
        for ((w, m), yi) in self.rule().weights().iter().zip(self.node_operators()).zip(y.samples()) {
            acc = acc.add(&m.adjoint().apply(yi)?.scale_real(*w))?;
        }
        Ok(acc)
    }

    /// Verifies `A⟨x,x⟩ ⪯ ∫⟨T_ω x, T_ω x⟩ dμ ⪯ B⟨x,x⟩` directly on each sample vector.
    pub fn check_frame_inequality(&self, lower: f64, upper: f64, xs: &[ModuleVector], tol: f64) -> Result<bool> {
        for x in xs {
            let analyzed = self.analysis(x)?;
            let middle = analyzed.inner_product(&analyzed)?;
            let gram = x.inner_product(x)?;
            if !gram.scale_real(lower).loewner_leq(&middle, tol)?
                || !middle.loewner_leq(&gram.scale_real(upper), tol)?
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Min and max of `‖⟨S_T x, x⟩‖` over `sample_count` random unit vectors.
    pub fn norm_bounds_estimate(&self, sample_count: usize, seed: u64) -> FrameBounds {
        let data = self.frame_operator();
        let mut rng = sampling::rng_from_seed(seed);
        let mut lower = f64::INFINITY;
        let mut upper = f64::NEG_INFINITY;
        for _ in 0..sample_count.max(1) {
            let x = sampling::random_unit_vector(self.descriptor(), self.rank(), &mut rng);
            let value = data.quadratic_form(&x).expect("shapes match").operator_norm();
            lower = lower.min(value);
            upper = upper.max(value);
        }
        FrameBounds { lower, upper }
    }

    /// Smallest singular value of the weighted analysis operator (blocks scaled by `√wᵢ`).
    pub fn below_bounded_check(&self, tol: f64) -> BelowBoundedness {
        let sv = linalg::singular_values(&self.weighted_analysis_matrix());
        let sigma_min = sv.last().copied().unwrap_or(0.0);
        BelowBoundedness { bounded_below: sigma_min > tol, sigma_min }
    }

    /// Numerical kernel of the synthesis map on the discretized `l²(Ω, H)`.
    ///
    /// Singular values at or below `tol·σ_max` count as zero.
    pub fn independence_check(&self, tol: f64) -> Independence {
        let synth = self.synthesis_matrix();
        let domain_dim = synth.ncols();
        let sv = linalg::singular_values(&synth);
        let sigma_max = sv.first().copied().unwrap_or(0.0);
        let synthesis_rank = if sigma_max > 0.0 { sv.iter().filter(|&&s| s > tol * sigma_max).count() } else { 0 };
        let kernel_dim = domain_dim - synthesis_rank;
        Independence { independent: kernel_dim == 0, kernel_dim, domain_dim, synthesis_rank }
    }

    /// Coordinates of the analysis operator in the standard basis of `H`
    /// (descriptor basis in each component); shape `(N·n·b) × (n·b)`.
    pub fn weighted_analysis_matrix(&self) -> CMatrix {
        let basis = module_basis(self);
        let dim = basis.len();
        let nodes = self.rule().len();
        let mut out = CMatrix::zeros(nodes * dim, dim);
        for (col, e) in basis.iter().enumerate() {
            for (i, (w, m)) in self.rule().weights().iter().zip(self.node_operators()).enumerate() {
                let image = m.apply(e).expect("basis matches family");
                let coords = coordinates(&image);
                let sw = w.sqrt();
                for (r, z) in coords.iter().enumerate() {
                    out[(i * dim + r, col)] = z * sw;
                }
            }
        }
        out
    }

    /// Coordinates of the synthesis map `{y_ω} ↦ Σ wᵢ T_{ωᵢ}* yᵢ`; shape `(n·b) × (N·n·b)`.
    pub fn synthesis_matrix(&self) -> CMatrix {
        let basis = module_basis(self);
        let dim = basis.len();
        let nodes = self.rule().len();
        let mut out = CMatrix::zeros(dim, nodes * dim);
        for (i, (w, m)) in self.rule().weights().iter().zip(self.node_operators()).enumerate() {
            let adj: ModuleOperator = m.adjoint();
            for (j, e) in basis.iter().enumerate() {
                let coords = coordinates(&adj.apply(e).expect("basis matches family"));
                for (r, z) in coords.iter().enumerate() {
                    out[(r, i * dim + j)] = z * *w;
                }
            }
        }
        out
    }
}

/// Orthonormal basis `{E_rc placed in component j}` of `H` for the trace inner product.
fn module_basis(family: &OperatorFamily) -> Vec<ModuleVector> {
    let descriptor = family.descriptor();
    let n = family.rank();
    let k = descriptor.dim;
    let mut basis = Vec::with_capacity(n * descriptor.basis_len());
    for j in 0..n {
        for (r, c) in descriptor.basis_positions() {
            let mut flat = CMatrix::zeros(k, n * k);
            flat[(r, j * k + c)] = linalg::ONE;
            basis.push(ModuleVector::from_flat_unchecked(descriptor, &flat));
        }
    }
    basis
}

fn coordinates(x: &ModuleVector) -> Vec<num_complex::Complex64> {
    let descriptor = x.descriptor();
    x.components()
        .iter()
        .flat_map(|c| descriptor.basis_positions().into_iter().map(move |(r, col)| c.matrix()[(r, col)]))
        .collect()
}
