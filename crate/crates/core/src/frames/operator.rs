use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::OperatorFamily;
use crate::algebra::{AlgebraDescriptor, AlgebraElement, SINGULARITY_RATIO};
use crate::error::{Error, Result};
use crate::hilbert_module::{ModuleOperator, ModuleVector};
use crate::linalg::{self, CMatrix};

/// Default relative tolerance for the tight / Parseval tie test.
pub const DEFAULT_CLASSIFICATION_TOLERANCE: f64 = 1e-8;

/// The frame operator `S_T x = x·s` with `s = Σᵢ wᵢ Mᵢ Mᵢ*`, plus the
/// eigendecomposition of its flattening.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameOperatorData {
    s: ModuleOperator,
    s_flat: CMatrix,
    eigenvalues: Vec<f64>,
    eigenvectors: CMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    Frame,
    BesselOnly,
    Tight { lambda: f64 },
    Parseval,
    NotBessel,
}

impl Classification {
    pub fn is_frame(&self) -> bool {
        matches!(self, Self::Frame | Self::Tight { .. } | Self::Parseval)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameReport {
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub classification: Classification,
    pub spectrum: Vec<f64>,
    /// `B / A`; absent when `A` is not positive.
    pub condition: Option<f64>,
    pub tolerance: f64,
    pub diagnostics: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Lower,
    Upper,
}

impl OperatorFamily {
    /// Accumulates `s = Σᵢ wᵢ Mᵢ Mᵢ*` in node order and diagonalizes its flattening.
    pub fn frame_operator(&self) -> FrameOperatorData {
        let dim = self.descriptor().dim * self.rank();
        let mut s_flat = CMatrix::zeros(dim, dim);
        for (w, m) in self.rule().weights().iter().zip(self.node_operators()) {
            let f = m.to_flat();
            s_flat += (&f * f.adjoint()).map(|z| z * *w);
        }
        FrameOperatorData::from_flat(self.descriptor(), s_flat)
    }
}

impl FrameOperatorData {
    pub(crate) fn from_flat(descriptor: AlgebraDescriptor, s_flat: CMatrix) -> Self {
        let s = ModuleOperator::from_flat_projected(descriptor, &s_flat);
        let (eigenvalues, eigenvectors) = linalg::hermitian_eigen(&s_flat);
        Self { s, s_flat, eigenvalues, eigenvectors }
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        self.s.descriptor()
    }

    pub fn rank(&self) -> usize {
        self.s.rank()
    }

    /// The frame-operator element as an operator on `H`.
    pub fn s(&self) -> &ModuleOperator {
        &self.s
    }

    pub fn s_flat(&self) -> &CMatrix {
        &self.s_flat
    }

    /// Flattened spectrum, ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &CMatrix {
        &self.eigenvectors
    }

    /// Optimal constants `A = λ_min`, `B = λ_max` of the flattened frame operator.
    pub fn optimal_bounds(&self) -> FrameBounds {
        FrameBounds {
            lower: self.eigenvalues.first().copied().unwrap_or(0.0),
            upper: self.eigenvalues.last().copied().unwrap_or(0.0),
        }
    }

    /// `S_T x = x·s`.
    pub fn apply(&self, x: &ModuleVector) -> Result<ModuleVector> {
        self.s.apply(x)
    }

    pub fn classify(&self, tol: f64) -> FrameReport {
        let FrameBounds { lower, upper } = self.optimal_bounds();
        let finite = self.eigenvalues.iter().all(|v| v.is_finite());
        let classification = if !finite {
            Classification::NotBessel
        } else if lower > tol {
            if upper - lower <= tol * upper {
                let lambda = 0.5 * (lower + upper);
                if (lower - 1.0).abs() <= tol {
                    Classification::Parseval
                } else {
                    Classification::Tight { lambda }
                }
            } else {
                Classification::Frame
            }
        } else {
            Classification::BesselOnly
        };
        let condition = (lower > 0.0 && finite).then(|| upper / lower);
        let diagnostics = match classification {
            Classification::NotBessel => "frame operator has non-finite entries".to_string(),
            Classification::BesselOnly => {
                format!(
                    "lower bound {lower:e} is not above tolerance {tol:e}; only the upper (Bessel) inequality holds"
                )
            }
            _ => format!("frame inequality holds with optimal bounds [{lower}, {upper}]"),
        };
        FrameReport {
            lower_bound: lower,
            upper_bound: upper,
            classification,
            spectrum: self.eigenvalues.clone(),
            condition,
            tolerance: tol,
            diagnostics,
        }
    }

    /// `s⁻¹` as a module operator.
    pub fn inverse(&self) -> Result<ModuleOperator> {
        let FrameBounds { lower, upper } = self.optimal_bounds();
        if !(upper > 0.0) || lower <= SINGULARITY_RATIO * upper {
            return Err(Error::SingularFrameOperator { lambda_min: lower, lambda_max: upper });
        }
        let inv = linalg::spectral_function(&self.eigenvalues, &self.eigenvectors, |v| 1.0 / v);
        Ok(ModuleOperator::from_flat_projected(self.descriptor(), &inv))
    }

    /// A vector `x` with `⟨S_T x, x⟩ = λ ⟨x, x⟩` for the extremal eigenvalue `λ`.
    pub fn extremal_vector(&self, which: Extremum) -> ModuleVector {
        let descriptor = self.descriptor();
        let k = descriptor.dim;
        let n = self.rank();
        let mut flat = CMatrix::zeros(k, n * k);
        if descriptor.is_diagonal() {
            // S_T splits into k independent n×n problems, one per diagonal slot.
            let mut best: Option<(f64, usize, nalgebra::DVector<Complex64>)> = None;
            for slot in 0..k {
                let sub = CMatrix::from_fn(n, n, |r, c| self.s_flat[(r * k + slot, c * k + slot)]);
                let (values, vectors) = linalg::hermitian_eigen(&sub);
                let (value, col) = match which {
                    Extremum::Lower => (values[0], 0),
                    Extremum::Upper => (values[n - 1], n - 1),
                };
                let better = match (&best, which) {
                    (None, _) => true,
                    (Some((v, ..)), Extremum::Lower) => value < *v,
                    (Some((v, ..)), Extremum::Upper) => value > *v,
                };
                if better {
                    best = Some((value, slot, vectors.column(col).into_owned()));
                }
            }
            let (_, slot, v) = best.expect("k >= 1");
            for j in 0..n {
                flat[(slot, j * k + slot)] = v[j].conj();
            }
        } else {
            let col = match which {
                Extremum::Lower => 0,
                Extremum::Upper => n * k - 1,
            };
            for c in 0..n * k {
                flat[(0, c)] = self.eigenvectors[(c, col)].conj();
            }
        }
        ModuleVector::from_flat_unchecked(descriptor, &flat)
    }

    /// `⟨S_T x, x⟩`.
    pub fn quadratic_form(&self, x: &ModuleVector) -> Result<AlgebraElement> {
        self.apply(x)?.inner_product(x)
    }

    /// `‖I − λ s‖` over the flattened space.
    pub fn relaxation_norm(&self, lambda: f64) -> f64 {
        let n = self.s_flat.nrows();
        let m = CMatrix::identity(n, n) - self.s_flat.map(|z| z * Complex64::new(lambda, 0.0));
        linalg::spectral_norm(&m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::QuadratureRule;

    fn ramp() -> OperatorFamily {
        let rule = QuadratureRule::gauss_legendre(0.0, 1.0, 2).unwrap();
        let c1 = ModuleOperator::scalar(AlgebraElement::real_diagonal(&[1.0, 3f64.sqrt() / 2.0]).unwrap());
        let c0 = ModuleOperator::zero(c1.descriptor(), 1);
        OperatorFamily::parametric(rule, vec![c0, c1]).unwrap()
    }

    #[test]
    fn ramp_frame_operator() {
        let data = ramp().frame_operator();
        let d = data.s().block(0, 0).diagonal_entries();
        assert!((d[0].re - 1.0 / 3.0).abs() < 1e-15);
        assert!((d[1].re - 0.25).abs() < 1e-15);
        let b = data.optimal_bounds();
        assert!((b.lower - 0.25).abs() < 1e-15 && (b.upper - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(data.classify(1e-8).classification, Classification::Frame);
    }

    #[test]
    fn constant_identity_is_parseval() {
        let rule = QuadratureRule::gauss_legendre(0.0, 1.0, 4).unwrap();
        let d = AlgebraDescriptor::full(2).unwrap();
        let data = OperatorFamily::constant(rule, ModuleOperator::identity(d, 2)).unwrap().frame_operator();
        assert_eq!(data.classify(1e-8).classification, Classification::Parseval);
    }

    #[test]
    fn equal_ramp_is_tight() {
        let rule = QuadratureRule::gauss_legendre(0.0, 1.0, 8).unwrap();
        let c1 = ModuleOperator::scalar(AlgebraElement::real_diagonal(&[1.0, 1.0]).unwrap());
        let fam = OperatorFamily::parametric(rule, vec![ModuleOperator::zero(c1.descriptor(), 1), c1]).unwrap();
        match fam.frame_operator().classify(1e-8).classification {
            Classification::Tight { lambda } => assert!((lambda - 1.0 / 3.0).abs() < 1e-14),
            other => panic!("expected tight, got {other:?}"),
        }
    }

    #[test]
    fn rank_deficient_is_bessel_only() {
        let rule = QuadratureRule::gauss_legendre(0.0, 1.0, 4).unwrap();
        let c1 = ModuleOperator::scalar(AlgebraElement::real_diagonal(&[1.0, 0.0]).unwrap());
        let fam = OperatorFamily::parametric(rule, vec![c1]).unwrap();
        let data = fam.frame_operator();
        let report = data.classify(1e-8);
        assert_eq!(report.classification, Classification::BesselOnly);
        assert_eq!(report.condition, None);
        assert!(matches!(data.inverse(), Err(Error::SingularFrameOperator { .. })));
    }

    #[test]
    fn extremal_vectors_attain_bounds() {
        let data = ramp().frame_operator();
        for (which, expected) in [(Extremum::Lower, 0.25), (Extremum::Upper, 1.0 / 3.0)] {
            let x = data.extremal_vector(which);
            let q = data.quadratic_form(&x).unwrap();
            let g = x.inner_product(&x).unwrap();
            let diff = q.sub(&g.scale_real(expected)).unwrap();
            assert!(diff.operator_norm() < 1e-14);
            assert!(x.norm() > 0.5);
        }
    }
}
