//! The left Hilbert module `H = Aⁿ` over a matrix algebra `A`.
//!
//! Vectors are row tuples `(x₁, …, xₙ)` with `⟨x, y⟩ = Σ xᵢ yᵢ*`. Adjointable
//! operators are `n × n` matrices over `A` acting on the right, `x ↦ x·M`,
//! which makes them `A`-linear for the left action `a·x = (a x₁, …, a xₙ)`.
//!
//! The row flattening `x ↦ [x₁ | … | xₙ]` (a `k × nk` complex matrix) turns
//! the module inner product into `X X*` and an operator into an `nk × nk`
//! block matrix, so module statements become ordinary matrix statements.

use num_complex::Complex64;

use crate::algebra::{AlgebraDescriptor, AlgebraElement};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::quadrature::QuadratureRule;

#[derive(Debug, Clone, PartialEq)]
pub struct ModuleVector {
    descriptor: AlgebraDescriptor,
    components: Vec<AlgebraElement>,
}

impl ModuleVector {
    pub fn new(components: Vec<AlgebraElement>) -> Result<Self> {
        let first = components.first().ok_or(Error::ShapeMismatch { what: "module rank", expected: 1, found: 0 })?;
        let descriptor = first.descriptor();
        for c in &components {
            descriptor.ensure_same(&c.descriptor())?;
        }
        Ok(Self { descriptor, components })
    }

    pub fn zero(descriptor: AlgebraDescriptor, rank: usize) -> Self {
        Self { descriptor, components: vec![AlgebraElement::zero(descriptor); rank] }
    }

    /// The vector with every component equal to the identity of `A`.
    pub fn ones(descriptor: AlgebraDescriptor, rank: usize) -> Self {
        Self { descriptor, components: vec![AlgebraElement::identity(descriptor); rank] }
    }

    /// Inverse of [`ModuleVector::to_flat`]; diagonal conformance is checked.
    pub fn from_flat(descriptor: AlgebraDescriptor, flat: &CMatrix) -> Result<Self> {
        let k = descriptor.dim;
        if flat.nrows() != k || !flat.ncols().is_multiple_of(k) || flat.ncols() == 0 {
            return Err(Error::ShapeMismatch { what: "flattened vector columns", expected: k, found: flat.ncols() });
        }
        let components = (0..flat.ncols() / k)
            .map(|j| AlgebraElement::from_matrix(descriptor, flat.columns(j * k, k).into_owned()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { descriptor, components })
    }

    pub(crate) fn from_flat_unchecked(descriptor: AlgebraDescriptor, flat: &CMatrix) -> Self {
        let k = descriptor.dim;
        let components = (0..flat.ncols() / k)
            .map(|j| {
                AlgebraElement::from_matrix_unchecked(
                    descriptor,
                    project(descriptor, flat.columns(j * k, k).into_owned()),
                )
            })
            .collect();
        Self { descriptor, components }
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        self.descriptor
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[AlgebraElement] {
        &self.components
    }

    /// `k × nk` row flattening `[x₁ | … | xₙ]`.
    pub fn to_flat(&self) -> CMatrix {
        let k = self.descriptor.dim;
        let mut flat = CMatrix::zeros(k, k * self.rank());
        for (j, c) in self.components.iter().enumerate() {
            flat.columns_mut(j * k, k).copy_from(c.matrix());
        }
        flat
    }

    fn ensure_compatible(&self, other: &Self) -> Result<()> {
        self.descriptor.ensure_same(&other.descriptor)?;
        if self.rank() != other.rank() {
            return Err(Error::ShapeMismatch { what: "module rank", expected: self.rank(), found: other.rank() });
        }
        Ok(())
    }

    /// Left module action `a·x`.
    pub fn left_mul(&self, a: &AlgebraElement) -> Result<Self> {
        self.descriptor.ensure_same(&a.descriptor())?;
        Ok(Self {
            descriptor: self.descriptor,
            components: self.components.iter().map(|c| a.mul_unchecked(c)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ensure_compatible(other)?;
        let components = self.components.iter().zip(&other.components).map(|(a, b)| {
            let mut sum = a.clone();
            sum.add_assign_unchecked(b);
            sum
        });
        Ok(Self { descriptor: self.descriptor, components: components.collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self { descriptor: self.descriptor, components: self.components.iter().map(|c| c.scale(factor)).collect() }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// `⟨x, y⟩ = Σ xᵢ yᵢ*`.
    pub fn inner_product(&self, other: &Self) -> Result<AlgebraElement> {
        self.ensure_compatible(other)?;
        let mut acc = AlgebraElement::zero(self.descriptor);
        for (x, y) in self.components.iter().zip(&other.components) {
            acc.add_assign_unchecked(&x.mul_unchecked(&y.adjoint()));
        }
        Ok(acc)
    }

    /// `‖x‖ = ‖⟨x, x⟩‖^{1/2}`.
    pub fn norm(&self) -> f64 {
        self.inner_product(self).map(|g| g.operator_norm().sqrt()).unwrap_or(0.0)
    }
}

/// Projects a matrix onto the subspace allowed by the descriptor.
fn project(descriptor: AlgebraDescriptor, mut m: CMatrix) -> CMatrix {
    if descriptor.is_diagonal() {
        let k = descriptor.dim;
        for c in 0..k {
            for r in 0..k {
                if r != c {
                    m[(r, c)] = linalg::ZERO;
                }
            }
        }
    }
    m
}

/// An adjointable operator on `Aⁿ`: `x ↦ x·M` with `(x·M)ᵢ = Σⱼ xⱼ Mⱼᵢ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleOperator {
    descriptor: AlgebraDescriptor,
    rank: usize,
    /// Row-major `rank × rank` blocks.
    blocks: Vec<AlgebraElement>,
}

impl ModuleOperator {
    /// Builds an operator from row-major blocks.
    pub fn new(rank: usize, blocks: Vec<AlgebraElement>) -> Result<Self> {
        if rank == 0 || blocks.len() != rank * rank {
            return Err(Error::ShapeMismatch {
                what: "operator block count",
                expected: rank * rank,
                found: blocks.len(),
            });
        }
        let descriptor = blocks[0].descriptor();
        for b in &blocks {
            descriptor.ensure_same(&b.descriptor())?;
        }
        Ok(Self { descriptor, rank, blocks })
    }

    /// Rank-one module (`n = 1`) operator: right multiplication by `a`.
    pub fn scalar(a: AlgebraElement) -> Self {
        Self { descriptor: a.descriptor(), rank: 1, blocks: vec![a] }
    }

    pub fn zero(descriptor: AlgebraDescriptor, rank: usize) -> Self {
        Self { descriptor, rank, blocks: vec![AlgebraElement::zero(descriptor); rank * rank] }
    }

    pub fn identity(descriptor: AlgebraDescriptor, rank: usize) -> Self {
        let blocks = (0..rank * rank)
            .map(|idx| {
                if idx / rank == idx % rank {
                    AlgebraElement::identity(descriptor)
                } else {
                    AlgebraElement::zero(descriptor)
                }
            })
            .collect();
        Self { descriptor, rank, blocks }
    }

    pub fn from_flat(descriptor: AlgebraDescriptor, flat: &CMatrix) -> Result<Self> {
        let k = descriptor.dim;
        if flat.nrows() != flat.ncols() || !flat.nrows().is_multiple_of(k) || flat.nrows() == 0 {
            return Err(Error::ShapeMismatch { what: "flattened operator size", expected: k, found: flat.nrows() });
        }
        let rank = flat.nrows() / k;
        let blocks = (0..rank * rank)
            .map(|idx| {
                let (r, c) = (idx / rank, idx % rank);
                AlgebraElement::from_matrix(descriptor, flat.view((r * k, c * k), (k, k)).into_owned())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { descriptor, rank, blocks })
    }

    /// Like `from_flat`, but entries outside the descriptor's pattern are dropped.
    pub(crate) fn from_flat_projected(descriptor: AlgebraDescriptor, flat: &CMatrix) -> Self {
        let k = descriptor.dim;
        let rank = flat.nrows() / k;
        let blocks = (0..rank * rank)
            .map(|idx| {
                let (r, c) = (idx / rank, idx % rank);
                AlgebraElement::from_matrix_unchecked(
                    descriptor,
                    project(descriptor, flat.view((r * k, c * k), (k, k)).into_owned()),
                )
            })
            .collect();
        Self { descriptor, rank, blocks }
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        self.descriptor
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn block(&self, row: usize, col: usize) -> &AlgebraElement {
        &self.blocks[row * self.rank + col]
    }

    pub fn blocks(&self) -> &[AlgebraElement] {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(AlgebraElement::is_zero)
    }

    /// `nk × nk` block matrix; block `(j, i)` is `Mⱼᵢ`.
    pub fn to_flat(&self) -> CMatrix {
        let k = self.descriptor.dim;
        let mut flat = CMatrix::zeros(k * self.rank, k * self.rank);
        for r in 0..self.rank {
            for c in 0..self.rank {
                flat.view_mut((r * k, c * k), (k, k)).copy_from(self.block(r, c).matrix());
            }
        }
        flat
    }

    pub(crate) fn ensure_compatible(&self, other: &Self) -> Result<()> {
        self.descriptor.ensure_same(&other.descriptor)?;
        if self.rank != other.rank {
            return Err(Error::ShapeMismatch { what: "operator rank", expected: self.rank, found: other.rank });
        }
        Ok(())
    }

    fn ensure_vector(&self, x: &ModuleVector) -> Result<()> {
        self.descriptor.ensure_same(&x.descriptor())?;
        if self.rank != x.rank() {
            return Err(Error::ShapeMismatch {
                what: "operator rank vs vector rank",
                expected: self.rank,
                found: x.rank(),
            });
        }
        Ok(())
    }

    /// `x·M`, computed blockwise.
    pub fn apply(&self, x: &ModuleVector) -> Result<ModuleVector> {
        self.ensure_vector(x)?;
        let components = (0..self.rank)
            .map(|i| {
                let mut acc = AlgebraElement::zero(self.descriptor);
                for (j, xj) in x.components().iter().enumerate() {
                    acc.add_assign_unchecked(&xj.mul_unchecked(self.block(j, i)));
                }
                acc
            })
            .collect();
        Ok(ModuleVector { descriptor: self.descriptor, components })
    }

    /// Blockwise adjoint, `(M*)ᵢⱼ = (Mⱼᵢ)*`.
    pub fn adjoint(&self) -> Self {
        let blocks =
            (0..self.rank * self.rank).map(|idx| self.block(idx % self.rank, idx / self.rank).adjoint()).collect();
        Self { descriptor: self.descriptor, rank: self.rank, blocks }
    }

    /// Block product `self·rhs`; applying it equals applying `self` then `rhs`.
    pub fn product(&self, rhs: &Self) -> Result<Self> {
        self.ensure_compatible(rhs)?;
        Ok(self.product_unchecked(rhs))
    }

    pub(crate) fn product_unchecked(&self, rhs: &Self) -> Self {
        let n = self.rank;
        let blocks = (0..n * n)
            .map(|idx| {
                let (r, c) = (idx / n, idx % n);
                let mut acc = AlgebraElement::zero(self.descriptor);
                for m in 0..n {
                    acc.add_assign_unchecked(&self.block(r, m).mul_unchecked(rhs.block(m, c)));
                }
                acc
            })
            .collect();
        Self { descriptor: self.descriptor, rank: n, blocks }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.ensure_compatible(rhs)?;
        let blocks = self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| {
            let mut s = a.clone();
            s.add_assign_unchecked(b);
            s
        });
        Ok(Self { descriptor: self.descriptor, rank: self.rank, blocks: blocks.collect() })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            descriptor: self.descriptor,
            rank: self.rank,
            blocks: self.blocks.iter().map(|b| b.scale(factor)).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Operator norm, the largest singular value of the flattened matrix.
    pub fn norm(&self) -> f64 {
        linalg::spectral_norm(&self.to_flat())
    }

    /// Checks `⟨Mx, Mx⟩ ⪯ ‖M‖² ⟨x, x⟩`.
    pub fn norm_domination_check(&self, x: &ModuleVector, tol: f64) -> Result<bool> {
        let mx = self.apply(x)?;
        let lhs = mx.inner_product(&mx)?;
        let rhs = x.inner_product(x)?.scale_real(self.norm().powi(2));
        lhs.loewner_leq(&rhs, tol)
    }
}

/// A node-sampled element `{x_ω}` of `l²(Ω, H)`.
#[derive(Debug, Clone, PartialEq)]
pub struct L2Family {
    rule: QuadratureRule,
    samples: Vec<ModuleVector>,
}

impl L2Family {
    pub fn new(rule: QuadratureRule, samples: Vec<ModuleVector>) -> Result<Self> {
        rule.ensure_len(samples.len())?;
        let first = &samples[0];
        for s in &samples {
            first.ensure_compatible(s)?;
        }
        Ok(Self { rule, samples })
    }

    pub fn zero(rule: QuadratureRule, descriptor: AlgebraDescriptor, rank: usize) -> Self {
        let samples = vec![ModuleVector::zero(descriptor, rank); rule.len()];
        Self { rule, samples }
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    pub fn samples(&self) -> &[ModuleVector] {
        &self.samples
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        self.samples[0].descriptor()
    }

    pub fn rank(&self) -> usize {
        self.samples[0].rank()
    }

    /// `⟨X, Y⟩ = Σᵢ wᵢ ⟨x_{ωᵢ}, y_{ωᵢ}⟩`.
    pub fn inner_product(&self, other: &Self) -> Result<AlgebraElement> {
        self.rule.ensure_same(&other.rule)?;
        let terms =
            self.samples.iter().zip(&other.samples).map(|(x, y)| x.inner_product(y)).collect::<Result<Vec<_>>>()?;
        self.rule.integrate(&terms)
    }

    /// `Σᵢ wᵢ x_{ωᵢ}`, the integral of the family itself.
    pub fn integral(&self) -> ModuleVector {
        let mut acc = ModuleVector::zero(self.descriptor(), self.rank());
        for (w, x) in self.rule.weights().iter().zip(&self.samples) {
            acc = acc.add(&x.scale_real(*w)).expect("samples share shape");
        }
        acc
    }

    /// Applies `M` at every node.
    pub fn map_operator(&self, m: &ModuleOperator) -> Result<Self> {
        let samples = self.samples.iter().map(|x| m.apply(x)).collect::<Result<Vec<_>>>()?;
        Ok(Self { rule: self.rule.clone(), samples })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ramp_operator(w: f64) -> ModuleOperator {
        ModuleOperator::scalar(AlgebraElement::real_diagonal(&[w, 3f64.sqrt() * w / 2.0]).unwrap())
    }

    #[test]
    fn diagonal_inner_product() {
        let x = ModuleVector::new(vec![AlgebraElement::diagonal(&[c(1.0, 2.0), c(0.0, 3.0)]).unwrap()]).unwrap();
        let y = ModuleVector::new(vec![AlgebraElement::diagonal(&[c(2.0, -1.0), c(1.0, 1.0)]).unwrap()]).unwrap();
        let ip = x.inner_product(&y).unwrap();
        let d = ip.diagonal_entries();
        assert_eq!(d[0], c(1.0, 2.0) * c(2.0, -1.0).conj());
        assert_eq!(d[1], c(0.0, 3.0) * c(1.0, 1.0).conj());
        assert_eq!(ip.descriptor(), x.descriptor());
    }

    #[test]
    fn identity_vector_has_identity_gram() {
        let d = AlgebraDescriptor::full(3).unwrap();
        let x = ModuleVector::ones(d, 1);
        assert_eq!(x.inner_product(&x).unwrap(), AlgebraElement::identity(d));
    }

    #[test]
    fn inner_product_rejects_mismatch() {
        let d = AlgebraDescriptor::diagonal(2).unwrap();
        let x = ModuleVector::ones(d, 1);
        let y = ModuleVector::ones(d, 2);
        assert!(x.inner_product(&y).is_err());
        let z = ModuleVector::ones(AlgebraDescriptor::full(2).unwrap(), 1);
        assert!(x.inner_product(&z).is_err());
    }

    #[test]
    fn norm_examples() {
        let x = ModuleVector::new(vec![AlgebraElement::real_diagonal(&[3.0, 4.0]).unwrap()]).unwrap();
        assert!((x.norm() - 4.0).abs() < 1e-15);
        assert_eq!(ModuleVector::zero(x.descriptor(), 3).norm(), 0.0);
    }

    #[test]
    fn ramp_operator_action() {
        let x = ModuleVector::new(vec![AlgebraElement::diagonal(&[c(1.0, -1.0), c(2.0, 0.5)]).unwrap()]).unwrap();
        let w = 0.7;
        let y = ramp_operator(w).apply(&x).unwrap();
        let d = y.components()[0].diagonal_entries();
        assert!((d[0] - c(1.0, -1.0) * w).norm() < 1e-15);
        assert!((d[1] - c(2.0, 0.5) * (3f64.sqrt() / 2.0 * w)).norm() < 1e-15);
        assert_eq!(ramp_operator(w).adjoint(), ramp_operator(w));

        let id = ModuleOperator::identity(x.descriptor(), 1);
        assert_eq!(id.apply(&x).unwrap(), x);
    }

    #[test]
    fn operator_bound_trivial_cases() {
        let x = ModuleVector::ones(AlgebraDescriptor::diagonal(2).unwrap(), 1);
        let m = ramp_operator(1.0);
        assert!((m.norm() - 1.0).abs() < 1e-15);
        assert!(m.norm_domination_check(&x, 1e-12).unwrap());
        let zero = ModuleOperator::zero(x.descriptor(), 1);
        assert!(zero.norm_domination_check(&x, 1e-12).unwrap());
    }

    #[test]
    fn flatten_round_trip() {
        let d = AlgebraDescriptor::full(2).unwrap();
        let a = AlgebraElement::full(CMatrix::from_fn(2, 2, |r, col| c(r as f64, col as f64 + 1.0))).unwrap();
        let b = AlgebraElement::full(CMatrix::from_fn(2, 2, |r, col| c(-(col as f64), r as f64))).unwrap();
        let m = ModuleOperator::new(2, vec![a.clone(), b.clone(), b, a]).unwrap();
        assert_eq!(ModuleOperator::from_flat(d, &m.to_flat()).unwrap(), m);
        let x = ModuleVector::ones(d, 2);
        assert_eq!(ModuleVector::from_flat(d, &x.to_flat()).unwrap(), x);
        let flat_applied = x.to_flat() * m.to_flat();
        assert_eq!(ModuleVector::from_flat(d, &flat_applied).unwrap(), m.apply(&x).unwrap());
    }

    #[test]
    fn operator_constructor_validation() {
        let d = AlgebraDescriptor::diagonal(2).unwrap();
        assert!(ModuleOperator::new(2, vec![AlgebraElement::identity(d); 3]).is_err());
        assert!(ModuleOperator::new(0, vec![]).is_err());
        assert!(ModuleVector::new(vec![]).is_err());
    }

    #[test]
    fn l2_inner_product_examples() {
        let rule = QuadratureRule::gauss_legendre(0.0, 1.0, 2).unwrap();
        let d = AlgebraDescriptor::diagonal(2).unwrap();
        let x = ModuleVector::ones(d, 1);
        let samples = rule.nodes().iter().map(|&w| ramp_operator(w).apply(&x).unwrap()).collect();
        let fam = L2Family::new(rule.clone(), samples).unwrap();
        let g = fam.inner_product(&fam).unwrap().diagonal_entries();
        assert!((g[0].re - 1.0 / 3.0).abs() < 1e-15);
        assert!((g[1].re - 0.25).abs() < 1e-15);

        let zero = L2Family::zero(rule.clone(), d, 1);
        assert!(fam.inner_product(&zero).unwrap().is_zero());

        let other = L2Family::zero(QuadratureRule::gauss_legendre(0.0, 1.0, 3).unwrap(), d, 1);
        assert!(matches!(fam.inner_product(&other), Err(Error::RuleMismatch)));
    }

    #[test]
    fn counting_measure_l2_is_plain_sum() {
        let rule = QuadratureRule::counting(3).unwrap();
        let samples: Vec<ModuleVector> = [1.0, 2.0, 3.0]
            .iter()
            .map(|&v| ModuleVector::new(vec![AlgebraElement::real_diagonal(&[v]).unwrap()]).unwrap())
            .collect();
        let fam = L2Family::new(rule, samples).unwrap();
        assert_eq!(fam.inner_product(&fam).unwrap().diagonal_entries()[0].re, 14.0);
    }
}
