//! Stability of frames under two kinds of perturbation.
//!
//! *Additive*: `Γ_ω = T_ω + c_ω K` stays a frame when
//! `R = ∫|c_ω|² ‖K‖² dμ < A`, with bounds inside `[(√A − √R)², (√B + √R)²]`.
//!
//! *Relative*: if `∫⟨a_ω T_ω x − b_ω Λ_ω x, ·⟩ ⪯ α∫⟨a_ω T_ω x, ·⟩ + β∫⟨b_ω Λ_ω x, ·⟩`
//! for positively confined `a, b` and `0 ≤ α, β < 1/2`, then `Λ` is a frame
//! whose bounds are controlled by those of `T` and the confinement constants.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::frames::{Extremum, FamilyForm, FrameBounds, OperatorFamily};
use crate::hilbert_module::{ModuleOperator, ModuleVector};
use crate::linalg::CMatrix;
use crate::quadrature::{MeasureSpace, QuadratureRule};
use crate::sampling;

/// Grid size used to bound polynomial profiles over an interval.
pub const PROFILE_GRID_POINTS: usize = 1000;

/// A complex scalar function of `ω`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarProfile {
    /// Coefficients, lowest degree first.
    Polynomial(Vec<Complex64>),
    /// One value per quadrature node.
    Sampled(Vec<Complex64>),
}

impl ScalarProfile {
    pub fn constant(value: f64) -> Self {
        Self::Polynomial(vec![Complex64::new(value, 0.0)])
    }

    pub fn values_at(&self, rule: &QuadratureRule) -> Result<Vec<Complex64>> {
        match self {
            Self::Polynomial(c) => Ok(rule.nodes().iter().map(|&w| horner(c, w)).collect()),
            Self::Sampled(v) => {
                rule.ensure_len(v.len())?;
                Ok(v.clone())
            }
        }
    }
}

fn horner(coefficients: &[Complex64], omega: f64) -> Complex64 {
    coefficients.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * omega + c)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdditivePerturbation {
    k: ModuleOperator,
    c: ScalarProfile,
}

impl AdditivePerturbation {
    pub fn new(k: ModuleOperator, c: ScalarProfile) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::ZeroPerturbation);
        }
        Ok(Self { k, c })
    }

    pub fn operator(&self) -> &ModuleOperator {
        &self.k
    }

    pub fn profile(&self) -> &ScalarProfile {
        &self.c
    }

    /// `∫|c_ω|² dμ` on the rule.
    pub fn profile_energy(&self, rule: &QuadratureRule) -> Result<f64> {
        let values = self.c.values_at(rule)?;
        Ok(rule.weights().iter().zip(&values).fold(0.0, |acc, (w, c)| acc + w * c.norm_sqr()))
    }

    /// `R = ∫|c_ω|² ‖K‖² dμ`.
    pub fn strength(&self, rule: &QuadratureRule) -> Result<f64> {
        Ok(self.profile_energy(rule)? * self.k.norm().powi(2))
    }
}

/// The family `{T_ω + c_ω K}`.
pub fn perturb_additive(family: &OperatorFamily, p: &AdditivePerturbation) -> Result<OperatorFamily> {
    if p.k.is_zero() {
        return Err(Error::ZeroPerturbation);
    }
    p.k.ensure_compatible(&family.node_operators()[0])?;
    match (family.form(), &p.c) {
        (FamilyForm::Parametric(coeffs), ScalarProfile::Polynomial(c)) => {
            let degree = coeffs.len().max(c.len());
            let zero = ModuleOperator::zero(family.descriptor(), family.rank());
            let merged = (0..degree)
                .map(|d| {
                    let base = coeffs.get(d).unwrap_or(&zero);
                    match c.get(d) {
                        Some(&cd) => base.add(&p.k.scale(cd)),
                        None => Ok(base.clone()),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            OperatorFamily::parametric(family.rule().clone(), merged)
        }
        _ => {
            let values = p.c.values_at(family.rule())?;
            let ops = family
                .node_operators()
                .iter()
                .zip(values)
                .map(|(m, c)| m.add(&p.k.scale(c)))
                .collect::<Result<Vec<_>>>()?;
            OperatorFamily::sampled(family.rule().clone(), ops)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdditiveAssessment {
    pub admissible: bool,
    pub strength: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    /// `∫|c_ω|² dμ`.
    pub profile_energy: f64,
    /// Whether the weaker threshold `∫|c_ω|² dμ < A/‖K‖` holds. It is not
    /// equivalent to `R < A` unless `‖K‖ = 1`, so it is reported for reference only.
    pub norm_threshold_met: bool,
}

/// Admissibility `R < A − tol` for the additive perturbation of a frame.
pub fn additive_admissible(family: &OperatorFamily, p: &AdditivePerturbation, tol: f64) -> Result<AdditiveAssessment> {
    let bounds = family.frame_operator().optimal_bounds();
    if bounds.lower <= tol {
        return Err(Error::NotAFrame { lower_bound: bounds.lower });
    }
    let profile_energy = p.profile_energy(family.rule())?;
    let k_norm = p.k.norm();
    let strength = profile_energy * k_norm * k_norm;
    Ok(AdditiveAssessment {
        admissible: strength < bounds.lower - tol,
        strength,
        lower_bound: bounds.lower,
        upper_bound: bounds.upper,
        profile_energy,
        norm_threshold_met: profile_energy < bounds.lower / k_norm,
    })
}

/// Predicted bounds `((√A − √R)², (√B + √R)²)` of the additively perturbed family.
pub fn additive_envelope(lower: f64, upper: f64, strength: f64) -> Result<FrameBounds> {
    if !(strength >= 0.0) || strength >= lower {
        return Err(Error::Inadmissible { r: strength, lower_bound: lower });
    }
    let sr = strength.sqrt();
    Ok(FrameBounds { lower: (lower.sqrt() - sr).powi(2), upper: (upper.sqrt() + sr).powi(2) })
}

/// A real positive scalar function of `ω`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightProfile {
    Polynomial(Vec<f64>),
    Sampled(Vec<f64>),
}

impl WeightProfile {
    pub fn constant(value: f64) -> Self {
        Self::Polynomial(vec![value])
    }

    pub fn values_at(&self, rule: &QuadratureRule) -> Result<Vec<f64>> {
        match self {
            Self::Polynomial(c) => Ok(rule.nodes().iter().map(|&w| horner_real(c, w)).collect()),
            Self::Sampled(v) => {
                rule.ensure_len(v.len())?;
                Ok(v.clone())
            }
        }
    }

    /// `(inf, sup)` over the nodes, and for polynomials on an interval also over
    /// a uniform grid of [`PROFILE_GRID_POINTS`] points.
    pub fn range(&self, rule: &QuadratureRule) -> Result<(f64, f64)> {
        let mut values = self.values_at(rule)?;
        if let (Self::Polynomial(c), MeasureSpace::LebesgueInterval { a, b }) = (self, rule.space()) {
            let step = (b - a) / (PROFILE_GRID_POINTS - 1) as f64;
            values.extend((0..PROFILE_GRID_POINTS).map(|i| horner_real(c, a + step * i as f64)));
        }
        let inf = values.iter().copied().fold(f64::INFINITY, f64::min);
        let sup = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok((inf, sup))
    }
}

fn horner_real(coefficients: &[f64], omega: f64) -> f64 {
    coefficients.iter().rev().fold(0.0, |acc, &c| acc * omega + c)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelativePerturbation {
    pub a: WeightProfile,
    pub b: WeightProfile,
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Confinement {
    pub inf_a: f64,
    pub sup_a: f64,
    pub inf_b: f64,
    pub sup_b: f64,
}

impl RelativePerturbation {
    pub fn new(a: WeightProfile, b: WeightProfile, alpha: f64, beta: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta)] {
            if !(0.0..0.5).contains(&v) {
                return Err(Error::InvalidArgument(format!("{name} = {v} must lie in [0, 1/2)")));
            }
        }
        Ok(Self { a, b, alpha, beta })
    }

    /// Confinement constants; both profiles must be strictly positive and finite.
    pub fn confinement(&self, rule: &QuadratureRule) -> Result<Confinement> {
        let (inf_a, sup_a) = self.a.range(rule)?;
        let (inf_b, sup_b) = self.b.range(rule)?;
        for (name, inf, sup) in [("a", inf_a, sup_a), ("b", inf_b, sup_b)] {
            if !(inf > 0.0 && sup.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "profile {name} is not positively confined (inf {inf}, sup {sup})"
                )));
            }
        }
        Ok(Confinement { inf_a, sup_a, inf_b, sup_b })
    }
}

struct RelativeForms {
    difference: AlgebraElement,
    rhs: AlgebraElement,
}

fn relative_forms(
    family: &OperatorFamily,
    other: &OperatorFamily,
    a: &[f64],
    b: &[f64],
    alpha: f64,
    beta: f64,
    x: &ModuleVector,
) -> Result<RelativeForms> {
    let rule = family.rule();
    let mut diff_terms = Vec::with_capacity(rule.len());
    let mut t_terms = Vec::with_capacity(rule.len());
    let mut l_terms = Vec::with_capacity(rule.len());
    for (i, (m, nu)) in family.node_operators().iter().zip(other.node_operators()).enumerate() {
        let tx = m.apply(x)?.scale_real(a[i]);
        let lx = nu.apply(x)?.scale_real(b[i]);
        let d = tx.sub(&lx)?;
        diff_terms.push(d.inner_product(&d)?);
        t_terms.push(tx.inner_product(&tx)?);
        l_terms.push(lx.inner_product(&lx)?);
    }
    let difference = rule.integrate(&diff_terms)?;
    let rhs = rule.integrate(&t_terms)?.scale_real(alpha).add(&rule.integrate(&l_terms)?.scale_real(beta))?;
    Ok(RelativeForms { difference, rhs })
}

/// Checks the relative-perturbation hypothesis on each sample vector (Loewner order, `tol`).
///
/// A pass is a sampled verdict, not a proof for all `x`.
pub fn relative_criterion_check(
    family: &OperatorFamily,
    other: &OperatorFamily,
    p: &RelativePerturbation,
    xs: &[ModuleVector],
    tol: f64,
) -> Result<bool> {
    family.ensure_compatible(other)?;
    let a = p.a.values_at(family.rule())?;
    let b = p.b.values_at(family.rule())?;
    for x in xs {
        let forms = relative_forms(family, other, &a, &b, p.alpha, p.beta, x)?;
        if !forms.difference.loewner_leq(&forms.rhs, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The same hypothesis as an operator inequality on the flattened space, which
/// covers every `x` at once.
pub fn relative_criterion_operator_check(
    family: &OperatorFamily,
    other: &OperatorFamily,
    p: &RelativePerturbation,
    tol: f64,
) -> Result<bool> {
    family.ensure_compatible(other)?;
    let rule = family.rule();
    let a = p.a.values_at(rule)?;
    let b = p.b.values_at(rule)?;
    let dim = family.descriptor().dim * family.rank();
    let mut gap = CMatrix::zeros(dim, dim);
    for (i, (m, nu)) in family.node_operators().iter().zip(other.node_operators()).enumerate() {
        let f = m.to_flat().map(|z| z * a[i]);
        let g = nu.to_flat().map(|z| z * b[i]);
        let d = &f - &g;
        let w = rule.weights()[i];
        gap += (&f * f.adjoint()).map(|z| z * (w * p.alpha));
        gap += (&g * g.adjoint()).map(|z| z * (w * p.beta));
        gap -= (&d * d.adjoint()).map(|z| z * w);
    }
    let scale = crate::linalg::spectral_norm(&gap) + 1.0;
    let min = crate::linalg::hermitian_eigenvalues(&gap).first().copied().unwrap_or(0.0);
    Ok(min >= -tol * scale)
}

/// Random vectors plus the extremal eigenvectors of both frame operators.
pub fn criterion_samples(
    family: &OperatorFamily,
    other: &OperatorFamily,
    count: usize,
    seed: u64,
) -> Vec<ModuleVector> {
    let mut rng = sampling::rng_from_seed(seed);
    let mut xs: Vec<ModuleVector> =
        (0..count).map(|_| sampling::random_vector(family.descriptor(), family.rank(), &mut rng)).collect();
    for fam in [family, other] {
        let data = fam.frame_operator();
        xs.push(data.extremal_vector(Extremum::Lower));
        xs.push(data.extremal_vector(Extremum::Upper));
    }
    xs
}

/// Predicted bounds of `Λ` from the frame bounds of `T`:
/// lower `A(1 − 2α)(inf a)² / (2(1 + β)(sup b)²)`, upper `B·2(1 + α)(sup a)² / ((1 − 2β)(inf b)²)`.
pub fn relative_envelope(bounds: FrameBounds, p: &RelativePerturbation, rule: &QuadratureRule) -> Result<FrameBounds> {
    let p = RelativePerturbation::new(p.a.clone(), p.b.clone(), p.alpha, p.beta)?;
    let c = p.confinement(rule)?;
    Ok(relative_envelope_from(bounds, c, p.alpha, p.beta))
}

pub fn relative_envelope_from(bounds: FrameBounds, c: Confinement, alpha: f64, beta: f64) -> FrameBounds {
    FrameBounds {
        lower: bounds.lower * (1.0 - 2.0 * alpha) * c.inf_a.powi(2) / (2.0 * (1.0 + beta) * c.sup_b.powi(2)),
        upper: bounds.upper * 2.0 * (1.0 + alpha) * c.sup_a.powi(2) / ((1.0 - 2.0 * beta) * c.inf_b.powi(2)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraDescriptor;

    fn ramp() -> OperatorFamily {
        let rule = QuadratureRule::gauss_legendre(0.0, 1.0, 32).unwrap();
        let c1 = ModuleOperator::scalar(AlgebraElement::real_diagonal(&[1.0, 3f64.sqrt() / 2.0]).unwrap());
        OperatorFamily::parametric(rule, vec![ModuleOperator::zero(c1.descriptor(), 1), c1]).unwrap()
    }

    fn identity_k() -> ModuleOperator {
        ModuleOperator::identity(AlgebraDescriptor::diagonal(2).unwrap(), 1)
    }

    #[test]
    fn perturbed_blocks() {
        let fam = ramp();
        let p = AdditivePerturbation::new(identity_k(), ScalarProfile::constant(0.1)).unwrap();
        let g = perturb_additive(&fam, &p).unwrap();
        assert!(g.coefficients().is_some());
        for (op, &w) in g.node_operators().iter().zip(fam.rule().nodes()) {
            let d = op.block(0, 0).diagonal_entries();
            assert!((d[0].re - (w + 0.1)).abs() < 1e-14);
            assert!((d[1].re - (3f64.sqrt() * w / 2.0 + 0.1)).abs() < 1e-14);
        }
        let none = AdditivePerturbation::new(identity_k(), ScalarProfile::constant(0.0)).unwrap();
        let same = perturb_additive(&fam, &none).unwrap();
        assert_eq!(same.node_operators(), fam.node_operators());
    }

    #[test]
    fn zero_operator_rejected() {
        let zero = ModuleOperator::zero(AlgebraDescriptor::diagonal(2).unwrap(), 1);
        assert!(matches!(AdditivePerturbation::new(zero, ScalarProfile::constant(1.0)), Err(Error::ZeroPerturbation)));
    }

    #[test]
    fn admissibility_arithmetic() {
        let fam = ramp();
        let p = AdditivePerturbation::new(identity_k(), ScalarProfile::constant(0.4)).unwrap();
        let a = additive_admissible(&fam, &p, 1e-12).unwrap();
        assert!(a.admissible);
        assert!((a.strength - 0.16).abs() < 1e-14);
        let p = AdditivePerturbation::new(identity_k(), ScalarProfile::constant(0.6)).unwrap();
        let a = additive_admissible(&fam, &p, 1e-12).unwrap();
        assert!(!a.admissible);
        assert!((a.strength - 0.36).abs() < 1e-14);
        let p = AdditivePerturbation::new(identity_k(), ScalarProfile::constant(0.0)).unwrap();
        assert_eq!(additive_admissible(&fam, &p, 1e-12).unwrap().strength, 0.0);
    }

    #[test]
    fn sampled_profile_gives_sampled_family() {
        let fam = ramp();
        let values = vec![Complex64::new(0.0, 0.2); fam.rule().len()];
        let p = AdditivePerturbation::new(identity_k(), ScalarProfile::Sampled(values)).unwrap();
        let g = perturb_additive(&fam, &p).unwrap();
        assert!(g.coefficients().is_none());
        assert!((p.strength(fam.rule()).unwrap() - 0.04).abs() < 1e-14);
        let short =
            AdditivePerturbation::new(identity_k(), ScalarProfile::Sampled(vec![Complex64::new(1.0, 0.0)])).unwrap();
        assert!(perturb_additive(&fam, &short).is_err());
    }

    #[test]
    fn additive_envelope_examples() {
        let e = additive_envelope(0.25, 1.0 / 3.0, 0.0).unwrap();
        assert_eq!((e.lower, e.upper), (0.25, 1.0 / 3.0));
        let e = additive_envelope(0.25, 1.0 / 3.0, 0.16).unwrap();
        assert!((e.lower - 0.01).abs() < 1e-15);
        assert!((e.upper - ((1.0f64 / 3.0).sqrt() + 0.4).powi(2)).abs() < 1e-15);
        assert!(matches!(additive_envelope(0.25, 1.0 / 3.0, 0.25), Err(Error::Inadmissible { .. })));
    }

    #[test]
    fn relative_criterion_examples() {
        let fam = ramp();
        let p =
            RelativePerturbation::new(WeightProfile::constant(1.0), WeightProfile::constant(1.0), 0.4, 0.4).unwrap();
        let xs = criterion_samples(&fam, &fam, 20, 1);
        assert!(relative_criterion_check(&fam, &fam, &p, &xs, 1e-10).unwrap());

        let scaled = fam.precompose(&identity_k().scale_real(1.05)).unwrap();
        assert!(relative_criterion_check(&fam, &scaled, &p, &xs, 1e-10).unwrap());
        assert!(relative_criterion_operator_check(&fam, &scaled, &p, 1e-10).unwrap());

        let zero = OperatorFamily::constant(fam.rule().clone(), ModuleOperator::zero(fam.descriptor(), 1)).unwrap();
        assert!(!relative_criterion_check(&fam, &zero, &p, &xs, 1e-10).unwrap());
        assert!(!relative_criterion_operator_check(&fam, &zero, &p, 1e-10).unwrap());
    }

    #[test]
    fn relative_envelope_examples() {
        let rule = ramp().rule().clone();
        let bounds = FrameBounds { lower: 0.25, upper: 1.0 / 3.0 };
        let p =
            RelativePerturbation::new(WeightProfile::constant(1.0), WeightProfile::constant(1.0), 0.0, 0.0).unwrap();
        let e = relative_envelope(bounds, &p, &rule).unwrap();
        assert!((e.lower - 1.0 / 8.0).abs() < 1e-15);
        assert!((e.upper - 2.0 / 3.0).abs() < 1e-15);

        // a(ω) = ω + ε approaches zero at the left endpoint
        let mut last = f64::INFINITY;
        for eps in [1e-1, 1e-2, 1e-3, 1e-4] {
            let p = RelativePerturbation::new(
                WeightProfile::Polynomial(vec![eps, 1.0]),
                WeightProfile::constant(1.0),
                0.0,
                0.0,
            )
            .unwrap();
            let lower = relative_envelope(bounds, &p, &rule).unwrap().lower;
            assert!(lower < last);
            last = lower;
        }
        assert!(last < 1e-8);

        assert!(
            RelativePerturbation::new(WeightProfile::constant(1.0), WeightProfile::constant(1.0), 0.5, 0.0).is_err()
        );
        let p = RelativePerturbation::new(
            WeightProfile::Polynomial(vec![0.0, 1.0]),
            WeightProfile::constant(1.0),
            0.1,
            0.1,
        )
        .unwrap();
        assert!(relative_envelope(bounds, &p, &rule).is_err());
    }
}
