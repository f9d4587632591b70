use num_complex::Complex64;

use crate::algebra::AlgebraDescriptor;
use crate::error::{Error, Result};
use crate::hilbert_module::ModuleOperator;
use crate::quadrature::QuadratureRule;

/// How the family `{T_ω}` is specified.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyForm {
    /// `T_ω = Σ_d ω^d C_d`; coefficients are stored lowest degree first.
    Parametric(Vec<ModuleOperator>),
    /// One operator per quadrature node.
    Sampled(Vec<ModuleOperator>),
}

/// An operator family together with the rule used to integrate over it.
///
/// Node operators are evaluated once at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorFamily {
    rule: QuadratureRule,
    descriptor: AlgebraDescriptor,
    rank: usize,
    form: FamilyForm,
    node_operators: Vec<ModuleOperator>,
}

impl OperatorFamily {
    pub fn parametric(rule: QuadratureRule, coefficients: Vec<ModuleOperator>) -> Result<Self> {
        let first = coefficients
            .first()
            .ok_or_else(|| Error::InvalidArgument("parametric family needs at least one coefficient".into()))?;
        for c in &coefficients {
            first.ensure_compatible(c)?;
        }
        let node_operators = rule.nodes().iter().map(|&w| evaluate_polynomial(&coefficients, w)).collect();
        Ok(Self {
            descriptor: first.descriptor(),
            rank: first.rank(),
            rule,
            form: FamilyForm::Parametric(coefficients),
            node_operators,
        })
    }

    pub fn sampled(rule: QuadratureRule, operators: Vec<ModuleOperator>) -> Result<Self> {
        rule.ensure_len(operators.len())?;
        let first = &operators[0];
        for op in &operators {
            first.ensure_compatible(op)?;
        }
        Ok(Self {
            descriptor: first.descriptor(),
            rank: first.rank(),
            rule,
            form: FamilyForm::Sampled(operators.clone()),
            node_operators: operators,
        })
    }

    /// The constant family `T_ω = op`.
    pub fn constant(rule: QuadratureRule, op: ModuleOperator) -> Result<Self> {
        Self::parametric(rule, vec![op])
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        self.descriptor
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn form(&self) -> &FamilyForm {
        &self.form
    }

    pub fn coefficients(&self) -> Option<&[ModuleOperator]> {
        match &self.form {
            FamilyForm::Parametric(c) => Some(c),
            FamilyForm::Sampled(_) => None,
        }
    }

    pub fn node_operators(&self) -> &[ModuleOperator] {
        &self.node_operators
    }

    /// `T_ω` at an arbitrary parameter; only parametric families can do this.
    pub fn evaluate(&self, omega: f64) -> Option<ModuleOperator> {
        self.coefficients().map(|c| evaluate_polynomial(c, omega))
    }

    /// Re-discretizes a parametric family on another rule. Sampled families
    /// keep their operators and only accept a rule with the same node count.
    pub fn with_rule(&self, rule: QuadratureRule) -> Result<Self> {
        match &self.form {
            FamilyForm::Parametric(c) => Self::parametric(rule, c.clone()),
            FamilyForm::Sampled(ops) => Self::sampled(rule, ops.clone()),
        }
    }

    pub(crate) fn ensure_compatible(&self, other: &Self) -> Result<()> {
        self.rule.ensure_same(&other.rule)?;
        self.descriptor.ensure_same(&other.descriptor)?;
        if self.rank != other.rank {
            return Err(Error::ShapeMismatch { what: "family rank", expected: self.rank, found: other.rank });
        }
        Ok(())
    }

    /// Left-composes a constant operator into every member: `T_ω ↦ (x ↦ T_ω(x·left))`,
    /// i.e. blocks `left·M_ω`. Parametric families stay parametric.
    pub fn precompose(&self, left: &ModuleOperator) -> Result<Self> {
        left.ensure_compatible(&self.node_operators[0])?;
        match &self.form {
            FamilyForm::Parametric(c) => {
                Self::parametric(self.rule.clone(), c.iter().map(|m| left.product_unchecked(m)).collect())
            }
            FamilyForm::Sampled(ops) => {
                Self::sampled(self.rule.clone(), ops.iter().map(|m| left.product_unchecked(m)).collect())
            }
        }
    }

    /// Multiplies `T_ω` by a scalar profile evaluated at each node; the result is sampled.
    pub fn scale_nodes(&self, factors: &[Complex64]) -> Result<Self> {
        self.rule.ensure_len(factors.len())?;
        let ops = self.node_operators.iter().zip(factors).map(|(m, &f)| m.scale(f)).collect();
        Self::sampled(self.rule.clone(), ops)
    }
}

fn evaluate_polynomial(coefficients: &[ModuleOperator], omega: f64) -> ModuleOperator {
    let mut iter = coefficients.iter().rev();
    let mut acc = iter.next().expect("nonempty coefficients").clone();
    for c in iter {
        acc = acc.scale_real(omega).add(c).expect("coefficients share shape");
    }
    acc
}
