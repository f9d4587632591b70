//! Discretization of the measure space into weighted nodes.
//!
//! Every integral over `(Ω, μ)` in this crate is a weighted sum over the nodes
//! of a [`QuadratureRule`], accumulated left to right so results are
//! bit-reproducible.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};

/// Node count used when a scenario does not specify one.
pub const DEFAULT_NODES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeasureSpace {
    LebesgueInterval { a: f64, b: f64 },
    Counting { n: usize },
}

impl MeasureSpace {
    pub fn interval(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidRule(format!("interval [{a}, {b}] must satisfy a < b")));
        }
        Ok(Self::LebesgueInterval { a, b })
    }

    /// Total measure of the space.
    pub fn total_measure(&self) -> f64 {
        match *self {
            Self::LebesgueInterval { a, b } => b - a,
            Self::Counting { n } => n as f64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    GaussLegendre,
    Midpoint,
    Counting,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    kind: RuleKind,
    space: MeasureSpace,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    /// `n`-point Gauss–Legendre rule on `[a, b]`; exact for polynomials of degree `2n − 1`.
    pub fn gauss_legendre(a: f64, b: f64, n: usize) -> Result<Self> {
        let space = MeasureSpace::interval(a, b)?;
        check_count(n)?;
        let (ref_nodes, ref_weights) = legendre_nodes_weights(n);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        Ok(Self {
            kind: RuleKind::GaussLegendre,
            space,
            nodes: ref_nodes.iter().map(|&t| mid + half * t).collect(),
            weights: ref_weights.iter().map(|&w| half * w).collect(),
        })
    }

    /// Composite midpoint rule with `n` equal cells.
    pub fn midpoint(a: f64, b: f64, n: usize) -> Result<Self> {
        let space = MeasureSpace::interval(a, b)?;
        check_count(n)?;
        let h = (b - a) / n as f64;
        Ok(Self {
            kind: RuleKind::Midpoint,
            space,
            nodes: (0..n).map(|i| a + (i as f64 + 0.5) * h).collect(),
            weights: vec![h; n],
        })
    }

    /// Counting measure on `{1, …, n}`: integrals become plain sums.
    pub fn counting(n: usize) -> Result<Self> {
        check_count(n)?;
        Ok(Self {
            kind: RuleKind::Counting,
            space: MeasureSpace::Counting { n },
            nodes: (1..=n).map(|i| i as f64).collect(),
            weights: vec![1.0; n],
        })
    }

    /// Same kind of rule over the same space, with a different node count.
    pub fn with_nodes(&self, n: usize) -> Result<Self> {
        match (self.kind, self.space) {
            (RuleKind::GaussLegendre, MeasureSpace::LebesgueInterval { a, b }) => Self::gauss_legendre(a, b, n),
            (RuleKind::Midpoint, MeasureSpace::LebesgueInterval { a, b }) => Self::midpoint(a, b, n),
            _ => Self::counting(n),
        }
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn space(&self) -> MeasureSpace {
        self.space
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub(crate) fn ensure_len(&self, found: usize) -> Result<()> {
        if found == self.len() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch { what: "sample count vs node count", expected: self.len(), found })
        }
    }

    pub(crate) fn ensure_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RuleMismatch)
        }
    }

    /// `Σ wᵢ fᵢ`, accumulated in node order.
    pub fn integrate(&self, samples: &[AlgebraElement]) -> Result<AlgebraElement> {
        self.ensure_len(samples.len())?;
        let descriptor = samples[0].descriptor();
        let mut acc = AlgebraElement::zero(descriptor);
        for (w, f) in self.weights.iter().zip(samples) {
            descriptor.ensure_same(&f.descriptor())?;
            acc.add_assign_unchecked(&f.scale_real(*w));
        }
        Ok(acc)
    }

    pub fn integrate_scalar(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).fold(0.0, |acc, (&x, &w)| acc + w * f(x))
    }
}

fn check_count(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidRule("node count must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Legendre `P_n(x)` and its derivative by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=n {
        let jf = j as f64;
        let next = ((2.0 * jf - 1.0) * x * p - (jf - 1.0) * p_prev) / jf;
        p_prev = p;
        p = next;
    }
    let nf = n as f64;
    let dp = nf * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Nodes (ascending) and weights of the Gauss–Legendre rule on `[-1, 1]`.
fn legendre_nodes_weights(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}
