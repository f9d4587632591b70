//! JSON scenario files (schema version 1).
//!
//! Complex numbers are `[re, im]` pairs and polynomials are coefficient arrays,
//! lowest degree first. An operator on `Aⁿ` is an `n × n` array of blocks,
//! each block a `k × k` array of entries. A parametric family gives one
//! polynomial per entry; a sampled family gives one operator per node.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "algebra": { "kind": "diagonal", "dim": 2 },
//!   "module_rank": 1,
//!   "measure": { "kind": "lebesgue_interval", "interval": [0.0, 1.0], "rule": "gauss_legendre", "nodes": 32 },
//!   "family": {
//!     "form": "parametric",
//!     "blocks": [[ [ [[[0,0],[1,0]]], [[]] ],
//!                  [ [[]], [[[0,0],[0.8660254037844386,0]]] ] ]]
//!   }
//! }
//! ```

use std::fmt;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraDescriptor, AlgebraElement};
use crate::error::Error;
use crate::frames::{FamilyForm, OperatorFamily};
use crate::hilbert_module::{ModuleOperator, ModuleVector};
use crate::linalg::CMatrix;
use crate::perturbation::{AdditivePerturbation, RelativePerturbation, ScalarProfile, WeightProfile};
use crate::quadrature::{QuadratureRule, RuleKind, DEFAULT_NODES};

pub const SCHEMA_VERSION: u32 = 1;

pub type ComplexPair = [f64; 2];
pub type Polynomial = Vec<ComplexPair>;
/// `[n][n][k][k]` entries.
pub type OperatorTable = Vec<Vec<Vec<Vec<ComplexPair>>>>;
/// `[n][n][k][k]` polynomials.
pub type PolynomialTable = Vec<Vec<Vec<Vec<Polynomial>>>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub algebra: AlgebraDescriptor,
    pub module_rank: usize,
    pub measure: MeasureSpec,
    pub family: FamilySpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<PerturbationSpec>,
    /// `[n][k][k]` vector used by reconstruction; defaults to all identities.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signal: Option<Vec<Vec<Vec<ComplexPair>>>>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MeasureSpec {
    LebesgueInterval {
        interval: [f64; 2],
        #[serde(default = "default_rule")]
        rule: RuleKind,
        #[serde(default = "default_nodes")]
        nodes: usize,
    },
    Counting {
        nodes: usize,
    },
}

fn default_rule() -> RuleKind {
    RuleKind::GaussLegendre
}

fn default_nodes() -> usize {
    DEFAULT_NODES
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFamily", into = "RawFamily")]
pub enum FamilySpec {
    Parametric { blocks: PolynomialTable },
    Sampled { operators: Vec<OperatorTable> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum FamilyFormName {
    Parametric,
    Sampled,
}

// Plain struct so that field paths survive into error messages.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    form: FamilyFormName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    blocks: Option<PolynomialTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    operators: Option<Vec<OperatorTable>>,
}

impl TryFrom<RawFamily> for FamilySpec {
    type Error = String;

    fn try_from(raw: RawFamily) -> Result<Self, String> {
        match (raw.form, raw.blocks, raw.operators) {
            (FamilyFormName::Parametric, Some(blocks), None) => Ok(Self::Parametric { blocks }),
            (FamilyFormName::Sampled, None, Some(operators)) => Ok(Self::Sampled { operators }),
            (FamilyFormName::Parametric, _, _) => Err("a parametric family needs `blocks` and no `operators`".into()),
            (FamilyFormName::Sampled, _, _) => Err("a sampled family needs `operators` and no `blocks`".into()),
        }
    }
}

impl From<FamilySpec> for RawFamily {
    fn from(spec: FamilySpec) -> Self {
        match spec {
            FamilySpec::Parametric { blocks } => {
                Self { form: FamilyFormName::Parametric, blocks: Some(blocks), operators: None }
            }
            FamilySpec::Sampled { operators } => {
                Self { form: FamilyFormName::Sampled, blocks: None, operators: Some(operators) }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerturbationSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub additive: Option<AdditiveSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relative: Option<RelativeSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdditiveSpec {
    pub k: OperatorTable,
    pub c: ProfileSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileSpec {
    Polynomial(Vec<ComplexPair>),
    Samples(Vec<ComplexPair>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RealProfileSpec {
    Polynomial(Vec<f64>),
    Samples(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelativeSpec {
    pub family: FamilySpec,
    pub a: RealProfileSpec,
    pub b: RealProfileSpec,
    pub alpha: f64,
    pub beta: f64,
    #[serde(default = "default_criterion_samples")]
    pub samples: usize,
}

fn default_criterion_samples() -> usize {
    200
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub positivity: f64,
    pub classification: f64,
    pub reconstruction: f64,
    pub dual: f64,
    pub rank: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { positivity: 1e-10, classification: 1e-8, reconstruction: 1e-12, dual: 1e-10, rank: 1e-10 }
    }
}

#[derive(Debug)]
pub enum ScenarioError {
    Io {
        path: String,
        message: String,
    },
    /// JSON syntax or schema error at a field path.
    Schema {
        path: String,
        message: String,
    },
    /// Structurally valid JSON with inconsistent shapes or values.
    Invalid {
        path: String,
        message: String,
    },
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Io { path, message } => write!(f, "cannot read scenario {path}: {message}"),
            Self::Schema { path, message } => write!(f, "schema violation at `{path}`: {message}"),
            Self::Invalid { path, message } => write!(f, "invalid scenario at `{path}`: {message}"),
        }
    }
}

impl std::error::Error for ScenarioError {}

fn invalid(path: impl Into<String>, message: impl fmt::Display) -> ScenarioError {
    ScenarioError::Invalid { path: path.into(), message: message.to_string() }
}

fn numeric(path: &str) -> impl Fn(Error) -> ScenarioError + '_ {
    move |e| invalid(path, e)
}

/// The objects a scenario describes, ready for computation.
#[derive(Debug, Clone)]
pub struct BuiltScenario {
    pub family: OperatorFamily,
    pub additive: Option<AdditivePerturbation>,
    pub relative: Option<(OperatorFamily, RelativePerturbation, usize)>,
    pub signal: ModuleVector,
}

impl Scenario {
    pub fn from_json_str(text: &str) -> Result<Self, ScenarioError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let scenario: Self = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            ScenarioError::Schema { path, message: e.into_inner().to_string() }
        })?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn from_path(path: &Path) -> Result<Self, ScenarioError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ScenarioError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::from_json_str(&text)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    /// Shape and range checks that the type system cannot express.
    pub fn validate(&self) -> Result<(), ScenarioError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(invalid(
                "schema_version",
                format!("unsupported version {}, expected {SCHEMA_VERSION}", self.schema_version),
            ));
        }
        if self.algebra.dim == 0 {
            return Err(invalid("algebra.dim", "must be at least 1"));
        }
        if self.module_rank == 0 {
            return Err(invalid("module_rank", "must be at least 1"));
        }
        self.rule(None)?;
        self.build(None).map(|_| ())
    }

    pub fn rule(&self, nodes_override: Option<usize>) -> Result<QuadratureRule, ScenarioError> {
        match &self.measure {
            MeasureSpec::LebesgueInterval { interval: [a, b], rule, nodes } => {
                let n = nodes_override.unwrap_or(*nodes);
                let built = match rule {
                    RuleKind::GaussLegendre => QuadratureRule::gauss_legendre(*a, *b, n),
                    RuleKind::Midpoint => QuadratureRule::midpoint(*a, *b, n),
                    RuleKind::Counting => {
                        return Err(invalid("measure.rule", "counting is a measure kind, not an interval rule"))
                    }
                };
                built.map_err(numeric("measure"))
            }
            MeasureSpec::Counting { nodes } => {
                QuadratureRule::counting(nodes_override.unwrap_or(*nodes)).map_err(numeric("measure.nodes"))
            }
        }
    }

    pub fn build(&self, nodes_override: Option<usize>) -> Result<BuiltScenario, ScenarioError> {
        let rule = self.rule(nodes_override)?;
        let descriptor = self.algebra;
        let n = self.module_rank;
        let family = build_family(&self.family, "family", &rule, descriptor, n)?;

        let mut additive = None;
        let mut relative = None;
        if let Some(p) = &self.perturbation {
            if let Some(add) = &p.additive {
                let k = build_operator(&add.k, "perturbation.additive.k", descriptor, n)?;
                let c = match &add.c {
                    ProfileSpec::Polynomial(c) => ScalarProfile::Polynomial(pairs(c)),
                    ProfileSpec::Samples(v) => {
                        check_len("perturbation.additive.c.samples", rule.len(), v.len())?;
                        ScalarProfile::Sampled(pairs(v))
                    }
                };
                additive = Some(AdditivePerturbation::new(k, c).map_err(numeric("perturbation.additive.k"))?);
            }
            if let Some(rel) = &p.relative {
                let other = build_family(&rel.family, "perturbation.relative.family", &rule, descriptor, n)?;
                let a = real_profile(&rel.a, "perturbation.relative.a", rule.len())?;
                let b = real_profile(&rel.b, "perturbation.relative.b", rule.len())?;
                let spec =
                    RelativePerturbation::new(a, b, rel.alpha, rel.beta).map_err(numeric("perturbation.relative"))?;
                spec.confinement(&rule).map_err(numeric("perturbation.relative"))?;
                relative = Some((other, spec, rel.samples));
            }
        }

        let signal = match &self.signal {
            None => ModuleVector::ones(descriptor, n),
            Some(table) => {
                check_len("signal", n, table.len())?;
                let comps = table
                    .iter()
                    .enumerate()
                    .map(|(j, block)| build_element(block, &format!("signal[{j}]"), descriptor))
                    .collect::<Result<Vec<_>, _>>()?;
                ModuleVector::new(comps).map_err(numeric("signal"))?
            }
        };
        Ok(BuiltScenario { family, additive, relative, signal })
    }
}

fn pairs(values: &[ComplexPair]) -> Vec<Complex64> {
    values.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

fn check_len(path: &str, expected: usize, found: usize) -> Result<(), ScenarioError> {
    if expected == found {
        Ok(())
    } else {
        Err(invalid(path, format!("expected {expected} entries, found {found}")))
    }
}

fn real_profile(spec: &RealProfileSpec, path: &str, nodes: usize) -> Result<WeightProfile, ScenarioError> {
    Ok(match spec {
        RealProfileSpec::Polynomial(c) => WeightProfile::Polynomial(c.clone()),
        RealProfileSpec::Samples(v) => {
            check_len(&format!("{path}.samples"), nodes, v.len())?;
            WeightProfile::Sampled(v.clone())
        }
    })
}

fn check_finite(path: &str, z: &ComplexPair) -> Result<(), ScenarioError> {
    if z[0].is_finite() && z[1].is_finite() {
        Ok(())
    } else {
        Err(invalid(path, "complex entries must be finite"))
    }
}

fn build_element(
    rows: &[Vec<ComplexPair>],
    path: &str,
    descriptor: AlgebraDescriptor,
) -> Result<AlgebraElement, ScenarioError> {
    let k = descriptor.dim;
    check_len(path, k, rows.len())?;
    let mut m = CMatrix::zeros(k, k);
    for (r, row) in rows.iter().enumerate() {
        let row_path = format!("{path}[{r}]");
        check_len(&row_path, k, row.len())?;
        for (c, z) in row.iter().enumerate() {
            check_finite(&format!("{row_path}[{c}]"), z)?;
            m[(r, c)] = Complex64::new(z[0], z[1]);
        }
    }
    AlgebraElement::from_matrix(descriptor, m).map_err(|e| invalid(path, e))
}

fn build_operator(
    table: &OperatorTable,
    path: &str,
    descriptor: AlgebraDescriptor,
    n: usize,
) -> Result<ModuleOperator, ScenarioError> {
    check_len(path, n, table.len())?;
    let mut blocks = Vec::with_capacity(n * n);
    for (r, row) in table.iter().enumerate() {
        check_len(&format!("{path}[{r}]"), n, row.len())?;
        for (c, block) in row.iter().enumerate() {
            blocks.push(build_element(block, &format!("{path}[{r}][{c}]"), descriptor)?);
        }
    }
    ModuleOperator::new(n, blocks).map_err(|e| invalid(path, e))
}

fn build_family(
    spec: &FamilySpec,
    path: &str,
    rule: &QuadratureRule,
    descriptor: AlgebraDescriptor,
    n: usize,
) -> Result<OperatorFamily, ScenarioError> {
    match spec {
        FamilySpec::Parametric { blocks } => {
            let k = descriptor.dim;
            let base = format!("{path}.blocks");
            check_len(&base, n, blocks.len())?;
            let mut degree = 0;
            for (r, row) in blocks.iter().enumerate() {
                check_len(&format!("{base}[{r}]"), n, row.len())?;
                for (c, block) in row.iter().enumerate() {
                    let bpath = format!("{base}[{r}][{c}]");
                    check_len(&bpath, k, block.len())?;
                    for (i, entry_row) in block.iter().enumerate() {
                        check_len(&format!("{bpath}[{i}]"), k, entry_row.len())?;
                        for (j, poly) in entry_row.iter().enumerate() {
                            for (d, z) in poly.iter().enumerate() {
                                check_finite(&format!("{bpath}[{i}][{j}][{d}]"), z)?;
                            }
                            degree = degree.max(poly.len());
                        }
                    }
                }
            }
            let degree = degree.max(1);
            let mut coefficients = Vec::with_capacity(degree);
            for d in 0..degree {
                let mut op_blocks = Vec::with_capacity(n * n);
                for (r, row) in blocks.iter().enumerate() {
                    for (c, block) in row.iter().enumerate() {
                        let m = CMatrix::from_fn(k, k, |i, j| {
                            block[i][j].get(d).map_or(Complex64::new(0.0, 0.0), |z| Complex64::new(z[0], z[1]))
                        });
                        let el = AlgebraElement::from_matrix(descriptor, m)
                            .map_err(|e| invalid(format!("{base}[{r}][{c}]"), e))?;
                        op_blocks.push(el);
                    }
                }
                coefficients.push(ModuleOperator::new(n, op_blocks).map_err(|e| invalid(&base, e))?);
            }
            OperatorFamily::parametric(rule.clone(), coefficients).map_err(|e| invalid(path, e))
        }
        FamilySpec::Sampled { operators } => {
            let base = format!("{path}.operators");
            check_len(&base, rule.len(), operators.len())?;
            let ops = operators
                .iter()
                .enumerate()
                .map(|(i, op)| build_operator(op, &format!("{base}[{i}]"), descriptor, n))
                .collect::<Result<Vec<_>, _>>()?;
            OperatorFamily::sampled(rule.clone(), ops).map_err(|e| invalid(path, e))
        }
    }
}

fn element_table(a: &AlgebraElement) -> Vec<Vec<ComplexPair>> {
    let m = a.matrix();
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect()).collect()
}

pub fn operator_table(op: &ModuleOperator) -> OperatorTable {
    let n = op.rank();
    (0..n).map(|r| (0..n).map(|c| element_table(op.block(r, c))).collect()).collect()
}

impl FamilySpec {
    /// Serializable description of a family, e.g. a computed canonical dual.
    pub fn from_family(family: &OperatorFamily) -> Self {
        match family.form() {
            FamilyForm::Parametric(coeffs) => {
                let n = family.rank();
                let k = family.descriptor().dim;
                let blocks = (0..n)
                    .map(|r| {
                        (0..n)
                            .map(|c| {
                                (0..k)
                                    .map(|i| {
                                        (0..k)
                                            .map(|j| {
                                                let poly: Polynomial = coeffs
                                                    .iter()
                                                    .map(|op| {
                                                        let z = op.block(r, c).matrix()[(i, j)];
                                                        [z.re, z.im]
                                                    })
                                                    .collect();
                                                trim_polynomial(poly)
                                            })
                                            .collect()
                                    })
                                    .collect()
                            })
                            .collect()
                    })
                    .collect();
                Self::Parametric { blocks }
            }
            FamilyForm::Sampled(ops) => Self::Sampled { operators: ops.iter().map(operator_table).collect() },
        }
    }
}

fn trim_polynomial(mut poly: Polynomial) -> Polynomial {
    while poly.last().is_some_and(|z| z[0] == 0.0 && z[1] == 0.0) {
        poly.pop();
    }
    poly
}
