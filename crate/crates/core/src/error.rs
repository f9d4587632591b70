use crate::algebra::AlgebraDescriptor;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("algebra descriptor mismatch: {left} vs {right}")]
    DescriptorMismatch { left: AlgebraDescriptor, right: AlgebraDescriptor },
    #[error("{what}: expected {expected}, found {found}")]
    ShapeMismatch { what: &'static str, expected: usize, found: usize },
    #[error("invalid algebra descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("entries do not conform to a diagonal algebra (off-diagonal entry at ({row}, {col}))")]
    NotDiagonal { row: usize, col: usize },
    #[error("element is not positive within tolerance (min eigenvalue {min_eigenvalue:e}, asymmetry {asymmetry:e})")]
    NotPositive { min_eigenvalue: f64, asymmetry: f64 },
    #[error("element is singular to tolerance (sigma_min {sigma_min:e}, sigma_max {sigma_max:e})")]
    SingularElement { sigma_min: f64, sigma_max: f64 },
    #[error("frame operator is singular (lambda_min {lambda_min:e}, lambda_max {lambda_max:e})")]
    SingularFrameOperator { lambda_min: f64, lambda_max: f64 },
    #[error("family is not a frame (lower bound {lower_bound:e})")]
    NotAFrame { lower_bound: f64 },
    #[error("no convergence after {iterations} iterations (last relative residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("quadrature rules differ")]
    RuleMismatch,
    #[error("invalid quadrature rule: {0}")]
    InvalidRule(String),
    #[error("perturbation operator must be nonzero")]
    ZeroPerturbation,
    #[error("perturbation is not admissible: R = {r} >= A = {lower_bound}")]
    Inadmissible { r: f64, lower_bound: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
