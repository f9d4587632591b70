//! Integral operator frames on finite-dimensional Hilbert C*-modules.
//!
//! The module is `H = Aⁿ` over a full or diagonal matrix algebra `A`, the
//! measure space is a Lebesgue interval or a counting measure discretized by
//! a [`QuadratureRule`], and a frame is a family `{T_ω}` of adjointable
//! operators satisfying `A⟨x,x⟩ ⪯ ∫⟨T_ω x, T_ω x⟩ dμ ⪯ B⟨x,x⟩`.
//!
//! ```
//! use opframe::catalog;
//!
//! let family = catalog::ramp_family(32).unwrap();
//! let bounds = family.frame_operator().optimal_bounds();
//! assert!((bounds.lower - 0.25).abs() < 1e-12);
//! assert!((bounds.upper - 1.0 / 3.0).abs() < 1e-12);
//! ```

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod duals;
pub mod error;
pub mod frames;
pub mod hilbert_module;
pub mod linalg;
pub mod perturbation;
pub mod quadrature;
pub mod reconstruction;
pub mod sampling;
pub mod scenario;

pub use algebra::{AlgebraDescriptor, AlgebraElement, AlgebraKind};
pub use error::{Error, Result};
pub use frames::{Classification, FrameBounds, FrameOperatorData, FrameReport, OperatorFamily};
pub use hilbert_module::{L2Family, ModuleOperator, ModuleVector};
pub use quadrature::{MeasureSpace, QuadratureRule};
