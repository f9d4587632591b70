//! Operator families and the frame machinery built on them: analysis,
//! synthesis and frame operators, optimal bounds, classification, and the
//! discretized below-boundedness and independence tests.
//!
//! Optimal bounds come from the flattened frame operator. Under the row
//! flattening `X` of `x`, `⟨S_T x, x⟩ = X s X*` and `⟨x, x⟩ = X X*`, so
//! `A = λ_min(s)` and `B = λ_max(s)` are the best constants in
//! `A⟨x,x⟩ ⪯ ⟨S_T x, x⟩ ⪯ B⟨x,x⟩`; equality is attained by placing an
//! extremal eigenvector in a single row.

mod analysis;
mod family;
mod operator;

pub use analysis::{BelowBoundedness, Independence};
pub use family::{FamilyForm, OperatorFamily};
pub use operator::{
    Classification, Extremum, FrameBounds, FrameOperatorData, FrameReport, DEFAULT_CLASSIFICATION_TOLERANCE,
};
