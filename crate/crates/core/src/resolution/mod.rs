//! Graded free modules, homogeneous matrices, presentations and minimal free resolutions.

mod complex;
mod hilbert;
mod matrix;
mod presentation;

pub use complex::{
    koszul_complex, resolve, syzygy_module, BettiTable, FreeComplex, PdReport, Resolution,
};
pub use hilbert::HilbertSeries;
pub use matrix::{GradedMatrix, MatrixJson};
pub use presentation::{
    direct_sum, kernel_of_scalar, min_generators, minimal_presentation, quotient_module,
    subquotient, syzygy_matrix, ModulePresentation, PresentationMode,
};

/// Generator degrees `d_j` of `⊕ R(-d_j)`.
pub type GradedFreeModule = Vec<i32>;
