//! Buchberger's algorithm for submodules of graded free modules, normal
//! forms, syzygies and lifting.

pub(crate) mod buchberger;
mod module;
pub mod vector;

pub(crate) use module::check_homogeneous;
pub use module::{buchberger, minimal_generators, Lifter, ModuleGB};
pub use vector::{ModuleElement, Term, Vector};
