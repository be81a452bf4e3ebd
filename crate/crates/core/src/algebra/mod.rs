//! Prime fields, monomials, polynomials and graded quotient rings.

pub mod field;
pub mod monomial;
pub mod poly;
pub mod ring;

pub use field::{FieldElement, PrimeField};
pub use monomial::{Monomial, MAX_VARS};
pub use poly::Polynomial;
pub use ring::{PolyOp, QuotientRing};
