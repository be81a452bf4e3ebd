pub mod algebra;
pub mod duality;
pub mod error;
pub mod groebner;
pub mod iso;
pub mod linalg;
pub mod resolution;
pub mod script;
pub mod theorems;

pub use error::{Error, Result};
