//! Class groups of imaginary quadratic extensions `F_q(T, √(e𝔭))` with a
//! prime discriminant, their 2-primary structure, and an independent
//! class-number oracle from point counting.

pub mod error;
pub mod field;
pub mod poly;
pub mod symbols;
pub mod classgroup;
pub mod zeta;
pub mod construct;
pub mod verify;
pub mod report;

pub use error::{Error, Result};
