//! Exact computations in Hecke algebras of finite Coxeter groups: Kazhdan-Lusztig
//! bases, cells and asymptotic algebras, local intersection forms, and partial
//! traces used to compute categorical dimensions of parabolic cells.

pub mod cells;
pub mod coxeter;
pub mod error;
pub mod exactnum;
pub mod hecke;
pub mod liftrace;
pub mod polyring;
pub mod ptrace;
pub mod session;

pub use error::{Error, Result};
pub use exactnum::{FieldSpec, LaurentPoly, Scalar};
pub use session::Session;
