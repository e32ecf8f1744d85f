//! Exact scalars in Q or Q(sqrt(D)) and integer Laurent polynomials in v.

mod laurent;
mod scalar;

pub use laurent::LaurentPoly;
pub use scalar::{FieldSpec, Scalar};
