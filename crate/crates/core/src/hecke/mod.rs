//! Hecke algebra in the Soergel normalization: standard basis h_w, the
//! Kazhdan-Lusztig basis b_w, structure constants, the standard pairing, and
//! the clasp criterion.

mod cache;
mod clasp;
mod elt;
mod kl;

pub use cache::CacheLoad;
pub use clasp::{ClaspObstruction, ClaspReport};
pub use elt::{Basis, HeckeElt, ProductMemo};
pub use kl::{KlRow, KlTable};
