//! Restricted sumsets `A ∧^S B = {a + b : a ∈ A, b ∈ B, a − b ∉ S}` in finite
//! Abelian groups.
//!
//! The crate computes restricted sumsets and the associated doubling
//! constants exactly, verifies the lower bound `|A ∧^S B| ≥ |G| − 2|S|` for
//! triples with `|A| + |B| = |G| + L_S`, builds the extremal families that meet
//! it, and recovers the structural parameters of a given extremal triple.

pub mod algebra;
pub mod analysis;
pub mod constructions;
pub mod error;
pub mod group;
pub mod literal;
pub mod search;
pub mod set;
pub mod triple;

pub use error::{Error, Result};
pub use group::{Elem, Group, QuotientMap, Subgroup};
pub use set::GSubset;
pub use triple::{Triple, TripleRecord};
