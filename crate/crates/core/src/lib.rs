//! Constructions and exact verifiers for amply regular graphs with `μ = (k-1)/2`,
//! the group divisible designs read off from them, and their association schemes.
//!
//! Everything is exact: finite-field arithmetic, integer matrices and
//! big-rational elimination. No floating point is used anywhere.

pub mod constructions;
pub mod designs;
pub mod error;
pub mod field;
pub mod graph;
pub mod matrix;
pub mod schemes;
pub mod spectrum;
pub mod verifiers;

pub use error::{Error, PairWitness, Result};
pub use field::{Field, FieldElement, PrimePower};
pub use graph::{Digraph, Graph};
pub use matrix::IntMatrix;
