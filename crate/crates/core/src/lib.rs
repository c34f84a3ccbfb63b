//! Induced poset saturation in the Boolean lattice.
//!
//! The crate decides whether families of subsets of `[n]` contain weak or
//! induced copies of a target poset, verifies and searches for minimum
//! saturated families, runs the chain-partition procedures used to bound
//! antichain saturation numbers, and evaluates the associated bound formulas
//! exactly.

pub mod bounds;
pub mod chains;
pub mod containment;
pub mod error;
pub mod lattice;
pub mod poset;
pub mod procedures;
pub mod saturation;

pub use error::{Error, Result};
pub use lattice::{Family, Subset};
pub use poset::{parse_poset, PosetSpec};
