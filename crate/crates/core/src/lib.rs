//! Hadamard matrices, the self-dual codes over `Z/mZ` they generate, the
//! unimodular lattices built from those codes, and exact checks of the
//! relations between their minima.

pub mod arith;
pub mod codes;
pub mod error;
pub mod fixtures;
pub mod lattices;
pub mod matrices;
pub mod snf;
pub mod verify;

pub use error::{ForgeError, Result};
