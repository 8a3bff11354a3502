//! Exact verification of principal coalgebra extensions.
//!
//! Given structure constants for an algebra `P`, a coalgebra `C`, a right
//! coaction `P → P⊗C` and a group-like `e ∈ C`, this crate decides the
//! principality conditions, solves for strong connections, builds the
//! idempotent representing an associated module and evaluates the
//! Chern-Galois character as a cycle in Connes' cyclic complex.

pub mod chern;
pub mod cyclic;
pub mod error;
pub mod field;
pub mod format;
pub mod galois;
pub mod linalg;
pub mod pipeline;
pub mod structures;
pub mod zoo;

pub use error::{Error, Result};
