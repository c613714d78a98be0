//! Exact root-system toolkit for the weight configurations of homogeneous
//! Clifford structures.
//!
//! Everything is computed over the rationals: root sets carry their ambient
//! bilinear form, closures and admissibility are decided by exact reflection
//! arithmetic, and the Gram-matrix searches are exhaustive.

pub mod catalog;
pub mod cli;
pub mod cliffweights;
pub mod error;
pub mod exact;
pub mod gram_engine;
pub mod json;
pub mod rootsys;
pub mod verifier;

pub use error::{Error, Result};
pub use exact::{GramMatrix, Rational, SignVector, Vector};
pub use rootsys::RootSet;
