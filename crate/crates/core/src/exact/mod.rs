//! Exact scalar arithmetic, coordinate vectors, Gram matrices and the
//! polarization identities used everywhere else. No floating point.

mod matrix;
mod rational;
mod signs;
mod vector;

pub use matrix::{determinant, dot, is_psd, rank, solve, FormReduction, GramMatrix};
pub use rational::Rational;
pub use signs::{offdiag_from_norms, PolarizedGram, SignVector};
pub use vector::Vector;

