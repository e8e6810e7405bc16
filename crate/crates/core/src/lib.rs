//! Exact computations with maximal commutative algebras of block Toeplitz
//! matrices whose blocks lie in a Schur algebra `O(σ,τ)`.
//!
//! All arithmetic is over the complex rationals, so every predicate
//! (Toeplitz-ness of a product, invertibility, commutativity, maximality)
//! is decided exactly.

pub mod algebra;
pub mod classify;
pub mod error;
pub mod fixtures;
pub mod json;
pub mod linalg;
pub mod sampling;
pub mod scalar;
pub mod schur;
pub mod toeplitz;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{DenseMatrix, Subspace};
pub use scalar::ComplexRational;
pub use schur::{SchurElement, SchurShape};
pub use toeplitz::BlockToeplitz;
