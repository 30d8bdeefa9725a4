//! Exact homological algebra for filtered symbol algebras.
//!
//! The crate computes Hochschild, cyclic and periodic homology of truncated
//! symbol-type algebras through spectral sequences, Laurent de Rham
//! cohomology of manifolds with corners through their glued spaces, and
//! homogeneous Poisson homology of the c-calculus. Every dimension comes
//! from an exact rank computation over ℚ or ℚ(i).

pub mod complexes;
pub mod corners;
pub mod error;
pub mod evaluator;
pub mod hochschild;
pub mod poisson;
pub mod qlinalg;
pub mod spectral;

pub use error::{Error, Result};
