//! Hochschild, cyclic and bar complexes of weight-graded algebras.
//!
//! Algebras are given by structure constants on [`Gen`] bases. Chains live in
//! finite [`Window`]s of tensors, one weight at a time; the operators `b`,
//! `b′`, `s`, `t`, `B₀`, `B` act on formal combinations of tensors.

mod algebra;
mod complex;
mod hkr;
mod ops;
mod window;

pub use algebra::{product, CircleRing, FiniteAlgebra, Gen, GradedAlgebra, GroundField, Monomials, UvPoly};
pub use complex::{
    bar_complex, h_unital_check, hh_stabilized, hochschild_complex, mixed_complex, HUnitalReport, HochschildComplex, Stabilized,
    TensorBasis,
};
pub use hkr::{fourier_coordinates, hkr_chi, monomial_coordinates, Coordinates};
pub use ops::{total_order, total_weight, HochschildChain, Operator, Ops, Tensor};
pub use window::Window;
