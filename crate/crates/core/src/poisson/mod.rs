//! Monomial differential forms on a corner chart of the cotangent space,
//! with the Poisson structure of the c-calculus.
//!
//! Brackets follow `{x_j, ξ_j} = −x_j^{c_j}` and `{y_j, ξ_j} = −1`.

mod calculus;
mod form;
mod homology;

pub use calculus::{delta, delta_checked, exterior_d, hodge_star, pairing, subsets, volume, DeltaRoute, PoissonTensor};
pub use form::{wedge_sign, LaurentForm, Monomial, Patch};
pub use homology::{
    dual_de_rham_dim, homogeneous_de_rham, homogeneous_poisson_homology, poisson_homology_stabilization, random_form, sector,
    subquotient, verify_identities, IdentityReport, PoissonStabilization, Truncation, SECTOR_BUDGET,
};
