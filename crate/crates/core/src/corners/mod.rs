//! Manifolds with corners, their Laurent–de Rham cohomology and the glued
//! space `𝓛(M)`.

mod cells;
mod glued;
mod manifold;

pub use cells::{kunneth, pair_sequence, parity_totals, sphere_betti, Cell, CellComplex, CELL_BUDGET};
pub use glued::{build_l, cellular_cohomology, pullback_ranks, GluedSpace};
pub use manifold::{circle, cube, open_interval, CornerManifold, Face, FaceSpec, FaceSubset, ValidationReport};
