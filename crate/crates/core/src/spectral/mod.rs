//! Filtered complexes, their spectral sequences, and inverse limits.
//!
//! Two independent routes compute pages: [`barcode`] pairs basis vectors by
//! column reduction in filtration order, [`page`] evaluates `Z^r / B^r`
//! directly. [`converge`] compares `E^∞` with the homology computed by ranks.

mod barcode;
mod converge;
mod filtered;
mod pages;
mod tower;

pub use barcode::{barcode, Barcode, Pair};
pub use converge::{converge, ConvergenceReport};
pub use filtered::FilteredComplex;
pub use pages::{page, PageCell, PageEngine, SpectralPage};
pub use tower::{exact_limp_check, ml_pattern_check, tower_limits, ComplexTower, PatternReport, SubTower, Tail, Tower, TowerLimits};
