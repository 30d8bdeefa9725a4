//! Chain complexes, chain maps, long exact sequences and mixed complexes.

mod chain;
mod les;
mod map;
mod mixed;

pub use chain::{ChainComplex, Homology, HomologyData, Orientation};
pub use les::{les_of_ses, les_of_ses_window, ExactSequenceReport, Node};
pub use map::{compose_check, ChainMap};
pub use mixed::{cyclic_total, sbi_report, CyclicTotal, MixedComplex};
