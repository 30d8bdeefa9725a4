//! Exact sparse linear algebra over ℚ and ℚ(i).

mod field;
mod reduce;
mod sparse;

pub use field::{parse_q, q_frac, q_int, Field, Qi, Q};
pub use reduce::{decompose, rank, solve, Decomposition, Echelon, Reduction};
pub use sparse::{SparseMat, SparseVec};
