//! Exact computations for two-dimensional Nichols algebras of diagonal type.
//!
//! The crate classifies a braiding matrix `(q_ij)` against the 22 families of
//! finite-dimensional rank two Nichols algebras described by full binary
//! trees, rebuilds the tree from the braiding, and verifies the resulting PBW
//! basis, relations and dimension against brute-force oracles computed in
//! degree-truncated tensor algebras.
//!
//! All scalars live in cyclotomic fields ([`cyclotomic::CycNum`]); no floating
//! point is used anywhere.

pub mod admissibility;
pub mod braidedalg;
pub mod classify;
pub mod cyclotomic;
pub mod error;
pub mod fbtree;
pub mod linalg;
pub mod lyndon;
pub mod nicholscore;

pub use cyclotomic::{parse_scalar, qfact, qnum, root_of_unity, CycNum};
pub use error::{Error, Result};
