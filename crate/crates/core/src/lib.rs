//! Knot Floer complexes over F2[U, U^-1]: region homologies, large and
//! rational surgery ranks, almost L-space detection and classification, and
//! a bounded enumerator of small complexes.

pub mod algebra;
pub mod classify;
pub mod complex;
pub mod enumerate;
pub mod error;
pub mod invariants;
pub mod regions;
pub mod surgery;

pub use algebra::{chain_homology, f2_rank, BitMatrix, BitVec, GradedHomology};
pub use complex::{Arrow, Generator, KnotComplex, LatticePoint};
pub use error::{Error, Result};
pub use regions::Region;
