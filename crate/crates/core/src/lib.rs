//! Exact computation with generalized quiver Hecke algebras of types B and D,
//! their cyclotomic quotients, and the isomorphisms relating them to affine
//! Hecke algebras.

pub mod cli;
pub mod cyclotomic;
pub mod engine;
pub mod error;
pub mod linalg;
pub mod polrep;
pub mod poly;
pub mod quiver;
pub mod report;
pub mod scalars;
pub mod vqha;
pub mod weyl;
pub mod wqha;

pub use error::{Error, Result};
