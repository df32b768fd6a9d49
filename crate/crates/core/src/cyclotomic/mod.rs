//! Cyclotomic quotients of the type B and type D algebras and the
//! isomorphisms relating them to cyclotomic affine Hecke algebras.

pub mod fixed;
pub mod iso;
pub mod multiplicity;
pub mod qfamily;
pub mod quotient;

pub use iso::{iso_checks, IsoMapData};
pub use multiplicity::MultiplicityMap;
pub use qfamily::{ArrowOrientation, QSeriesFamily};
pub use quotient::{CycloAlgebra, QuotientOptions, DEFAULT_DEGREE_CAP};
