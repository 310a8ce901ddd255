//! Semigroup-graded finite-dimensional algebras: graded simplicity, graded
//! Wedderburn-Malcev decompositions, graded codimensions and the PI-exponent
//! bounds for algebras whose semisimple part is a full matrix algebra.

pub mod kernel;
pub mod semigroups;
pub mod algebra;
pub mod constructions;
pub mod pi;
pub mod exponent;

pub use kernel::{Field, Mat, Scalar, Vector};
