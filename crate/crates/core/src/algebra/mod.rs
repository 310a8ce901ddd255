//! Finite-dimensional associative algebras given by structure constants,
//! their gradings, radicals and graded decompositions.

mod ideals;
mod iso;
mod layers;
mod radical;
mod spectral;
mod structure;
mod wm;

pub use ideals::*;
pub use iso::*;
pub use layers::*;
pub use radical::*;
pub use spectral::*;
pub use structure::*;
pub use wm::*;

use thiserror::Error;

use crate::kernel::KernelError;
use crate::semigroups::SemigroupError;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("shape: {0}")]
    Shape(String),
    #[error("radical requires characteristic 0 or p > dim")]
    SmallCharacteristic,
    #[error("internal: {0}")]
    Internal(String),
    #[error("indeterminate: non-split quotient")]
    Indeterminate,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("non-split or non-simple")]
    NonSplit,
    #[error("dimension {0} is not a square")]
    NotSquare(usize),
    #[error("not a minimal left ideal")]
    NotMinimalLeftIdeal,
    #[error("sum is not direct")]
    NotDirect,
    #[error("map is not compatible with the components")]
    NotComponentCompatible,
    #[error("no graded decomposition: {0}")]
    NoGradedDecomposition(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}
