//! Dense linear algebra generic over the scalar type.

pub mod eigen;
pub mod eliminate;
pub mod matrix;
pub mod scalar;

pub use eigen::{symmetric_eigen, SymmetricEigen};
pub use eliminate::{clear_row_denominators, fraction_free_rref, invert, FractionFreeEchelon};
pub use matrix::Matrix;
pub use scalar::{Field, IntegralDomain, Ring};
