//! Exact linear algebra over the rationals and over prime fields.

mod mat;
mod scalar;

pub use mat::{column_basis, image_complement, image_complement_indices, kernel_basis, rank, solve, Echelon, Mat};
pub use scalar::{Field, Scalar};
