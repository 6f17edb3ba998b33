//! Exact construction, determinant evaluation and regularity classification
//! for matrices with uniform polynomial entries `A_ij = (x_i + r_j·y_i)^ℓ`.
//!
//! Everything runs over the Gaussian rationals, so "singular" always means
//! an exact zero determinant.

pub mod combinatorics;
pub mod exact;
pub mod linalg;
pub mod random;
pub mod schur;
pub mod uniform;

pub use exact::Scalar;
pub use linalg::Matrix;
pub use uniform::{build_matrix, classify_regularity, UniformMatrixSpec};
