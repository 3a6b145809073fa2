//! Exact scalars over `Q` and `F_{p^m}` and the linear algebra built on them.

mod field;
mod matrix;
pub(crate) mod ser;

pub use field::{first_irreducible, is_irreducible_fp, is_prime, Embedding, Field, FieldDesc, Scalar, MAX_FIELD_SIZE};
pub use matrix::{is_invertible, kernel_basis, left_kernel, rref, solve_affine, Echelon, ExactMatrix, Rref};
