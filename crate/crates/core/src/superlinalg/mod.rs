//! ℤ₂-graded linear algebra: graded spaces, sparse homogeneous operators,
//! Koszul tensor products and (partial) supertraces.
//!
//! Koszul signs are produced in exactly two places, [`graded_kron`] and
//! [`graded_permutation`]; representation code never inserts them by hand.

mod dense;
mod dump;
mod matrix;
mod space;
mod tensor;
mod trace;

pub use dense::DenseMatrix;
pub use dump::{BasisEntry, MatrixDump};
pub use matrix::GradedMatrix;
pub use space::{GradedSpace, Label, Parity, Sign};
pub use tensor::{embed_12, embed_13, embed_23, graded_kron, graded_permutation};
pub use trace::{partial_supertrace_first, partial_supertrace_first_with, supertrace, twisted_supertrace};

#[cfg(test)]
mod tests;
