//! Exact integer linear algebra: dense matrices, Smith normal form, integer
//! kernels and linear solving. Everything else in the crate is built on this.

mod lattice;
mod matrix;
mod snf;

use thiserror::Error;

pub use lattice::{column_basis, in_span, kernel_basis, solve, ColumnSpan};
pub use matrix::IntMatrix;
pub use snf::{
    invariant_factors, invariant_factors_i64, smith_normal_form, smith_normal_form_big, SnfResult,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{op}: dimension mismatch (expected {expected}, found {found})")]
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{op}: shape mismatch ({left:?} vs {right:?})")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
}
