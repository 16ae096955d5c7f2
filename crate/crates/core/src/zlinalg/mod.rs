//! Exact linear algebra over the integers.

mod group;
mod matrix;
mod smith;

pub use group::{cokernel, element_equal, Cokernel, FPAbGroup};
pub use matrix::{int, ints, sign, IntMatrix};
pub use smith::{
    inverse_unimodular, is_unimodular, kernel_basis, rank, smith_normal_form, solve, solve_matrix,
    solve_with, SmithDecomposition,
};
