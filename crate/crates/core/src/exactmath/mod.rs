//! Exact integer and rational linear algebra: Hermite normal forms, kernel
//! lattices, determinants and linear feasibility.

mod lp;
mod matrix;

pub use lp::{is_irredundant, solve_inequalities, strict_feasible, strict_feasible_in};
pub use matrix::{
    det_bareiss, hnf, independent_rows, is_hermite_normal_form, kernel_lattice_basis, lattice_index,
    max_abs_minor, nonzero_maximal_minors, rank, IntMatrix,
};

pub(crate) use matrix::{det_i64, det_small};
