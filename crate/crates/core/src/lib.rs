//! Toric ideals of integer matrices: Gröbner bases, Graver bases, circuits,
//! universal Gröbner bases, integer programming and the state polytope fan.

pub mod buchberger;
pub mod error;
pub mod exactmath;
pub mod fan;
pub mod instances;
pub mod ip;
pub mod orders;
pub mod toric;

pub use error::{Error, Result};

/// Integer vector in the lattice `Z^n`.
pub type LatticeVector = Vec<i64>;
/// Exact rational vector.
pub type RationalVector = Vec<num_rational::BigRational>;
