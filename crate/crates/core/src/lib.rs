//! Matrix formulas for the differential resultant of two generic first-order
//! ordinary differential polynomials in one differential indeterminate.
//!
//! The crate builds the square matrix `D_{d1,d2}` whose determinant is a
//! nonzero multiple of the differential resultant, certifies that the
//! determinant is not identically zero, and reproduces the same matrix from a
//! sparse-resultant style linear-programming partition.

pub mod certificate;
pub mod detkit;
pub mod diffsys;
pub mod error;
pub mod harness;
pub mod macaulay;
pub mod monomial_sets;
pub mod sparse_lp;
pub mod symcore;

pub use error::{Error, Result};
