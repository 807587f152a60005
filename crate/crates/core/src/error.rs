use thiserror::Error;

use crate::diffsys::YMonomial;
use crate::symcore::CoeffSymbol;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("symbol {0} has no assigned value")]
    UnassignedSymbol(CoeffSymbol),

    #[error("polynomial is not exactly divisible by the given divisor")]
    NotDivisible,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("invalid system spec: {0}")]
    InvalidSpec(String),

    #[error("derivation would leave the (y, y1, y2) alphabet: {0}")]
    OrderOverflow(String),

    #[error("row {row} produces monomial {monomial} outside the column set")]
    ClosureViolation { row: String, monomial: YMonomial },

    #[error("certificate step {step} failed: {detail}")]
    CertificateFailure { step: usize, detail: String },

    #[error("symbolic determinant capped at {cap}x{cap}, matrix is {size}x{size}")]
    CapExceeded { cap: usize, size: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("perturbation components must lie strictly in (0, 1)")]
    InvalidPerturbation,

    #[error("basis columns are linearly dependent")]
    SingularBasis,

    #[error("unknown basis variable {0}")]
    UnknownVariable(String),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("no optimal solution with a unit vertex weight at lattice point {0:?}")]
    NoVertexOptimum([i64; 3]),

    #[error("illegal move of {monomial}: {reason}")]
    IllegalMove { monomial: YMonomial, reason: String },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("polynomial has degree zero in the eliminated variable")]
    DegreeZero,

    #[error("intermediate resultant collapsed to zero at stage {0}")]
    IntermediateZero(String),

    #[error("modulus {0} divides a denominator of the specialization")]
    BadModulus(u64),

    #[error("parse error: {0}")]
    Parse(String),
}
