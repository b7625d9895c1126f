use alloc::string::String;

use crate::formula::{ClauseId, VarId};

/// Errors produced by the core algorithms.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("literal references variable {var}, but the formula has {num_vars} variables")]
    OutOfRangeLiteral { var: i64, num_vars: usize },
    #[error("clause {clause} contains a variable and its negation")]
    TautologicalClause { clause: ClauseId },
    #[error("expected {expected} clause weights, got {found}")]
    WeightCountMismatch { expected: usize, found: usize },
    #[error("assignment covers {found} variables, formula has {expected}")]
    PartialAssignment { expected: usize, found: usize },
    #[error("ordering does not match the formula: {0}")]
    OrderingMismatch(String),
    #[error("side orders do not match the formula: {0}")]
    InvalidSideOrders(String),
    #[error("unknown clause {0}")]
    UnknownClause(ClauseId),
    #[error("edge count is undefined for an empty clause")]
    EmptyClause,
    #[error("clause {0} is empty and cannot be merged")]
    EmptyClauseInMerge(ClauseId),
    #[error("variable {0} already occurs in the clause being expanded")]
    OverlapError(VarId),
    #[error("cut index {index} outside 0..={len}")]
    CutOutOfRange { index: usize, len: usize },
    #[error("{count} variables exceed the enumeration cap of {cap}")]
    TooManyVariables { count: usize, cap: usize },
    #[error("{count} interleavings exceed the enumeration cap of {cap}")]
    TooManyInterleavings { count: u128, cap: u128 },
    #[error("invalid 3-partition instance: {0}")]
    InvalidInstance(String),
    #[error("not a 3-partition solution: {0}")]
    NotASolution(String),
    #[error("vertex {0} has no interval")]
    MissingInterval(usize),
    #[error("infeasible generator parameters: {0}")]
    InfeasibleParameters(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
