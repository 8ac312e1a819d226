use alloc::string::String;

use thiserror::Error;

use crate::ars::ObjectId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArsError {
    #[error("unknown object {0}")]
    UnknownObject(ObjectId),
    #[error("unknown label '{0}'")]
    UnknownLabel(String),
    #[error("duplicate label '{0}'")]
    DuplicateLabel(String),
    #[error("too many objects ({0})")]
    TooManyObjects(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error(transparent)]
    Ars(#[from] ArsError),
    #[error("no rule applies to the bottom predicate")]
    Bottom,
    #[error("pre-proof is not closed: node {0} is an open leaf without a companion")]
    NotClosed(usize),
    #[error("pre-proof is malformed: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProverError {
    #[error(transparent)]
    Proof(#[from] ProofError),
    #[error("node budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("node budget must be at least 1")]
    ZeroBudget,
    #[error("pre-proof contains no Dis node")]
    NotADisproof,
    #[error("no cycle in the target-avoiding region")]
    NoCycle,
}

impl From<ArsError> for ProverError {
    fn from(e: ArsError) -> Self {
        ProverError::Proof(ProofError::Ars(e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Ars(#[from] ArsError),
    #[error("error state '{0}' is reducible; augment with a dummy error state first")]
    ReducibleErrorState(String),
    #[error("error state set is empty")]
    NoErrorStates,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("no process declared")]
    NoProcess,
    #[error("duplicate {kind} name '{name}'")]
    Duplicate { kind: &'static str, name: String },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("unknown process '{0}'")]
    UnknownProcess(String),
    #[error("unknown location '{location}' in process '{process}'")]
    UnknownLocation { process: String, location: String },
    #[error("process '{0}' has no initial location")]
    NoInitialLocation(String),
    #[error("variable '{0}' has no initial value")]
    NoInitialValue(String),
    #[error("value {value} out of domain of '{variable}'")]
    OutOfDomain { variable: String, value: i64 },
    #[error("empty integer range {lo}..{hi} for '{variable}'")]
    EmptyRange { variable: String, lo: i64, hi: i64 },
    #[error("type error: {0}")]
    Type(String),
    #[error("state space of {0} states exceeds the cap of {1}")]
    StateSpaceTooLarge(u128, usize),
}
