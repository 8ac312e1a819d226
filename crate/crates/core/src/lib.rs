//! All-path reachability over finite abstract reduction systems: a cyclic
//! proof system with a prover, an independent graph oracle, safety
//! reductions and a small modeling layer.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod ars;
pub mod error;
pub mod model;
pub mod oracle;
pub mod proof;
pub mod prover;
pub mod reductions;
pub mod witness;

pub use ars::{Ars, ExecutionPath, ObjectId, StateSet};
pub use error::{ArsError, ModelError, ProofError, ProverError, ReductionError};
pub use proof::{AprPredicate, PreProof, ProofGraph, RuleName, SplitStrategy};
pub use prover::{check_partial, check_total, prove, ProverConfig, Verdict, VerdictKind};
pub use witness::Witness;
