//! Counterexamples to partial and total validity.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::ars::{Ars, ExecutionPath, ObjectId, StateSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A maximal target-free path ending in a normal form.
    FinitePath(ExecutionPath),
    /// A target-free infinite path: `stem` followed by `cycle` repeated forever.
    Lasso {
        stem: Vec<ObjectId>,
        cycle: Vec<ObjectId>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessError(pub &'static str);

impl fmt::Display for WitnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl Witness {
    /// Checks the witness against the query it refutes.
    pub fn check(
        &self,
        ars: &Ars,
        source: &StateSet,
        target: &StateSet,
    ) -> Result<(), WitnessError> {
        let err = |m| Err(WitnessError(m));
        match self {
            Witness::FinitePath(path) => {
                if path.steps.is_empty() {
                    return err("empty path");
                }
                if !path.is_maximal {
                    return err("path is not flagged maximal");
                }
                if !path.is_well_formed(ars) {
                    return err("path is not a maximal reduction sequence");
                }
                if !source.contains(path.steps[0]) {
                    return err("path does not start in the source set");
                }
                if path.steps.iter().any(|&s| target.contains(s)) {
                    return err("path visits the target set");
                }
                Ok(())
            }
            Witness::Lasso { stem, cycle } => {
                if cycle.is_empty() {
                    return err("empty cycle");
                }
                if stem.iter().chain(cycle).any(|s| s.index() >= ars.len()) {
                    return err("unknown object in lasso");
                }
                let first = stem.first().unwrap_or(&cycle[0]);
                if !source.contains(*first) {
                    return err("lasso does not start in the source set");
                }
                let linked = stem
                    .iter()
                    .chain(cycle)
                    .zip(stem.iter().chain(cycle).skip(1))
                    .all(|(&s, &t)| ars.has_edge(s, t));
                if !linked {
                    return err("lasso steps are not edges");
                }
                if !ars.has_edge(cycle[cycle.len() - 1], cycle[0]) {
                    return err("cycle does not close");
                }
                if stem.iter().chain(cycle).any(|&s| target.contains(s)) {
                    return err("lasso visits the target set");
                }
                Ok(())
            }
        }
    }

    /// `a -> d` for paths; `a -> b -> (c -> b)*` for a lasso with stem `[a]`
    /// and cycle `[b, c]`.
    pub fn render(&self, ars: &Ars) -> String {
        let mut out = String::new();
        let push = |id: ObjectId, out: &mut String| {
            if !out.is_empty() && !out.ends_with('(') {
                out.push_str(" -> ");
            }
            out.push_str(ars.label(id));
        };
        match self {
            Witness::FinitePath(path) => {
                for &s in &path.steps {
                    push(s, &mut out);
                }
            }
            Witness::Lasso { stem, cycle } => {
                for &s in stem {
                    push(s, &mut out);
                }
                push(cycle[0], &mut out);
                out.push_str(" -> (");
                for &s in cycle[1..].iter().chain(core::iter::once(&cycle[0])) {
                    push(s, &mut out);
                }
                out.push_str(")*");
            }
        }
        out
    }
}
