//! Safety queries: reducing error non-reachability to partial validity.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::ars::{Ars, ObjectId, StateSet};
use crate::error::ReductionError;
use crate::proof::AprPredicate;

/// Outcome of checking whether `P => Q` is a safety predicate for `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SafetyCheckReport {
    /// `Q` and `E` are disjoint.
    pub disjoint_ok: bool,
    /// Every non-error normal form reachable from `P` lies in `Q`.
    pub covers_nf_ok: bool,
    /// `Q` holds only normal forms.
    pub q_irreducible_ok: bool,
    /// States in `Q ∩ E`.
    pub overlapping: StateSet,
    /// Reachable non-error normal forms missing from `Q`.
    pub uncovered: StateSet,
    /// Reducible states in `Q`.
    pub reducible_targets: StateSet,
}

impl SafetyCheckReport {
    pub fn is_safety_predicate(&self) -> bool {
        self.disjoint_ok && self.covers_nf_ok && self.q_irreducible_ok
    }
}

fn require_irreducible(ars: &Ars, e: &StateSet) -> Result<(), ReductionError> {
    ars.check_set(e)?;
    match e.iter().find(|&s| !ars.is_normal_form(s)) {
        Some(s) => Err(ReductionError::ReducibleErrorState(String::from(
            ars.label(s),
        ))),
        None => Ok(()),
    }
}

pub fn validate_safety_predicate(
    ars: &Ars,
    p: &StateSet,
    q: &StateSet,
    e: &StateSet,
) -> Result<SafetyCheckReport, ReductionError> {
    require_irreducible(ars, e)?;
    ars.check_set(q)?;
    let overlapping = q.intersection(e);
    let reachable_nf = ars
        .reachable(p)?
        .intersection(ars.normal_forms())
        .difference(e);
    let uncovered = reachable_nf.difference(q);
    let reducible_targets = q.difference(ars.normal_forms());
    Ok(SafetyCheckReport {
        disjoint_ok: overlapping.is_empty(),
        covers_nf_ok: uncovered.is_empty(),
        q_irreducible_ok: reducible_targets.is_empty(),
        overlapping,
        uncovered,
        reducible_targets,
    })
}

/// `base` if unused, else the first free `base_1`, `base_2`, ...
pub fn fresh_label(ars: &Ars, base: &str) -> String {
    if ars.id_of(base).is_none() {
        return String::from(base);
    }
    (1..)
        .map(|i| format!("{base}_{i}"))
        .find(|l| ars.id_of(l).is_none())
        .expect("unbounded suffix search")
}

/// Adds an irreducible `error` object and an edge to it from every error state.
pub fn augment_error(
    ars: &Ars,
    error_states: &StateSet,
) -> Result<(Ars, ObjectId), ReductionError> {
    ars.check_set(error_states)?;
    if error_states.is_empty() {
        return Err(ReductionError::NoErrorStates);
    }
    let fresh = ObjectId(ars.len() as u32);
    let edges: Vec<_> = error_states.iter().map(|s| (s, fresh)).collect();
    Ok(ars.extend_with(fresh_label(ars, "error"), edges)?)
}

/// Adds an irreducible `any` object reachable in one step from every
/// non-error state.
pub fn augment_any(ars: &Ars, e: &StateSet) -> Result<(Ars, ObjectId), ReductionError> {
    require_irreducible(ars, e)?;
    let fresh = ObjectId(ars.len() as u32);
    let edges: Vec<_> = ars
        .objects()
        .filter(|&s| !e.contains(s))
        .map(|s| (s, fresh))
        .collect();
    Ok(ars.extend_with(fresh_label(ars, "any"), edges)?)
}

/// A safety query ready for the prover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SafetyQuery {
    /// Augmented system; ids of the input system are a prefix.
    pub ars: Ars,
    /// `P => {any}`; partially valid iff no error state is reachable.
    pub predicate: AprPredicate,
    /// Irreducible error set the query was built against.
    pub errors: StateSet,
    /// Dummy error object, when the raw error set had reducible states.
    pub error_object: Option<ObjectId>,
    pub any_object: ObjectId,
}

pub fn build_safety_query(
    ars: &Ars,
    p: &StateSet,
    e_raw: &StateSet,
) -> Result<SafetyQuery, ReductionError> {
    ars.check_set(p)?;
    ars.check_set(e_raw)?;
    let (base, errors, error_object) = if e_raw.iter().any(|s| !ars.is_normal_form(s)) {
        let (augmented, error) = augment_error(ars, e_raw)?;
        (augmented, StateSet::singleton(error), Some(error))
    } else {
        (ars.clone(), e_raw.clone(), None)
    };
    let (augmented, any) = augment_any(&base, &errors)?;
    Ok(SafetyQuery {
        predicate: AprPredicate::new(p.clone(), StateSet::singleton(any)),
        ars: augmented,
        errors,
        error_object,
        any_object: any,
    })
}
