#![allow(dead_code)]

use apr_core::{AprPredicate, Ars, ObjectId, StateSet};
use proptest::prelude::*;

/// A random system with `1..=max_states` objects named `s0, s1, ...` and
/// up to two edges per object, plus source and target masks.
#[derive(Clone, Debug)]
pub struct Instance {
    pub ars: Ars,
    pub p: StateSet,
    pub q: StateSet,
}

impl Instance {
    pub fn pred(&self) -> AprPredicate {
        AprPredicate::new(self.p.clone(), self.q.clone())
    }
}

pub fn build(n: usize, edges: &[(usize, usize)]) -> Ars {
    let labels = (0..n).map(|i| format!("s{i}")).collect();
    Ars::new(
        labels,
        edges
            .iter()
            .map(|&(a, b)| (ObjectId(a as u32), ObjectId(b as u32))),
    )
    .unwrap()
}

pub fn mask(n: usize, bits: u32) -> StateSet {
    (0..n)
        .filter(|i| bits >> i & 1 == 1)
        .map(|i| ObjectId(i as u32))
        .collect()
}

pub fn arb_ars(max_states: usize) -> impl Strategy<Value = Ars> {
    (1..=max_states).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..=2 * n).prop_map(move |e| build(n, &e))
    })
}

pub fn arb_instance(max_states: usize) -> impl Strategy<Value = Instance> {
    arb_ars(max_states).prop_flat_map(|ars| {
        let n = ars.len();
        (Just(ars), any::<u32>(), any::<u32>()).prop_map(move |(ars, p, q)| Instance {
            p: mask(n, p),
            q: mask(n, q),
            ars,
        })
    })
}

/// Every simple path from `p` that avoids `q`, by depth-first enumeration.
fn simple_paths(ars: &Ars, p: &StateSet, q: &StateSet, mut visit: impl FnMut(&[ObjectId])) {
    fn go(ars: &Ars, q: &StateSet, path: &mut Vec<ObjectId>, visit: &mut dyn FnMut(&[ObjectId])) {
        visit(path);
        let last = *path.last().unwrap();
        for &t in ars.successors(last) {
            if !q.contains(t) && !path.contains(&t) {
                path.push(t);
                go(ars, q, path, visit);
                path.pop();
            }
        }
    }
    for s in p.iter().filter(|&s| !q.contains(s)) {
        go(ars, q, &mut vec![s], &mut visit);
    }
}

/// Partial validity by looking for a target-free simple path into a normal form.
pub fn naive_partial(ars: &Ars, p: &StateSet, q: &StateSet) -> bool {
    let mut valid = true;
    simple_paths(ars, p, q, |path| {
        if ars.is_normal_form(*path.last().unwrap()) {
            valid = false;
        }
    });
    valid
}

/// Total validity: additionally, no target-free simple path may close a loop.
pub fn naive_total(ars: &Ars, p: &StateSet, q: &StateSet) -> bool {
    let mut valid = naive_partial(ars, p, q);
    simple_paths(ars, p, q, |path| {
        let last = *path.last().unwrap();
        if ars.successors(last).iter().any(|t| path.contains(t)) {
            valid = false;
        }
    });
    valid
}

/// Whether some finite maximal path from `p` avoiding `q` visits `e`.
pub fn naive_hits_error(ars: &Ars, p: &StateSet, q: &StateSet, e: &StateSet) -> bool {
    // error states are irreducible, so such a path ends in its first error
    let mut hit = false;
    simple_paths(ars, p, q, |path| {
        if e.contains(*path.last().unwrap()) {
            hit = true;
        }
    });
    hit
}
