//! Brute-force decision of partial and total validity by direct graph
//! analysis of the target-avoiding region. Shares nothing with the prover
//! beyond the [`Ars`] primitives.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::ars::{Ars, ExecutionPath, ObjectId, StateSet};
use crate::error::ArsError;
use crate::proof::AprPredicate;
use crate::witness::Witness;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleAnswer {
    pub valid: bool,
    pub witness: Option<Witness>,
}

impl OracleAnswer {
    fn valid() -> Self {
        OracleAnswer {
            valid: true,
            witness: None,
        }
    }

    fn refuted(witness: Witness) -> Self {
        OracleAnswer {
            valid: false,
            witness: Some(witness),
        }
    }
}

/// Valid iff no normal form is reachable from `P \ Q` without passing `Q`.
pub fn oracle_partial(ars: &Ars, pred: &AprPredicate) -> Result<OracleAnswer, ArsError> {
    let region = ars.avoiding_region(pred.source(), pred.target())?;
    Ok(
        match shortest_path_to_normal_form(ars, pred.source(), &region) {
            Some(path) => OracleAnswer::refuted(Witness::FinitePath(path)),
            None => OracleAnswer::valid(),
        },
    )
}

/// Valid iff the target-avoiding region has no normal form and no cycle.
pub fn oracle_total(ars: &Ars, pred: &AprPredicate) -> Result<OracleAnswer, ArsError> {
    let region = ars.avoiding_region(pred.source(), pred.target())?;
    if let Some(path) = shortest_path_to_normal_form(ars, pred.source(), &region) {
        return Ok(OracleAnswer::refuted(Witness::FinitePath(path)));
    }
    let core = cyclic_core(ars, &region);
    if core.is_empty() {
        return Ok(OracleAnswer::valid());
    }
    // every core state has a successor in the core, so walking inside it
    // from the nearest core state must revisit a state
    let mut walk = bfs_path(ars, pred.source(), &region, |s| core.contains(s))
        .expect("core lies in the region reachable from the source");
    let mut position = vec![usize::MAX; ars.len()];
    for (i, s) in walk.iter().enumerate() {
        position[s.index()] = i;
    }
    loop {
        let last = *walk.last().unwrap();
        let next = ars
            .successors(last)
            .iter()
            .copied()
            .find(|&t| core.contains(t))
            .expect("core states have core successors");
        if position[next.index()] != usize::MAX {
            let start = position[next.index()];
            let cycle = walk.split_off(start);
            return Ok(OracleAnswer::refuted(Witness::Lasso { stem: walk, cycle }));
        }
        position[next.index()] = walk.len();
        walk.push(next);
    }
}

fn shortest_path_to_normal_form(
    ars: &Ars,
    source: &StateSet,
    region: &StateSet,
) -> Option<ExecutionPath> {
    bfs_path(ars, source, region, |s| ars.is_normal_form(s)).map(|steps| ExecutionPath {
        steps,
        is_maximal: true,
    })
}

/// Shortest path inside `region` from a region state of `source` to a state
/// satisfying `goal`; among equally short ones, the smallest goal id.
fn bfs_path(
    ars: &Ars,
    source: &StateSet,
    region: &StateSet,
    goal: impl Fn(ObjectId) -> bool,
) -> Option<Vec<ObjectId>> {
    let mut parent: Vec<Option<ObjectId>> = vec![None; ars.len()];
    let mut depth = vec![usize::MAX; ars.len()];
    let mut queue = VecDeque::new();
    for s in source.iter().filter(|&s| region.contains(s)) {
        depth[s.index()] = 0;
        queue.push_back(s);
    }
    let mut best: Option<ObjectId> = None;
    while let Some(s) = queue.pop_front() {
        if let Some(b) = best {
            if depth[s.index()] > depth[b.index()] {
                break;
            }
        }
        if goal(s) {
            best = Some(best.map_or(s, |b| b.min(s)));
            continue;
        }
        for &t in ars.successors(s) {
            if region.contains(t) && depth[t.index()] == usize::MAX {
                depth[t.index()] = depth[s.index()] + 1;
                parent[t.index()] = Some(s);
                queue.push_back(t);
            }
        }
    }
    let end = best?;
    let mut path = vec![end];
    let mut cursor = parent[end.index()];
    while let Some(s) = cursor {
        path.push(s);
        cursor = parent[s.index()];
    }
    path.reverse();
    Some(path)
}

/// What remains of `region` after repeatedly deleting states with no
/// successor left in it. Empty iff the induced subgraph is acyclic.
fn cyclic_core(ars: &Ars, region: &StateSet) -> StateSet {
    let n = ars.len();
    let mut alive = vec![false; n];
    for s in region.iter() {
        alive[s.index()] = true;
    }
    let mut out_degree = vec![0usize; n];
    let mut sinks = Vec::new();
    for s in region.iter() {
        out_degree[s.index()] = ars
            .successors(s)
            .iter()
            .filter(|t| alive[t.index()])
            .count();
        if out_degree[s.index()] == 0 {
            sinks.push(s);
        }
    }
    while let Some(s) = sinks.pop() {
        alive[s.index()] = false;
        for &p in ars.predecessors(s) {
            if alive[p.index()] {
                out_degree[p.index()] -= 1;
                if out_degree[p.index()] == 0 {
                    sinks.push(p);
                }
            }
        }
    }
    region.iter().filter(|s| alive[s.index()]).collect()
}
