//! Breadth-first construction of closed pre-proofs, and the partial/total
//! validity verdicts built on them.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::ars::{Ars, ExecutionPath, ObjectId, StateSet};
use crate::error::{ProofError, ProverError};
use crate::proof::{
    applicable_rule, premises, proof_graph, AprPredicate, DerivationTree, Node, NodeId, PreProof,
    RuleName, SplitStrategy,
};
use crate::witness::Witness;

pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ProverConfig {
    pub strategy: SplitStrategy,
    /// Upper bound on created tree nodes.
    pub node_budget: usize,
}

impl Default for ProverConfig {
    fn default() -> Self {
        ProverConfig {
            strategy: SplitStrategy::Eager,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl ProverConfig {
    pub fn with_strategy(strategy: SplitStrategy) -> Self {
        ProverConfig {
            strategy,
            ..Self::default()
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    PartiallyValid,
    NotPartiallyValid,
    TotallyValid,
    NotTotallyValid,
}

impl VerdictKind {
    pub fn holds(self) -> bool {
        matches!(
            self,
            VerdictKind::PartiallyValid | VerdictKind::TotallyValid
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::PartiallyValid => "PartiallyValid",
            VerdictKind::NotPartiallyValid => "NotPartiallyValid",
            VerdictKind::TotallyValid => "TotallyValid",
            VerdictKind::NotTotallyValid => "NotTotallyValid",
        }
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct ProverStats {
    pub nodes: usize,
    pub buds: usize,
    pub axiom: usize,
    pub subs: usize,
    pub der: usize,
    pub dis: usize,
}

impl ProverStats {
    pub fn of(pp: &PreProof) -> Self {
        let t = &pp.tree;
        ProverStats {
            nodes: t.len(),
            buds: pp.companions.len(),
            axiom: t.count_rule(RuleName::Axiom),
            subs: t.count_rule(RuleName::Subs),
            der: t.count_rule(RuleName::Der),
            dis: t.count_rule(RuleName::Dis),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub pre_proof: PreProof,
    pub witness: Option<Witness>,
    pub stats: ProverStats,
}

/// Builds a closed pre-proof (a proof or a disproof) of `pred`.
///
/// Nodes are processed first-in first-out. A node whose predicate equals
/// that of an earlier `Der` node becomes a bud of the earliest such node;
/// otherwise the unique applicable rule is applied.
pub fn prove(ars: &Ars, pred: &AprPredicate, cfg: &ProverConfig) -> Result<PreProof, ProverError> {
    if cfg.node_budget == 0 {
        return Err(ProverError::ZeroBudget);
    }
    // rejects bottom and out-of-range ids up front
    applicable_rule(ars, pred)?;

    let mut nodes = vec![Node::open(pred.clone())];
    let mut companions = BTreeMap::new();
    let mut der_nodes: BTreeMap<AprPredicate, NodeId> = BTreeMap::new();
    // every node shares the root's target, so one list of Der sources suffices
    let mut der_sources: Vec<StateSet> = Vec::new();
    let mut queue = VecDeque::from([0]);

    while let Some(v) = queue.pop_front() {
        let current = nodes[v].predicate.clone();
        if let Some(&companion) = der_nodes.get(&current) {
            companions.insert(v, companion);
            continue;
        }
        if applicable_rule(ars, &current)? == RuleName::Der {
            der_nodes.insert(current.clone(), v);
            der_sources.push(current.source().clone());
        }
        let (rule, children) = premises(ars, &current, cfg.strategy, &der_sources)?;
        if nodes.len() + children.len() > cfg.node_budget {
            return Err(ProverError::BudgetExceeded(cfg.node_budget));
        }
        let mut ids = Vec::with_capacity(children.len());
        for child in children {
            let id = nodes.len();
            if !child.is_bottom() {
                queue.push_back(id);
            }
            nodes.push(Node::open(child));
            ids.push(id);
        }
        nodes[v].rule = Some(rule);
        nodes[v].children = Some(ids);
    }

    Ok(PreProof {
        tree: DerivationTree { nodes, root: 0 },
        companions,
    })
}

/// Decides partial validity.
pub fn check_partial(
    ars: &Ars,
    pred: &AprPredicate,
    cfg: &ProverConfig,
) -> Result<Verdict, ProverError> {
    let pp = prove(ars, pred, cfg)?;
    let stats = ProverStats::of(&pp);
    if pp.has_dis() {
        let path = extract_finite_counterexample(ars, &pp)?;
        Ok(Verdict {
            kind: VerdictKind::NotPartiallyValid,
            pre_proof: pp,
            witness: Some(Witness::FinitePath(path)),
            stats,
        })
    } else {
        Ok(Verdict {
            kind: VerdictKind::PartiallyValid,
            pre_proof: pp,
            witness: None,
            stats,
        })
    }
}

/// Decides total validity: a proof whose graph is acyclic certifies it, a
/// disproof or a cyclic proof refutes it.
pub fn check_total(
    ars: &Ars,
    pred: &AprPredicate,
    cfg: &ProverConfig,
) -> Result<Verdict, ProverError> {
    let partial = check_partial(ars, pred, cfg)?;
    if partial.kind == VerdictKind::NotPartiallyValid {
        return Ok(Verdict {
            kind: VerdictKind::NotTotallyValid,
            ..partial
        });
    }
    let graph = proof_graph(&partial.pre_proof)?;
    if graph.is_acyclic() {
        Ok(Verdict {
            kind: VerdictKind::TotallyValid,
            ..partial
        })
    } else {
        Ok(Verdict {
            kind: VerdictKind::NotTotallyValid,
            witness: Some(extract_lasso(ars, pred)?),
            ..partial
        })
    }
}

/// Reads a maximal target-free path off the first `Dis` node of a disproof.
///
/// Starting from the smallest irreducible non-target state of the `Dis`
/// node, walks back to the root: through `Subs` the state is kept, through
/// `Der` it is replaced by its smallest predecessor in the parent's source.
pub fn extract_finite_counterexample(
    ars: &Ars,
    disproof: &PreProof,
) -> Result<ExecutionPath, ProverError> {
    let tree = &disproof.tree;
    let dis = tree
        .nodes
        .iter()
        .position(|n| n.rule == Some(RuleName::Dis))
        .ok_or(ProverError::NotADisproof)?;
    let pred = &tree.nodes[dis].predicate;
    let malformed = |m: &str| ProverError::Proof(ProofError::Malformed(m.into()));
    let mut current = pred
        .source()
        .iter()
        .find(|&s| ars.is_normal_form(s) && !pred.target().contains(s))
        .ok_or_else(|| malformed("Dis node without an irreducible non-target state"))?;

    let parents = tree.parents();
    let mut reversed = vec![current];
    let mut v = dis;
    while let Some(parent) = parents[v] {
        let node = &tree.nodes[parent];
        match node.rule {
            Some(RuleName::Subs) => {}
            Some(RuleName::Der) => {
                current = ars
                    .predecessors(current)
                    .iter()
                    .copied()
                    .find(|&s| node.predicate.source().contains(s))
                    .ok_or_else(|| malformed("Der premise state without a predecessor"))?;
                reversed.push(current);
            }
            _ => return Err(malformed("unexpected rule on the path to Dis")),
        }
        v = parent;
    }
    reversed.reverse();
    Ok(ExecutionPath {
        steps: reversed,
        is_maximal: true,
    })
}

/// Finds an infinite target-avoiding path from the source set.
///
/// The cycle entry is the cycle-bearing state closest to the source (ties
/// broken by smallest id); the stem is a shortest path to it and the cycle a
/// shortest return path.
pub fn extract_lasso(ars: &Ars, pred: &AprPredicate) -> Result<Witness, ProverError> {
    if pred.is_bottom() {
        return Err(ProofError::Bottom.into());
    }
    let region = ars.avoiding_region(pred.source(), pred.target())?;
    let component = region_components(ars, &region);
    let on_cycle = |s: ObjectId| {
        component[s.index()].is_some_and(|c| {
            ars.successors(s)
                .iter()
                .any(|&t| t != s && component[t.index()] == Some(c))
                || ars.has_edge(s, s)
        })
    };

    // BFS inside the region from the target-free part of the source
    let n = ars.len();
    let mut parent: Vec<Option<ObjectId>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut frontier: Vec<ObjectId> = pred
        .source()
        .iter()
        .filter(|&s| region.contains(s))
        .collect();
    for &s in &frontier {
        seen[s.index()] = true;
    }
    let entry = loop {
        if frontier.is_empty() {
            return Err(ProverError::NoCycle);
        }
        if let Some(&e) = frontier.iter().filter(|&&s| on_cycle(s)).min() {
            break e;
        }
        let mut next = Vec::new();
        for &s in &frontier {
            for &t in ars.successors(s) {
                if region.contains(t) && !seen[t.index()] {
                    seen[t.index()] = true;
                    parent[t.index()] = Some(s);
                    next.push(t);
                }
            }
        }
        frontier = next;
    };

    let mut stem = Vec::new();
    let mut cursor = parent[entry.index()];
    while let Some(s) = cursor {
        stem.push(s);
        cursor = parent[s.index()];
    }
    stem.reverse();

    let cycle = if ars.has_edge(entry, entry) {
        vec![entry]
    } else {
        let comp = component[entry.index()];
        let mut back: Vec<Option<ObjectId>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([entry]);
        seen[entry.index()] = true;
        'search: while let Some(s) = queue.pop_front() {
            for &t in ars.successors(s) {
                if t == entry {
                    back[entry.index()] = Some(s);
                    break 'search;
                }
                if component[t.index()] == comp && !seen[t.index()] {
                    seen[t.index()] = true;
                    back[t.index()] = Some(s);
                    queue.push_back(t);
                }
            }
        }
        let mut cycle = Vec::new();
        let mut cursor = back[entry.index()].expect("entry lies on a cycle");
        while cursor != entry {
            cycle.push(cursor);
            cursor = back[cursor.index()].expect("back pointers lead to the entry");
        }
        cycle.push(entry);
        cycle.reverse();
        cycle
    };
    Ok(Witness::Lasso { stem, cycle })
}

/// Strongly connected components of the subgraph induced on `region`
/// (Kosaraju, iterative). States outside the region map to `None`.
fn region_components(ars: &Ars, region: &StateSet) -> Vec<Option<usize>> {
    let n = ars.len();
    let inside = |s: ObjectId| region.contains(s);

    let mut order = Vec::with_capacity(region.len());
    let mut visited = vec![false; n];
    for root in region.iter() {
        if visited[root.index()] {
            continue;
        }
        visited[root.index()] = true;
        let mut stack = vec![(root, 0usize)];
        while let Some(&mut (s, ref mut i)) = stack.last_mut() {
            let succ = ars.successors(s);
            if let Some(&t) = succ.get(*i) {
                *i += 1;
                if inside(t) && !visited[t.index()] {
                    visited[t.index()] = true;
                    stack.push((t, 0));
                }
            } else {
                order.push(s);
                stack.pop();
            }
        }
    }

    let mut component = vec![None; n];
    let mut count = 0;
    for &root in order.iter().rev() {
        if component[root.index()].is_some() {
            continue;
        }
        component[root.index()] = Some(count);
        let mut stack = vec![root];
        while let Some(s) = stack.pop() {
            for &t in ars.predecessors(s) {
                if inside(t) && component[t.index()].is_none() {
                    component[t.index()] = Some(count);
                    stack.push(t);
                }
            }
        }
        count += 1;
    }
    component
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ars::tests::a1;
    use crate::proof::tests::pred;
    use crate::proof::{validate_pre_proof, Classification};

    fn ids(ars: &Ars, labels: &[&str]) -> Vec<ObjectId> {
        labels.iter().map(|l| ars.id_of(l).unwrap()).collect()
    }

    #[test]
    fn eager_proof_has_the_six_node_shape() {
        let ars = a1();
        let pp = prove(
            &ars,
            &pred(&ars, &["a"], &["c", "d"]),
            &ProverConfig::default(),
        )
        .unwrap();
        assert_eq!(pp.tree.len(), 6);
        assert_eq!(pp.companions.len(), 1);
        let rules: Vec<Option<RuleName>> = pp.tree.nodes.iter().map(|n| n.rule).collect();
        assert_eq!(
            rules,
            vec![
                Some(RuleName::Der),
                Some(RuleName::Subs),
                Some(RuleName::Der),
                None,
                Some(RuleName::Subs),
                Some(RuleName::Axiom),
            ]
        );
        assert_eq!(pp.companions.get(&3), Some(&0));
        assert!(validate_pre_proof(&ars, &pp).is_valid());
    }

    #[test]
    fn monolithic_disproof_has_three_nodes() {
        let ars = a1();
        let cfg = ProverConfig::with_strategy(SplitStrategy::Monolithic);
        let pp = prove(&ars, &pred(&ars, &["a"], &["c"]), &cfg).unwrap();
        assert_eq!(pp.tree.len(), 3);
        assert_eq!(pp.tree.nodes[0].rule, Some(RuleName::Der));
        assert_eq!(pp.tree.nodes[1].rule, Some(RuleName::Dis));
        assert_eq!(pp.tree.nodes[1].predicate, pred(&ars, &["b", "d"], &["c"]));
        assert!(pp.tree.nodes[2].predicate.is_bottom());
        assert_eq!(
            validate_pre_proof(&ars, &pp).classification,
            Classification::Disproof
        );
    }

    #[test]
    fn empty_source_is_a_single_axiom() {
        let ars = a1();
        let pp = prove(&ars, &pred(&ars, &[], &["a"]), &ProverConfig::default()).unwrap();
        assert_eq!(pp.tree.len(), 1);
        assert_eq!(pp.tree.nodes[0].rule, Some(RuleName::Axiom));
        assert!(pp.is_proof());
    }

    #[test]
    fn budget_and_input_errors() {
        let ars = a1();
        let p = pred(&ars, &["a"], &["c", "d"]);
        let tight = ProverConfig {
            node_budget: 3,
            ..ProverConfig::default()
        };
        assert_eq!(prove(&ars, &p, &tight), Err(ProverError::BudgetExceeded(3)));
        let zero = ProverConfig {
            node_budget: 0,
            ..ProverConfig::default()
        };
        assert_eq!(prove(&ars, &p, &zero), Err(ProverError::ZeroBudget));
        assert!(prove(&ars, &AprPredicate::bottom(), &ProverConfig::default()).is_err());
    }

    #[test]
    fn partial_verdicts() {
        let ars = a1();
        let cfg = ProverConfig::default();
        let v = check_partial(&ars, &pred(&ars, &["a"], &["c", "d"]), &cfg).unwrap();
        assert_eq!(v.kind, VerdictKind::PartiallyValid);
        assert!(v.witness.is_none());
        let v = check_partial(&ars, &pred(&ars, &["a"], &["c"]), &cfg).unwrap();
        assert_eq!(v.kind, VerdictKind::NotPartiallyValid);
        assert_eq!(
            v.witness,
            Some(Witness::FinitePath(ExecutionPath {
                steps: ids(&ars, &["a", "d"]),
                is_maximal: true
            }))
        );
    }

    #[test]
    fn total_verdicts() {
        let ars = a1();
        let cfg = ProverConfig::default();
        let v = check_total(&ars, &pred(&ars, &["a"], &["c", "d"]), &cfg).unwrap();
        assert_eq!(v.kind, VerdictKind::NotTotallyValid);
        assert_eq!(
            v.witness,
            Some(Witness::Lasso {
                stem: vec![],
                cycle: ids(&ars, &["a", "b"])
            })
        );
        for s in ["a", "b", "c", "d"] {
            let v = check_total(&ars, &pred(&ars, &[s, "c"], &[s, "c"]), &cfg).unwrap();
            assert_eq!(v.kind, VerdictKind::TotallyValid);
        }
    }

    #[test]
    fn counterexample_examples() {
        let ars = a1();
        let cfg = ProverConfig::with_strategy(SplitStrategy::Monolithic);
        let fig5 = prove(&ars, &pred(&ars, &["a"], &["c"]), &cfg).unwrap();
        assert_eq!(
            extract_finite_counterexample(&ars, &fig5).unwrap().steps,
            ids(&ars, &["a", "d"])
        );
        let pp = prove(&ars, &pred(&ars, &["d"], &["c"]), &cfg).unwrap();
        assert_eq!(
            extract_finite_counterexample(&ars, &pp).unwrap().steps,
            ids(&ars, &["d"])
        );
        for strategy in [SplitStrategy::Eager, SplitStrategy::Monolithic] {
            let cfg = ProverConfig::with_strategy(strategy);
            let pp = prove(&ars, &pred(&ars, &["b"], &["a"]), &cfg).unwrap();
            assert_eq!(
                extract_finite_counterexample(&ars, &pp).unwrap().steps,
                ids(&ars, &["b", "c"])
            );
        }
        let proof = prove(&ars, &pred(&ars, &["a"], &["c", "d"]), &cfg).unwrap();
        assert_eq!(
            extract_finite_counterexample(&ars, &proof),
            Err(ProverError::NotADisproof)
        );
    }

    #[test]
    fn lasso_examples() {
        let ars = a1();
        assert_eq!(
            extract_lasso(&ars, &pred(&ars, &["a"], &["c", "d"])).unwrap(),
            Witness::Lasso {
                stem: vec![],
                cycle: ids(&ars, &["a", "b"])
            }
        );
        assert_eq!(
            extract_lasso(&ars, &pred(&ars, &["b"], &["c", "d"])).unwrap(),
            Witness::Lasso {
                stem: vec![],
                cycle: ids(&ars, &["b", "a"])
            }
        );
        let looped = Ars::from_labeled_edges(&["x"], &[("x", "x")]).unwrap();
        assert_eq!(
            extract_lasso(&looped, &pred(&looped, &["x"], &[])).unwrap(),
            Witness::Lasso {
                stem: vec![],
                cycle: ids(&looped, &["x"])
            }
        );
        assert_eq!(
            extract_lasso(&ars, &pred(&ars, &["c"], &[])),
            Err(ProverError::NoCycle)
        );
    }

    #[test]
    fn lasso_with_stem() {
        // s -> u -> v -> u, target empty
        let ars = Ars::from_labeled_edges(&["s", "u", "v"], &[("s", "u"), ("u", "v"), ("v", "u")])
            .unwrap();
        let w = extract_lasso(&ars, &pred(&ars, &["s"], &[])).unwrap();
        assert_eq!(
            w,
            Witness::Lasso {
                stem: ids(&ars, &["s"]),
                cycle: ids(&ars, &["u", "v"])
            }
        );
        assert!(w
            .check(&ars, &ars.set_of(&["s"]).unwrap(), &StateSet::empty())
            .is_ok());
    }
}
