//! Inference rules, derivation trees, pre-proofs and proof graphs.
//!
//! Four rules apply to an all-path reachability predicate `P => Q`:
//!
//! * `Axiom` closes `P = {}`;
//! * `Subs` discharges the part of `P` already inside `Q`, leaving children
//!   that cover `P \ Q`;
//! * `Der` takes one reduction step, with children covering the derivative
//!   of a runnable `P` disjoint from `Q`;
//! * `Dis` refutes a predicate whose source holds an irreducible non-target
//!   state; its only child is the bottom predicate.
//!
//! Exactly one of them applies to any non-bottom predicate. A pre-proof is a
//! finite derivation tree in which some open leaves (buds) point back at an
//! earlier `Der` node with an identical predicate (their companion).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::ars::{Ars, StateSet};
use crate::error::ProofError;

/// A source/target pair, or the distinguished bottom predicate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AprPredicate {
    source: StateSet,
    target: StateSet,
    bottom: bool,
}

impl AprPredicate {
    pub fn new(source: StateSet, target: StateSet) -> Self {
        AprPredicate {
            source,
            target,
            bottom: false,
        }
    }

    pub fn bottom() -> Self {
        AprPredicate {
            source: StateSet::empty(),
            target: StateSet::empty(),
            bottom: true,
        }
    }

    pub fn is_bottom(&self) -> bool {
        self.bottom
    }

    pub fn source(&self) -> &StateSet {
        &self.source
    }

    pub fn target(&self) -> &StateSet {
        &self.target
    }

    fn check(&self, ars: &Ars) -> Result<(), ProofError> {
        ars.check_set(&self.source)?;
        ars.check_set(&self.target)?;
        Ok(())
    }

    pub fn render(&self, ars: &Ars) -> String {
        if self.bottom {
            String::from("BOT")
        } else {
            format!(
                "{{{}}} => {{{}}}",
                ars.render_set(&self.source),
                ars.render_set(&self.target)
            )
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleName {
    Axiom,
    Subs,
    Der,
    Dis,
}

impl RuleName {
    pub const ALL: [RuleName; 4] = [
        RuleName::Axiom,
        RuleName::Subs,
        RuleName::Der,
        RuleName::Dis,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleName::Axiom => "Axiom",
            RuleName::Subs => "Subs",
            RuleName::Der => "Der",
            RuleName::Dis => "Dis",
        }
    }
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How `Subs` and `Der` split their result sets into premises.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum SplitStrategy {
    /// `Der` carves out every already-known `Der` source contained in the
    /// derivative, so that those parts close as buds right away; the rest
    /// stays one premise. `Subs` emits `P \ Q` as a single premise.
    #[default]
    Eager,
    /// Neither rule splits: one premise each.
    Monolithic,
}

/// Side condition of each rule in [`RuleName::ALL`] order, each tested on its own.
pub fn rule_side_conditions(ars: &Ars, pred: &AprPredicate) -> [bool; 4] {
    let p = pred.source();
    let q = pred.target();
    let meets_target = !p.is_disjoint(q);
    let holds_nf = !p.is_disjoint(ars.normal_forms());
    [
        p.is_empty(),
        meets_target,
        !meets_target && !p.is_empty() && !holds_nf,
        !meets_target && !p.is_empty() && holds_nf,
    ]
}

/// The unique rule whose side condition holds for `pred`.
pub fn applicable_rule(ars: &Ars, pred: &AprPredicate) -> Result<RuleName, ProofError> {
    if pred.is_bottom() {
        return Err(ProofError::Bottom);
    }
    pred.check(ars)?;
    let p = pred.source();
    Ok(if p.is_empty() {
        RuleName::Axiom
    } else if !p.is_disjoint(pred.target()) {
        RuleName::Subs
    } else if p.is_disjoint(ars.normal_forms()) {
        RuleName::Der
    } else {
        RuleName::Dis
    })
}

/// Applies the unique rule to `pred` and returns its premises.
///
/// `known` lists sources of existing `Der` nodes that share `pred`'s target,
/// in creation order; only [`SplitStrategy::Eager`] consults it.
pub fn premises(
    ars: &Ars,
    pred: &AprPredicate,
    strategy: SplitStrategy,
    known: &[StateSet],
) -> Result<(RuleName, Vec<AprPredicate>), ProofError> {
    let rule = applicable_rule(ars, pred)?;
    let q = pred.target();
    let child = |s: StateSet| AprPredicate::new(s, q.clone());
    let children = match rule {
        RuleName::Axiom => Vec::new(),
        RuleName::Subs => vec![child(pred.source().difference(q))],
        RuleName::Dis => vec![AprPredicate::bottom()],
        RuleName::Der => {
            let derivative = ars.derivative(pred.source())?;
            match strategy {
                SplitStrategy::Monolithic => vec![child(derivative)],
                SplitStrategy::Eager => {
                    let mut rest = derivative;
                    let mut parts = Vec::new();
                    for s in known {
                        if !s.is_empty() && s.is_subset(&rest) {
                            rest = rest.difference(s);
                            parts.push(child(s.clone()));
                        }
                    }
                    if !rest.is_empty() {
                        parts.push(child(rest));
                    }
                    parts
                }
            }
        }
    };
    Ok((rule, children))
}

pub type NodeId = usize;

/// One node of a derivation tree.
///
/// `children == None` means no premises are attached (an open leaf unless
/// the predicate is bottom); `Some(vec![])` is a zero-premise rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub predicate: AprPredicate,
    pub rule: Option<RuleName>,
    pub children: Option<Vec<NodeId>>,
}

impl Node {
    pub fn open(predicate: AprPredicate) -> Self {
        Node {
            predicate,
            rule: None,
            children: None,
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.as_ref().is_none_or(|c| c.is_empty())
    }

    pub fn is_closed_leaf(&self) -> bool {
        self.predicate.is_bottom() || matches!(&self.children, Some(c) if c.is_empty())
    }

    pub fn is_open_leaf(&self) -> bool {
        self.is_leaf() && !self.is_closed_leaf()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTree {
    pub nodes: Vec<Node>,
    pub root: NodeId,
}

impl DerivationTree {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        self.nodes[id].children.as_deref().unwrap_or(&[])
    }

    /// Parent of each node; `None` for the root and for unattached nodes.
    pub fn parents(&self) -> Vec<Option<NodeId>> {
        let mut parents = vec![None; self.nodes.len()];
        for (v, node) in self.nodes.iter().enumerate() {
            for &c in node.children.as_deref().unwrap_or(&[]) {
                if c < parents.len() && parents[c].is_none() {
                    parents[c] = Some(v);
                }
            }
        }
        parents
    }

    /// Preorder from the root. Assumes the child map is a tree.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children(v).iter().rev().copied());
        }
        out
    }

    pub fn open_leaves(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).filter(|&v| self.nodes[v].is_open_leaf())
    }

    pub fn count_rule(&self, rule: RuleName) -> usize {
        self.nodes.iter().filter(|n| n.rule == Some(rule)).count()
    }
}

/// A derivation tree together with its bud-to-companion map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreProof {
    pub tree: DerivationTree,
    pub companions: BTreeMap<NodeId, NodeId>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Proof,
    Disproof,
    Open,
}

impl PreProof {
    pub fn root_predicate(&self) -> &AprPredicate {
        &self.tree.nodes[self.tree.root].predicate
    }

    pub fn is_bud(&self, v: NodeId) -> bool {
        self.companions.contains_key(&v)
    }

    pub fn buds(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.companions.keys().copied()
    }

    /// Every leaf is closed or a bud.
    pub fn is_closed(&self) -> bool {
        self.tree.open_leaves().all(|v| self.is_bud(v))
    }

    pub fn has_dis(&self) -> bool {
        self.tree
            .nodes
            .iter()
            .any(|n| n.rule == Some(RuleName::Dis))
    }

    pub fn classification(&self) -> Classification {
        if self.has_dis() {
            Classification::Disproof
        } else if self.is_closed() {
            Classification::Proof
        } else {
            Classification::Open
        }
    }

    pub fn is_proof(&self) -> bool {
        self.classification() == Classification::Proof
    }

    pub fn is_disproof(&self) -> bool {
        self.classification() == Classification::Disproof
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    RootOutOfRange,
    ChildOutOfRange(NodeId),
    NotATree,
    Unreachable,
    UnknownObject,
    RuleNotApplicable {
        rule: RuleName,
        applicable: Option<RuleName>,
    },
    BadInstance(&'static str),
    PremisesWithoutRule,
    RuleWithoutPremises,
    BottomNotLeaf,
    BudNotOpenLeaf,
    CompanionOutOfRange,
    CompanionIsOpen,
    BudPredicateMismatch,
    CompanionNotDer,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::RootOutOfRange => f.write_str("root index out of range"),
            ViolationKind::ChildOutOfRange(c) => write!(f, "child index {c} out of range"),
            ViolationKind::NotATree => {
                f.write_str("node has more than one parent or lies on a cycle")
            }
            ViolationKind::Unreachable => f.write_str("node is not reachable from the root"),
            ViolationKind::UnknownObject => f.write_str("predicate mentions an unknown object"),
            ViolationKind::RuleNotApplicable { rule, applicable } => match applicable {
                Some(a) => write!(f, "rule {rule} is not applicable ({a} is)"),
                None => write!(f, "rule {rule} is not applicable"),
            },
            ViolationKind::BadInstance(why) => write!(f, "bad rule instance: {why}"),
            ViolationKind::PremisesWithoutRule => f.write_str("premises attached without a rule"),
            ViolationKind::RuleWithoutPremises => f.write_str("rule recorded without premises"),
            ViolationKind::BottomNotLeaf => f.write_str("bottom must be a leaf without a rule"),
            ViolationKind::BudNotOpenLeaf => f.write_str("bud must be an open leaf"),
            ViolationKind::CompanionOutOfRange => f.write_str("companion index out of range"),
            ViolationKind::CompanionIsOpen => f.write_str("companion must not be an open leaf"),
            ViolationKind::BudPredicateMismatch => {
                f.write_str("bud and companion predicates differ")
            }
            ViolationKind::CompanionNotDer => f.write_str("companion rule must be Der"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub node: Option<NodeId>,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node {
            Some(v) => write!(f, "node {v}: {}", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub classification: Classification,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks a rule instance against its side conditions.
///
/// Overlapping premises are accepted; empty premises are only allowed as the
/// single `Subs` premise of an empty difference.
pub(crate) fn check_instance(
    ars: &Ars,
    rule: RuleName,
    conclusion: &AprPredicate,
    premises: &[&AprPredicate],
) -> Result<(), ViolationKind> {
    let applicable = applicable_rule(ars, conclusion).map_err(|_| ViolationKind::UnknownObject)?;
    if applicable != rule {
        return Err(ViolationKind::RuleNotApplicable {
            rule,
            applicable: Some(applicable),
        });
    }
    let p = conclusion.source();
    let q = conclusion.target();
    if rule == RuleName::Dis {
        return match premises {
            [only] if only.is_bottom() => Ok(()),
            _ => Err(ViolationKind::BadInstance(
                "Dis has exactly one premise, bottom",
            )),
        };
    }
    if premises.iter().any(|c| c.is_bottom()) {
        return Err(ViolationKind::BadInstance("bottom premise outside Dis"));
    }
    if premises.iter().any(|c| c.target() != q) {
        return Err(ViolationKind::BadInstance(
            "premise target differs from conclusion target",
        ));
    }
    let union = premises
        .iter()
        .fold(StateSet::empty(), |acc, c| acc.union(c.source()));
    match rule {
        RuleName::Axiom if !premises.is_empty() => {
            Err(ViolationKind::BadInstance("Axiom has no premises"))
        }
        RuleName::Axiom => Ok(()),
        RuleName::Subs => {
            if premises.is_empty() {
                Err(ViolationKind::BadInstance(
                    "Subs needs at least one premise",
                ))
            } else if union != p.difference(q) {
                Err(ViolationKind::BadInstance(
                    "Subs premises must cover exactly P \\ Q",
                ))
            } else if premises.len() > 1
                && premises
                    .iter()
                    .any(|c| c.source().is_empty() || !c.source().is_subset(p))
            {
                Err(ViolationKind::BadInstance(
                    "split Subs premises must be nonempty subsets of P",
                ))
            } else {
                Ok(())
            }
        }
        RuleName::Der => {
            let derivative = ars
                .derivative(p)
                .map_err(|_| ViolationKind::UnknownObject)?;
            if premises.is_empty() {
                Err(ViolationKind::BadInstance("Der needs at least one premise"))
            } else if premises.iter().any(|c| c.source().is_empty()) {
                Err(ViolationKind::BadInstance("Der premises must be nonempty"))
            } else if union != derivative {
                Err(ViolationKind::BadInstance(
                    "Der premises must cover exactly the derivative",
                ))
            } else {
                Ok(())
            }
        }
        RuleName::Dis => unreachable!(),
    }
}

/// Checks every structural, rule and bud condition of a pre-proof and
/// classifies it. Never fails; problems are collected as violations.
pub fn validate_pre_proof(ars: &Ars, pp: &PreProof) -> ValidationReport {
    let tree = &pp.tree;
    let n = tree.nodes.len();
    let mut violations = Vec::new();
    fn push(violations: &mut Vec<Violation>, node: Option<NodeId>, kind: ViolationKind) {
        violations.push(Violation { node, kind });
    }

    if tree.root >= n {
        push(&mut violations, None, ViolationKind::RootOutOfRange);
        return ValidationReport {
            violations,
            classification: Classification::Open,
        };
    }

    // tree shape: each node has at most one parent, the root none, all reachable
    let mut parent_count = vec![0usize; n];
    for (v, node) in tree.nodes.iter().enumerate() {
        for &c in node.children.as_deref().unwrap_or(&[]) {
            if c >= n {
                push(&mut violations, Some(v), ViolationKind::ChildOutOfRange(c));
            } else {
                parent_count[c] += 1;
            }
        }
    }
    let mut shape_ok = violations.is_empty();
    for (v, &count) in parent_count.iter().enumerate() {
        if count > usize::from(v != tree.root) {
            push(&mut violations, Some(v), ViolationKind::NotATree);
            shape_ok = false;
        }
    }
    if shape_ok {
        let mut seen = vec![false; n];
        let mut stack = vec![tree.root];
        while let Some(v) = stack.pop() {
            seen[v] = true;
            stack.extend(tree.children(v).iter().copied());
        }
        for (v, s) in seen.iter().enumerate() {
            if !s {
                push(&mut violations, Some(v), ViolationKind::Unreachable);
            }
        }
    }

    for (v, node) in tree.nodes.iter().enumerate() {
        let pred = &node.predicate;
        if !pred.is_bottom() && pred.check(ars).is_err() {
            push(&mut violations, Some(v), ViolationKind::UnknownObject);
            continue;
        }
        if pred.is_bottom() {
            if node.rule.is_some() || !node.is_leaf() {
                push(&mut violations, Some(v), ViolationKind::BottomNotLeaf);
            }
            continue;
        }
        match (&node.rule, &node.children) {
            (None, Some(_)) => push(&mut violations, Some(v), ViolationKind::PremisesWithoutRule),
            (Some(_), None) => push(&mut violations, Some(v), ViolationKind::RuleWithoutPremises),
            (None, None) => {}
            (Some(rule), Some(children)) => {
                if children.iter().any(|&c| c >= n) {
                    continue;
                }
                let prems: Vec<&AprPredicate> =
                    children.iter().map(|&c| &tree.nodes[c].predicate).collect();
                if let Err(kind) = check_instance(ars, *rule, pred, &prems) {
                    push(&mut violations, Some(v), kind);
                }
            }
        }
    }

    for (&bud, &companion) in &pp.companions {
        if bud >= n || !tree.nodes[bud].is_open_leaf() {
            push(&mut violations, Some(bud), ViolationKind::BudNotOpenLeaf);
            continue;
        }
        if companion >= n {
            push(
                &mut violations,
                Some(bud),
                ViolationKind::CompanionOutOfRange,
            );
            continue;
        }
        let comp = &tree.nodes[companion];
        if comp.is_open_leaf() {
            push(&mut violations, Some(bud), ViolationKind::CompanionIsOpen);
        }
        if comp.predicate != tree.nodes[bud].predicate {
            push(
                &mut violations,
                Some(bud),
                ViolationKind::BudPredicateMismatch,
            );
        }
        if comp.rule != Some(RuleName::Der) {
            push(&mut violations, Some(bud), ViolationKind::CompanionNotDer);
        }
    }

    ValidationReport {
        violations,
        classification: pp.classification(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphVertex {
    pub node: NodeId,
    pub predicate: AprPredicate,
    pub rule: Option<RuleName>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    /// Rule applied at the source vertex.
    pub rule: RuleName,
}

/// The tree with each bud identified with its companion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofGraph {
    /// Non-open tree nodes in preorder.
    pub vertices: Vec<GraphVertex>,
    pub edges: Vec<GraphEdge>,
}

impl ProofGraph {
    pub fn vertex_of(&self, node: NodeId) -> Option<usize> {
        self.vertices.iter().position(|v| v.node == node)
    }

    pub fn successors(&self, vertex: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .filter(move |e| e.from == vertex)
            .map(|e| e.to)
    }

    pub fn is_acyclic(&self) -> bool {
        is_acyclic(self)
    }
}

/// Builds the proof graph of a closed pre-proof.
pub fn proof_graph(pp: &PreProof) -> Result<ProofGraph, ProofError> {
    let tree = &pp.tree;
    let n = tree.nodes.len();
    if tree.root >= n {
        return Err(ProofError::Malformed(String::from(
            "root index out of range",
        )));
    }
    for (v, node) in tree.nodes.iter().enumerate() {
        if node
            .children
            .as_deref()
            .unwrap_or(&[])
            .iter()
            .any(|&c| c >= n)
        {
            return Err(ProofError::Malformed(format!(
                "node {v} has a child out of range"
            )));
        }
    }
    if let Some(v) = tree.open_leaves().find(|v| !pp.is_bud(*v)) {
        return Err(ProofError::NotClosed(v));
    }
    for (&bud, &comp) in &pp.companions {
        if comp >= n || tree.nodes[comp].is_open_leaf() {
            return Err(ProofError::Malformed(format!(
                "bud {bud} has an invalid companion"
            )));
        }
    }

    let order = tree.preorder();
    let mut vertex_index = vec![usize::MAX; n];
    let mut vertices = Vec::new();
    for &v in &order {
        if !tree.nodes[v].is_open_leaf() {
            vertex_index[v] = vertices.len();
            vertices.push(GraphVertex {
                node: v,
                predicate: tree.nodes[v].predicate.clone(),
                rule: tree.nodes[v].rule,
            });
        }
    }

    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    for &v in &order {
        let node = &tree.nodes[v];
        let Some(rule) = node.rule else { continue };
        for &c in tree.children(v) {
            let target = pp.companions.get(&c).copied().unwrap_or(c);
            let (from, to) = (vertex_index[v], vertex_index[target]);
            if seen.insert((from, to)) {
                edges.push(GraphEdge { from, to, rule });
            }
        }
    }
    Ok(ProofGraph { vertices, edges })
}

/// True iff the graph has no directed cycle.
pub fn is_acyclic(g: &ProofGraph) -> bool {
    // Kahn's algorithm: acyclic iff every vertex gets removed
    let n = g.vertices.len();
    let mut indegree = vec![0usize; n];
    let mut adjacency = vec![Vec::new(); n];
    for e in &g.edges {
        indegree[e.to] += 1;
        adjacency[e.from].push(e.to);
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut removed = 0;
    while let Some(v) = ready.pop() {
        removed += 1;
        for &w in &adjacency[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.push(w);
            }
        }
    }
    removed == n
}

/// A failed structural property of a proof graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphViolation {
    /// 1: target preserved, 2: Subs containment, 3: Der coverage,
    /// 4: Dis points at bottom, 5: Axiom sinks.
    pub clause: u8,
    pub vertex: usize,
}

/// Scans a proof graph for the five structural properties every proof graph
/// of a closed pre-proof satisfies.
pub fn check_graph_properties(ars: &Ars, g: &ProofGraph) -> Vec<GraphViolation> {
    let mut out = Vec::new();
    for (i, vertex) in g.vertices.iter().enumerate() {
        let succ: Vec<&GraphVertex> = g.successors(i).map(|j| &g.vertices[j]).collect();
        let mut fail = |clause| out.push(GraphViolation { clause, vertex: i });
        let pred = &vertex.predicate;
        if succ
            .iter()
            .any(|w| !w.predicate.is_bottom() && w.predicate.target() != pred.target())
        {
            fail(1);
        }
        match vertex.rule {
            Some(RuleName::Subs) => {
                let allowed = pred.source().difference(pred.target());
                if succ
                    .iter()
                    .any(|w| !w.predicate.source().is_subset(&allowed))
                {
                    fail(2);
                }
            }
            Some(RuleName::Der) => {
                let forward = pred.source().iter().all(|s| {
                    succ.iter().any(|w| {
                        ars.successors(s)
                            .iter()
                            .any(|&t| w.predicate.source().contains(t))
                    })
                });
                let backward = succ.iter().all(|w| {
                    w.predicate.source().iter().all(|t| {
                        ars.predecessors(t)
                            .iter()
                            .any(|&s| pred.source().contains(s))
                    })
                });
                if !(forward && backward) {
                    fail(3);
                }
            }
            Some(RuleName::Dis) => {
                if succ.is_empty() || succ.iter().any(|w| !w.predicate.is_bottom()) {
                    fail(4);
                }
            }
            Some(RuleName::Axiom) if !pred.source().is_empty() || !succ.is_empty() => fail(5),
            _ => {}
        }
    }
    out
}
