//! Graphviz rendering of proof graphs and a plain-text pre-proof trace.

use std::fmt::Write as _;

use apr_core::proof::{PreProof, ProofGraph};
use apr_core::Ars;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// One node per vertex (`v0`, `v1`, ... in preorder) and one labeled edge
/// per graph edge. The output depends only on the graph.
pub fn to_dot(ars: &Ars, graph: &ProofGraph) -> String {
    let mut out = String::from("digraph proof {\n");
    for (i, v) in graph.vertices.iter().enumerate() {
        let label = quote(&v.predicate.render(ars));
        if v.predicate.is_bottom() {
            let _ = writeln!(out, "  v{i} [label={label}, shape=doublecircle];");
        } else {
            let _ = writeln!(out, "  v{i} [label={label}];");
        }
    }
    for e in &graph.edges {
        let _ = writeln!(out, "  v{} -> v{} [label=\"{}\"];", e.from, e.to, e.rule);
    }
    out.push_str("}\n");
    out
}

/// Indented rule trace of a pre-proof, one node per line:
///
/// ```text
/// 0: {a} => {c,d}  [Der]
///   1: {b,d} => {c,d}  [Subs]
///     2: {b} => {c,d}  [Der]
///       3: {a} => {c,d}  [bud of 0]
/// ```
pub fn proof_trace(ars: &Ars, pp: &PreProof) -> String {
    let mut out = String::new();
    let mut stack = vec![(pp.tree.root, 0usize)];
    while let Some((v, depth)) = stack.pop() {
        let node = pp.tree.node(v);
        let note = match (node.rule, pp.companions.get(&v)) {
            (Some(rule), _) => format!("  [{rule}]"),
            (None, Some(c)) => format!("  [bud of {c}]"),
            (None, None) if node.predicate.is_bottom() => String::new(),
            (None, None) => "  [open]".into(),
        };
        let _ = writeln!(
            out,
            "{:indent$}{v}: {}{note}",
            "",
            node.predicate.render(ars),
            indent = 2 * depth
        );
        for &c in pp.tree.children(v).iter().rev() {
            stack.push((c, depth + 1));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use apr_core::proof::proof_graph;
    use apr_core::{prove, AprPredicate, ProverConfig};

    fn a1() -> Ars {
        crate::ars_format::parse_ars(include_str!("../fixtures/a1.ars")).unwrap()
    }

    fn pred(ars: &Ars, p: &[&str], q: &[&str]) -> AprPredicate {
        AprPredicate::new(ars.set_of(p).unwrap(), ars.set_of(q).unwrap())
    }

    #[test]
    fn a1_proof_graph() {
        let ars = a1();
        let pp = prove(
            &ars,
            &pred(&ars, &["a"], &["c", "d"]),
            &ProverConfig::default(),
        )
        .unwrap();
        let dot = to_dot(&ars, &proof_graph(&pp).unwrap());
        let expected = "digraph proof {
  v0 [label=\"{a} => {c,d}\"];
  v1 [label=\"{b,d} => {c,d}\"];
  v2 [label=\"{b} => {c,d}\"];
  v3 [label=\"{c} => {c,d}\"];
  v4 [label=\"{} => {c,d}\"];
  v0 -> v1 [label=\"Der\"];
  v1 -> v2 [label=\"Subs\"];
  v2 -> v0 [label=\"Der\"];
  v2 -> v3 [label=\"Der\"];
  v3 -> v4 [label=\"Subs\"];
}
";
        assert_eq!(dot, expected);
        let trace = proof_trace(&ars, &pp);
        assert_eq!(
            trace,
            "0: {a} => {c,d}  [Der]
  1: {b,d} => {c,d}  [Subs]
    2: {b} => {c,d}  [Der]
      3: {a} => {c,d}  [bud of 0]
      4: {c} => {c,d}  [Subs]
        5: {} => {c,d}  [Axiom]
"
        );
    }

    #[test]
    fn bottom_and_axiom_only() {
        let ars = a1();
        let cfg = ProverConfig::with_strategy(apr_core::SplitStrategy::Monolithic);
        let pp = prove(&ars, &pred(&ars, &["a"], &["c"]), &cfg).unwrap();
        let dot = to_dot(&ars, &proof_graph(&pp).unwrap());
        assert!(dot.contains("v2 [label=\"BOT\", shape=doublecircle];"));
        assert!(dot.contains("v1 -> v2 [label=\"Dis\"];"));

        let pp = prove(&ars, &pred(&ars, &[], &["c"]), &cfg).unwrap();
        let dot = to_dot(&ars, &proof_graph(&pp).unwrap());
        assert_eq!(dot, "digraph proof {\n  v0 [label=\"{} => {c}\"];\n}\n");
    }

    #[test]
    fn labels_are_escaped() {
        assert_eq!(quote("a\"b\\"), "\"a\\\"b\\\\\"");
    }
}
