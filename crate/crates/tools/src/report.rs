//! Machine-readable run reports.

use apr_core::proof::ProofGraph;
use apr_core::prover::ProverStats;
use serde::{Deserialize, Serialize};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Prover,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Query {
    /// Source expression as given on the command line.
    pub source: String,
    pub target: Option<String>,
    pub error: Option<String>,
    /// Rendered source and target sets of the predicate actually checked.
    pub source_set: String,
    pub target_set: String,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub nodes: usize,
    pub buds: usize,
    pub axiom: usize,
    pub subs: usize,
    pub der: usize,
    pub dis: usize,
    pub graph_vertices: usize,
    pub graph_edges: usize,
    pub acyclic: bool,
}

impl Stats {
    pub fn new(s: &ProverStats, graph: &ProofGraph) -> Self {
        Stats {
            nodes: s.nodes,
            buds: s.buds,
            axiom: s.axiom,
            subs: s.subs,
            der: s.der,
            dis: s.dis,
            graph_vertices: graph.vertices.len(),
            graph_edges: graph.edges.len(),
            acyclic: graph.is_acyclic(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub engine: Engine,
    pub query: Query,
    /// `PartiallyValid`, `NotPartiallyValid`, `TotallyValid` or `NotTotallyValid`.
    pub verdict: String,
    pub holds: bool,
    /// Rendered counterexample, present exactly when `holds` is false.
    pub witness: Option<String>,
    /// Prover statistics; absent for the oracle engine.
    pub stats: Option<Stats>,
    pub elapsed_ms: f64,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}
