//! Command-line front end. Exit status: 0 when the property holds, 1 when it
//! fails (a witness is printed), 2 on usage or input errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use apr_core::model::{eval_state_predicate, expand, Expansion, DEFAULT_MAX_STATES};
use apr_core::oracle::{oracle_partial, oracle_total, OracleAnswer};
use apr_core::proof::proof_graph;
use apr_core::prover::DEFAULT_NODE_BUDGET;
use apr_core::reductions::build_safety_query;
use apr_core::{
    check_partial, check_total, prove, AprPredicate, Ars, ProverConfig, SplitStrategy, StateSet,
    Verdict, VerdictKind,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::ars_format::{parse_ars, split_labels, write_ars};
use crate::dot::{proof_trace, to_dot};
use crate::dsl::{parse_model, parse_state_predicate};
use crate::report::{Engine, Query, RunReport, Stats};

#[derive(Debug, Parser)]
#[command(
    name = "apr",
    version,
    about = "All-path reachability checker for finite reduction systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide partial or total validity of SOURCE => TARGET.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, visible_alias = "from")]
        source: String,
        #[arg(long, visible_alias = "goal")]
        target: String,
        #[arg(long, value_enum, default_value_t = Mode::Partial)]
        mode: Mode,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check that no error state is reachable from SOURCE.
    Safety {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, visible_alias = "source")]
        from: String,
        #[arg(long)]
        error: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check that every execution from SOURCE eventually reaches GOAL.
    Liveness {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, visible_alias = "source")]
        from: String,
        #[arg(long, visible_alias = "target")]
        goal: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Write the explicit state space of a model in ARS format.
    Expand {
        #[command(flatten)]
        input: InputArgs,
        /// Output file; standard output when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Prove SOURCE => TARGET and write its proof graph as DOT.
    Export {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, visible_alias = "from")]
        source: String,
        #[arg(long, visible_alias = "goal")]
        target: String,
        #[arg(long, value_enum, default_value_t = Strategy::Eager)]
        strategy: Strategy,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        max_nodes: usize,
        /// DOT output file; standard output when absent.
        #[arg(long, short, visible_alias = "emit-proof")]
        output: Option<PathBuf>,
        /// Also write the indented pre-proof trace to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[command(flatten)]
    pub source: InputSource,
    /// Cap on expanded model states.
    #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
    pub max_states: usize,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputSource {
    /// ARS file.
    #[arg(long)]
    pub ars: Option<PathBuf>,
    /// Model file.
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Built-in model.
    #[arg(long, value_enum)]
    pub builtin: Option<Builtin>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, value_enum, default_value_t = EngineArg::Prover)]
    pub engine: EngineArg,
    #[arg(long, value_enum, default_value_t = Strategy::Eager)]
    pub strategy: Strategy,
    /// Write the proof graph as DOT to this file.
    #[arg(long)]
    pub emit_proof: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
    /// Node budget for proof search.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub max_nodes: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Partial,
    Total,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Prover,
    Oracle,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Eager,
    Monolithic,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    Peterson,
}

impl From<Strategy> for SplitStrategy {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::Eager => SplitStrategy::Eager,
            Strategy::Monolithic => SplitStrategy::Monolithic,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Syntax { path: String, message: String },
    #[error("in '{expr}': {message}")]
    Expression { expr: String, message: String },
    #[error(transparent)]
    Model(#[from] apr_core::ModelError),
    #[error(transparent)]
    Ars(#[from] apr_core::ArsError),
    #[error(transparent)]
    Prover(#[from] apr_core::ProverError),
    #[error(transparent)]
    Reduction(#[from] apr_core::ReductionError),
    #[error("{0}")]
    Usage(String),
}

enum Loaded {
    Ars(Ars),
    Model(Expansion),
}

impl Loaded {
    fn ars(&self) -> &Ars {
        match self {
            Loaded::Ars(a) => a,
            Loaded::Model(e) => &e.ars,
        }
    }

    /// Label list for ARS inputs; `init` or a state predicate for models.
    fn resolve(&self, text: &str) -> Result<StateSet, CliError> {
        match self {
            Loaded::Ars(ars) => Ok(ars.set_of(&split_labels(text))?),
            Loaded::Model(exp) if text.trim() == "init" => Ok(exp.initial.clone()),
            Loaded::Model(exp) => {
                let expr = parse_state_predicate(text).map_err(|e| CliError::Expression {
                    expr: text.into(),
                    message: e.to_string(),
                })?;
                eval_state_predicate(exp, &expr).map_err(|e| CliError::Expression {
                    expr: text.into(),
                    message: e.to_string(),
                })
            }
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(input: &InputArgs) -> Result<Loaded, CliError> {
    let src = &input.source;
    if let Some(path) = &src.ars {
        let ars = parse_ars(&read(path)?).map_err(|e| CliError::Syntax {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        return Ok(Loaded::Ars(ars));
    }
    let model = match (&src.model, src.builtin) {
        (Some(path), _) => parse_model(&read(path)?).map_err(|e| CliError::Syntax {
            path: path.display().to_string(),
            message: e.to_string(),
        })?,
        (None, Some(Builtin::Peterson)) => apr_core::model::builtin_peterson(),
        (None, None) => {
            return Err(CliError::Usage(
                "one of --ars, --model, --builtin is required".into(),
            ))
        }
    };
    Ok(Loaded::Model(expand(&model, input.max_states)?))
}

/// What a run decided, independent of engine.
struct Outcome {
    kind: VerdictKind,
    witness: Option<String>,
    stats: Option<Stats>,
}

fn run_query(
    ars: &Ars,
    pred: &AprPredicate,
    mode: Mode,
    run: &RunArgs,
) -> Result<Outcome, CliError> {
    let (yes, no) = match mode {
        Mode::Partial => (VerdictKind::PartiallyValid, VerdictKind::NotPartiallyValid),
        Mode::Total => (VerdictKind::TotallyValid, VerdictKind::NotTotallyValid),
    };
    match run.engine {
        EngineArg::Oracle => {
            if run.emit_proof.is_some() {
                return Err(CliError::Usage(
                    "the oracle engine produces no proof to emit".into(),
                ));
            }
            let OracleAnswer { valid, witness } = match mode {
                Mode::Partial => oracle_partial(ars, pred)?,
                Mode::Total => oracle_total(ars, pred)?,
            };
            Ok(Outcome {
                kind: if valid { yes } else { no },
                witness: witness.map(|w| w.render(ars)),
                stats: None,
            })
        }
        EngineArg::Prover => {
            let cfg = ProverConfig {
                strategy: run.strategy.into(),
                node_budget: run.max_nodes,
            };
            let Verdict {
                kind,
                pre_proof,
                witness,
                stats,
            } = match mode {
                Mode::Partial => check_partial(ars, pred, &cfg)?,
                Mode::Total => check_total(ars, pred, &cfg)?,
            };
            let graph = proof_graph(&pre_proof).map_err(apr_core::ProverError::from)?;
            if let Some(path) = &run.emit_proof {
                write(path, &to_dot(ars, &graph))?;
            }
            Ok(Outcome {
                kind,
                witness: witness.map(|w| w.render(ars)),
                stats: Some(Stats::new(&stats, &graph)),
            })
        }
    }
}

fn engine(run: &RunArgs) -> Engine {
    match run.engine {
        EngineArg::Prover => Engine::Prover,
        EngineArg::Oracle => Engine::Oracle,
    }
}

/// Runs a parsed command, printing to `out`. Returns the exit status.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let started = Instant::now();
    match &cli.command {
        Command::Check {
            input,
            source,
            target,
            mode,
            run,
        } => {
            let loaded = load(input)?;
            let ars = loaded.ars();
            let pred = AprPredicate::new(loaded.resolve(source)?, loaded.resolve(target)?);
            let outcome = run_query(ars, &pred, *mode, run)?;
            let query = Query {
                source: source.clone(),
                target: Some(target.clone()),
                error: None,
                source_set: ars.render_set(pred.source()),
                target_set: ars.render_set(pred.target()),
            };
            let headline = outcome.kind.as_str().to_owned();
            finish(out, "check", run, query, outcome, headline, started)
        }
        Command::Safety {
            input,
            from,
            error,
            run,
        } => {
            let loaded = load(input)?;
            let ars = loaded.ars();
            let source = loaded.resolve(from)?;
            let errors = loaded.resolve(error)?;
            let q = build_safety_query(ars, &source, &errors)?;
            let outcome = run_query(&q.ars, &q.predicate, Mode::Partial, run)?;
            let query = Query {
                source: from.clone(),
                target: None,
                error: Some(error.clone()),
                source_set: q.ars.render_set(q.predicate.source()),
                target_set: q.ars.render_set(q.predicate.target()),
            };
            let headline = if outcome.kind.holds() {
                "safe (no error state reachable)"
            } else {
                "unsafe (error state reachable)"
            };
            finish(out, "safety", run, query, outcome, headline.into(), started)
        }
        Command::Liveness {
            input,
            from,
            goal,
            run,
        } => {
            let loaded = load(input)?;
            let ars = loaded.ars();
            let pred = AprPredicate::new(loaded.resolve(from)?, loaded.resolve(goal)?);
            let outcome = run_query(ars, &pred, Mode::Total, run)?;
            let query = Query {
                source: from.clone(),
                target: Some(goal.clone()),
                error: None,
                source_set: ars.render_set(pred.source()),
                target_set: ars.render_set(pred.target()),
            };
            let headline = if outcome.kind.holds() {
                "live (totally valid)"
            } else {
                "not live (not totally valid)"
            };
            finish(
                out,
                "liveness",
                run,
                query,
                outcome,
                headline.into(),
                started,
            )
        }
        Command::Expand { input, output } => {
            let loaded = load(input)?;
            let mut text = String::new();
            if let Loaded::Model(exp) = &loaded {
                text.push_str(&format!(
                    "# initial: {}\n",
                    exp.ars.render_set(&exp.initial)
                ));
            }
            text.push_str(&write_ars(loaded.ars()));
            match output {
                Some(path) => write(path, &text)?,
                None => out.write_all(text.as_bytes()).map_err(stdout_error)?,
            }
            Ok(0)
        }
        Command::Export {
            input,
            source,
            target,
            strategy,
            max_nodes,
            output,
            trace,
        } => {
            let loaded = load(input)?;
            let ars = loaded.ars();
            let pred = AprPredicate::new(loaded.resolve(source)?, loaded.resolve(target)?);
            let cfg = ProverConfig {
                strategy: (*strategy).into(),
                node_budget: *max_nodes,
            };
            let pp = prove(ars, &pred, &cfg)?;
            let graph = proof_graph(&pp).map_err(apr_core::ProverError::from)?;
            let dot = to_dot(ars, &graph);
            match output {
                Some(path) => write(path, &dot)?,
                None => out.write_all(dot.as_bytes()).map_err(stdout_error)?,
            }
            if let Some(path) = trace {
                write(path, &proof_trace(ars, &pp))?;
            }
            Ok(0)
        }
    }
}

fn stdout_error(source: std::io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source,
    }
}

fn finish(
    out: &mut dyn Write,
    command: &str,
    run: &RunArgs,
    query: Query,
    outcome: Outcome,
    headline: String,
    started: Instant,
) -> Result<i32, CliError> {
    let holds = outcome.kind.holds();
    let report = RunReport {
        command: command.into(),
        engine: engine(run),
        query,
        verdict: outcome.kind.as_str().into(),
        holds,
        witness: outcome.witness,
        stats: outcome.stats,
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
    };
    let text = if run.json {
        report.to_json() + "\n"
    } else {
        render_text(&report, &headline)
    };
    out.write_all(text.as_bytes()).map_err(stdout_error)?;
    Ok(if holds { 0 } else { 1 })
}

fn render_text(r: &RunReport, headline: &str) -> String {
    let mut s = format!("{headline}\n");
    let q = &r.query;
    if q.source_set.len() + q.target_set.len() <= 120 {
        s.push_str(&format!(
            "query: {{{}}} => {{{}}}\n",
            q.source_set, q.target_set
        ));
    } else {
        match (&q.target, &q.error) {
            (Some(t), _) => s.push_str(&format!("query: {} => {}\n", q.source, t)),
            (None, Some(e)) => s.push_str(&format!("query: {} never reaches {}\n", q.source, e)),
            (None, None) => {}
        }
    }
    if let Some(w) = &r.witness {
        s.push_str(&format!("witness: {w}\n"));
    }
    if let Some(st) = &r.stats {
        s.push_str(&format!(
            "proof: {} nodes, {} buds, graph {} vertices / {} edges, {}\n",
            st.nodes,
            st.buds,
            st.graph_vertices,
            st.graph_edges,
            if st.acyclic { "acyclic" } else { "cyclic" }
        ));
    }
    s
}
