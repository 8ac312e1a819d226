//! Asynchronous guarded-transition systems over finite-domain shared
//! variables, and their eager expansion into an [`Ars`].
//!
//! A state is one location per process plus one value per variable. Each
//! process edge whose source location is current and whose guard holds
//! yields one transition; its assignments happen simultaneously, reading
//! the old state. Processes interleave.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::ars::{Ars, ObjectId, StateSet};
use crate::error::ModelError;

pub const DEFAULT_MAX_STATES: usize = 1_000_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    Bool,
    /// Inclusive range.
    Int {
        lo: i64,
        hi: i64,
    },
}

impl Domain {
    pub fn contains(self, v: i64) -> bool {
        match self {
            Domain::Bool => v == 0 || v == 1,
            Domain::Int { lo, hi } => lo <= v && v <= hi,
        }
    }

    pub fn size(self) -> u128 {
        match self {
            Domain::Bool => 2,
            Domain::Int { lo, hi } => (hi as i128 - lo as i128 + 1).max(0) as u128,
        }
    }

    fn values(self) -> impl Iterator<Item = i64> {
        let (lo, hi) = match self {
            Domain::Bool => (0, 1),
            Domain::Int { lo, hi } => (lo, hi),
        };
        lo..=hi
    }

    fn ty(self) -> Ty {
        match self {
            Domain::Bool => Ty::Bool,
            Domain::Int { .. } => Ty::Int,
        }
    }

    pub fn render(self, v: i64) -> String {
        match self {
            Domain::Bool if v == 0 => "false".to_owned(),
            Domain::Bool => "true".to_owned(),
            Domain::Int { .. } => v.to_string(),
        }
    }
}

/// Booleans are stored as 0 and 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub domain: Domain,
    pub init: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Location {
    pub name: String,
    pub initial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: String,
    pub dst: String,
    pub guard: Option<Expr>,
    pub assignments: Vec<(String, Operand)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Process {
    pub name: String,
    pub locations: Vec<Location>,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Model {
    pub variables: Vec<Variable>,
    pub processes: Vec<Process>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Operand {
    Var(String),
    Int(i64),
    Bool(bool),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    fn apply(self, a: i64, b: i64) -> bool {
        match self {
            CmpOp::Eq => a == b,
            CmpOp::Ne => a != b,
            CmpOp::Lt => a < b,
            CmpOp::Le => a <= b,
            CmpOp::Gt => a > b,
            CmpOp::Ge => a >= b,
        }
    }
}

/// Boolean expression used both for guards and for state predicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(bool),
    /// A boolean variable used as a formula.
    Var(String),
    /// `loc(process) = location`
    At {
        process: String,
        location: String,
    },
    Cmp(CmpOp, Operand, Operand),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Ty {
    Bool,
    Int,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Value {
    Var(usize),
    Const(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Compiled {
    Const(bool),
    At(usize, usize),
    Cmp(CmpOp, Value, Value),
    Not(Box<Compiled>),
    And(Box<Compiled>, Box<Compiled>),
    Or(Box<Compiled>, Box<Compiled>),
}

/// One location index per process and one value per variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModelState {
    pub locations: Vec<usize>,
    pub values: Vec<i64>,
}

impl ModelState {
    fn eval(&self, e: &Compiled) -> bool {
        let val = |v: &Value| match *v {
            Value::Var(i) => self.values[i],
            Value::Const(c) => c,
        };
        match e {
            Compiled::Const(b) => *b,
            Compiled::At(p, l) => self.locations[*p] == *l,
            Compiled::Cmp(op, a, b) => op.apply(val(a), val(b)),
            Compiled::Not(x) => !self.eval(x),
            Compiled::And(a, b) => self.eval(a) && self.eval(b),
            Compiled::Or(a, b) => self.eval(a) || self.eval(b),
        }
    }
}

struct CompiledEdge {
    src: usize,
    dst: usize,
    guard: Compiled,
    assignments: Vec<(usize, Value)>,
}

impl Model {
    fn variable(&self, name: &str) -> Result<usize, ModelError> {
        self.variables
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| ModelError::UnknownVariable(name.to_owned()))
    }

    fn process(&self, name: &str) -> Result<usize, ModelError> {
        self.processes
            .iter()
            .position(|p| p.name == name)
            .ok_or_else(|| ModelError::UnknownProcess(name.to_owned()))
    }

    fn location(&self, process: usize, name: &str) -> Result<usize, ModelError> {
        let p = &self.processes[process];
        p.locations
            .iter()
            .position(|l| l.name == name)
            .ok_or_else(|| ModelError::UnknownLocation {
                process: p.name.clone(),
                location: name.to_owned(),
            })
    }

    fn operand(&self, o: &Operand) -> Result<(Value, Ty), ModelError> {
        Ok(match o {
            Operand::Var(name) => {
                let i = self.variable(name)?;
                (Value::Var(i), self.variables[i].domain.ty())
            }
            Operand::Int(v) => (Value::Const(*v), Ty::Int),
            Operand::Bool(b) => (Value::Const(i64::from(*b)), Ty::Bool),
        })
    }

    fn compile(&self, e: &Expr) -> Result<Compiled, ModelError> {
        Ok(match e {
            Expr::Const(b) => Compiled::Const(*b),
            Expr::Var(name) => {
                let i = self.variable(name)?;
                if self.variables[i].domain != Domain::Bool {
                    return Err(ModelError::Type(format!(
                        "integer variable '{name}' used as a condition"
                    )));
                }
                Compiled::Cmp(CmpOp::Eq, Value::Var(i), Value::Const(1))
            }
            Expr::At { process, location } => {
                let p = self.process(process)?;
                Compiled::At(p, self.location(p, location)?)
            }
            Expr::Cmp(op, a, b) => {
                let (va, ta) = self.operand(a)?;
                let (vb, tb) = self.operand(b)?;
                if ta != tb {
                    return Err(ModelError::Type(format!("cannot compare {a:?} with {b:?}")));
                }
                if ta == Ty::Bool && !matches!(op, CmpOp::Eq | CmpOp::Ne) {
                    return Err(ModelError::Type(
                        "ordering comparison on booleans".to_owned(),
                    ));
                }
                Compiled::Cmp(*op, va, vb)
            }
            Expr::Not(x) => Compiled::Not(Box::new(self.compile(x)?)),
            Expr::And(a, b) => {
                Compiled::And(Box::new(self.compile(a)?), Box::new(self.compile(b)?))
            }
            Expr::Or(a, b) => Compiled::Or(Box::new(self.compile(a)?), Box::new(self.compile(b)?)),
        })
    }

    /// Checks names, references, types and initial values.
    pub fn validate(&self) -> Result<(), ModelError> {
        self.compile_edges().map(|_| ())
    }

    fn compile_edges(&self) -> Result<Vec<Vec<CompiledEdge>>, ModelError> {
        if self.processes.is_empty() {
            return Err(ModelError::NoProcess);
        }
        let mut seen = BTreeSet::new();
        for v in &self.variables {
            if !seen.insert(v.name.as_str()) {
                return Err(dup("variable", &v.name));
            }
            if let Domain::Int { lo, hi } = v.domain {
                if lo > hi {
                    return Err(ModelError::EmptyRange {
                        variable: v.name.clone(),
                        lo,
                        hi,
                    });
                }
            }
            if v.init.is_empty() {
                return Err(ModelError::NoInitialValue(v.name.clone()));
            }
            if let Some(&bad) = v.init.iter().find(|&&x| !v.domain.contains(x)) {
                return Err(ModelError::OutOfDomain {
                    variable: v.name.clone(),
                    value: bad,
                });
            }
        }
        let mut seen = BTreeSet::new();
        for p in &self.processes {
            if !seen.insert(p.name.as_str()) {
                return Err(dup("process", &p.name));
            }
            let mut locs = BTreeSet::new();
            for l in &p.locations {
                if !locs.insert(l.name.as_str()) {
                    return Err(dup("location", &l.name));
                }
            }
            if !p.locations.iter().any(|l| l.initial) {
                return Err(ModelError::NoInitialLocation(p.name.clone()));
            }
        }

        let mut out = Vec::with_capacity(self.processes.len());
        for (pi, p) in self.processes.iter().enumerate() {
            let mut edges = Vec::with_capacity(p.edges.len());
            for e in &p.edges {
                let guard = match &e.guard {
                    Some(g) => self.compile(g)?,
                    None => Compiled::Const(true),
                };
                let mut assignments = Vec::with_capacity(e.assignments.len());
                let mut targets = BTreeSet::new();
                for (name, value) in &e.assignments {
                    let var = self.variable(name)?;
                    if !targets.insert(var) {
                        return Err(ModelError::Type(format!(
                            "'{name}' assigned twice in one edge"
                        )));
                    }
                    let (v, ty) = self.operand(value)?;
                    if ty != self.variables[var].domain.ty() {
                        return Err(ModelError::Type(format!(
                            "assignment of {value:?} to '{name}' has the wrong type"
                        )));
                    }
                    assignments.push((var, v));
                }
                edges.push(CompiledEdge {
                    src: self.location(pi, &e.src)?,
                    dst: self.location(pi, &e.dst)?,
                    guard,
                    assignments,
                });
            }
            out.push(edges);
        }
        Ok(out)
    }

    /// Number of states in the full product of locations and domains.
    pub fn state_space_size(&self) -> u128 {
        let locs = self
            .processes
            .iter()
            .map(|p| p.locations.len() as u128)
            .fold(1u128, u128::saturating_mul);
        self.variables
            .iter()
            .map(|v| v.domain.size())
            .fold(locs, u128::saturating_mul)
    }

    /// Renders a state as `<loc_0,...,loc_k,v_1,...,v_m>`.
    pub fn render_state(&self, s: &ModelState) -> String {
        let mut out = String::from("<");
        let mut parts = self
            .processes
            .iter()
            .zip(&s.locations)
            .map(|(p, &l)| p.locations[l].name.clone())
            .chain(
                self.variables
                    .iter()
                    .zip(&s.values)
                    .map(|(v, &x)| v.domain.render(x)),
            );
        if let Some(first) = parts.next() {
            out.push_str(&first);
        }
        for part in parts {
            out.push(',');
            out.push_str(&part);
        }
        out.push('>');
        out
    }
}

fn dup(kind: &'static str, name: &str) -> ModelError {
    ModelError::Duplicate {
        kind,
        name: name.to_owned(),
    }
}

/// A model together with its explicit state space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub model: Model,
    pub ars: Ars,
    /// Indexed by object id.
    pub states: Vec<ModelState>,
    pub initial: StateSet,
}

impl Expansion {
    pub fn state(&self, id: ObjectId) -> &ModelState {
        &self.states[id.index()]
    }

    pub fn id_of(&self, state: &ModelState) -> Option<ObjectId> {
        self.ars.id_of(&self.model.render_state(state))
    }
}

/// Expands the full product state space. Objects are ordered by label.
pub fn expand(model: &Model, max_states: usize) -> Result<Expansion, ModelError> {
    let edges = model.compile_edges()?;
    let size = model.state_space_size();
    if size > max_states as u128 {
        return Err(ModelError::StateSpaceTooLarge(size, max_states));
    }

    // every state of the product, in mixed-radix order
    let mut states = vec![ModelState {
        locations: Vec::new(),
        values: Vec::new(),
    }];
    for p in &model.processes {
        states = states
            .into_iter()
            .flat_map(|s| {
                (0..p.locations.len()).map(move |l| {
                    let mut t = s.clone();
                    t.locations.push(l);
                    t
                })
            })
            .collect();
    }
    for v in &model.variables {
        states = states
            .into_iter()
            .flat_map(|s| {
                v.domain.values().map(move |x| {
                    let mut t = s.clone();
                    t.values.push(x);
                    t
                })
            })
            .collect();
    }

    let mut labeled: Vec<(String, ModelState)> = states
        .into_iter()
        .map(|s| (model.render_state(&s), s))
        .collect();
    labeled.sort();
    let (labels, states): (Vec<String>, Vec<ModelState>) = labeled.into_iter().unzip();
    let id_of = |s: &ModelState| -> ObjectId {
        let label = model.render_state(s);
        ObjectId(
            labels
                .binary_search(&label)
                .expect("successor lies in the product") as u32,
        )
    };

    let mut transitions = Vec::new();
    for (i, s) in states.iter().enumerate() {
        for (pi, process_edges) in edges.iter().enumerate() {
            for e in process_edges {
                if s.locations[pi] != e.src || !s.eval(&e.guard) {
                    continue;
                }
                let mut t = s.clone();
                t.locations[pi] = e.dst;
                for &(var, value) in &e.assignments {
                    let x = match value {
                        Value::Var(j) => s.values[j],
                        Value::Const(c) => c,
                    };
                    if !model.variables[var].domain.contains(x) {
                        return Err(ModelError::OutOfDomain {
                            variable: model.variables[var].name.clone(),
                            value: x,
                        });
                    }
                    t.values[var] = x;
                }
                transitions.push((ObjectId(i as u32), id_of(&t)));
            }
        }
    }

    let initial = states
        .iter()
        .enumerate()
        .filter(|(_, s)| {
            s.locations
                .iter()
                .zip(&model.processes)
                .all(|(&l, p)| p.locations[l].initial)
                && s.values
                    .iter()
                    .zip(&model.variables)
                    .all(|(x, v)| v.init.contains(x))
        })
        .map(|(i, _)| ObjectId(i as u32))
        .collect();

    let ars = Ars::new(labels, transitions).map_err(|e| ModelError::Type(e.to_string()))?;
    Ok(Expansion {
        model: model.clone(),
        ars,
        states,
        initial,
    })
}

/// States of an expansion satisfying `expr`.
pub fn eval_state_predicate(exp: &Expansion, expr: &Expr) -> Result<StateSet, ModelError> {
    let compiled = exp.model.compile(expr)?;
    Ok(exp
        .states
        .iter()
        .enumerate()
        .filter(|(_, s)| s.eval(&compiled))
        .map(|(i, _)| ObjectId(i as u32))
        .collect())
}

/// Peterson's mutual exclusion for two processes `P0` and `P1`, with
/// `b0, b1: bool = false` and `x: int[0..1]` starting at 0 or 1.
pub fn builtin_peterson() -> Model {
    let process = |i: usize| {
        let me = i;
        let other = 1 - i;
        let loc = |n: &str, initial| Location {
            name: format!("{n}{me}"),
            initial,
        };
        let at = |n: &str| format!("{n}{me}");
        Process {
            name: format!("P{me}"),
            locations: vec![loc("noncrit", true), loc("wait", false), loc("crit", false)],
            edges: vec![
                Edge {
                    src: at("noncrit"),
                    dst: at("wait"),
                    guard: None,
                    assignments: vec![
                        (format!("b{me}"), Operand::Bool(true)),
                        ("x".to_owned(), Operand::Int(other as i64)),
                    ],
                },
                Edge {
                    src: at("wait"),
                    dst: at("crit"),
                    guard: Some(Expr::Or(
                        Box::new(Expr::Cmp(
                            CmpOp::Eq,
                            Operand::Var("x".to_owned()),
                            Operand::Int(me as i64),
                        )),
                        Box::new(Expr::Not(Box::new(Expr::Var(format!("b{other}"))))),
                    )),
                    assignments: vec![],
                },
                Edge {
                    src: at("crit"),
                    dst: at("noncrit"),
                    guard: None,
                    assignments: vec![(format!("b{me}"), Operand::Bool(false))],
                },
            ],
        }
    };
    Model {
        variables: vec![
            Variable {
                name: "b0".to_owned(),
                domain: Domain::Bool,
                init: vec![0],
            },
            Variable {
                name: "b1".to_owned(),
                domain: Domain::Bool,
                init: vec![0],
            },
            Variable {
                name: "x".to_owned(),
                domain: Domain::Int { lo: 0, hi: 1 },
                init: vec![0, 1],
            },
        ],
        processes: vec![process(0), process(1)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(p: &str, l: &str) -> Expr {
        Expr::At {
            process: p.to_owned(),
            location: l.to_owned(),
        }
    }

    fn and(a: Expr, b: Expr) -> Expr {
        Expr::And(Box::new(a), Box::new(b))
    }

    fn peterson() -> Expansion {
        expand(&builtin_peterson(), DEFAULT_MAX_STATES).unwrap()
    }

    #[test]
    fn peterson_initial_states() {
        let exp = peterson();
        let labels: Vec<&str> = exp.initial.iter().map(|s| exp.ars.label(s)).collect();
        assert_eq!(
            labels,
            vec![
                "<noncrit0,noncrit1,false,false,0>",
                "<noncrit0,noncrit1,false,false,1>"
            ]
        );
        assert_eq!(exp.ars.len(), 72);
    }

    #[test]
    fn peterson_wait_to_crit_via_not_b1() {
        let exp = peterson();
        let from = exp.ars.id_of("<wait0,noncrit1,true,false,1>").unwrap();
        let to = exp.ars.id_of("<crit0,noncrit1,true,false,1>").unwrap();
        assert!(exp.ars.has_edge(from, to));
        // blocked when x = 1 and b1 holds
        let blocked = exp.ars.id_of("<wait0,wait1,true,true,1>").unwrap();
        let crit = exp.ars.id_of("<crit0,wait1,true,true,1>").unwrap();
        assert!(!exp.ars.has_edge(blocked, crit));
    }

    #[test]
    fn labels_are_sorted() {
        let exp = peterson();
        assert!(exp.ars.labels().windows(2).all(|w| w[0] < w[1]));
        for (i, s) in exp.states.iter().enumerate() {
            assert_eq!(exp.id_of(s), Some(ObjectId(i as u32)));
        }
    }

    #[test]
    fn isolated_single_location() {
        let model = Model {
            variables: vec![Variable {
                name: "v".to_owned(),
                domain: Domain::Int { lo: 0, hi: 2 },
                init: vec![0],
            }],
            processes: vec![Process {
                name: "P".to_owned(),
                locations: vec![Location {
                    name: "l".to_owned(),
                    initial: true,
                }],
                edges: vec![],
            }],
        };
        let exp = expand(&model, 100).unwrap();
        assert_eq!(exp.ars.len(), 3);
        assert_eq!(exp.ars.normal_forms().len(), 3);
        assert_eq!(exp.initial.len(), 1);
    }

    #[test]
    fn assignment_out_of_domain_fails_at_expansion() {
        let mut model = builtin_peterson();
        model.processes[0].edges[0].assignments[1].1 = Operand::Int(5);
        assert!(model.validate().is_ok());
        assert_eq!(
            expand(&model, DEFAULT_MAX_STATES),
            Err(ModelError::OutOfDomain {
                variable: "x".to_owned(),
                value: 5
            })
        );
    }

    #[test]
    fn state_cap() {
        assert_eq!(
            expand(&builtin_peterson(), 10),
            Err(ModelError::StateSpaceTooLarge(72, 10))
        );
    }

    #[test]
    fn validation_errors() {
        assert_eq!(Model::default().validate(), Err(ModelError::NoProcess));
        let mut m = builtin_peterson();
        m.processes[1].name = "P0".to_owned();
        assert!(matches!(
            m.validate(),
            Err(ModelError::Duplicate {
                kind: "process",
                ..
            })
        ));
        let mut m = builtin_peterson();
        m.variables[2].init = vec![3];
        assert!(matches!(m.validate(), Err(ModelError::OutOfDomain { .. })));
        let mut m = builtin_peterson();
        m.processes[0].edges[1].guard = Some(Expr::Var("x".to_owned()));
        assert!(matches!(m.validate(), Err(ModelError::Type(_))));
        let mut m = builtin_peterson();
        m.processes[0].edges[0].dst = "nowhere".to_owned();
        assert!(matches!(
            m.validate(),
            Err(ModelError::UnknownLocation { .. })
        ));
    }

    #[test]
    fn state_predicates() {
        let exp = peterson();
        assert_eq!(
            eval_state_predicate(&exp, &Expr::Const(true)).unwrap(),
            exp.ars.all()
        );
        let race = eval_state_predicate(&exp, &and(at("P0", "crit0"), at("P1", "crit1"))).unwrap();
        assert_eq!(race.len(), 8);
        let waiting = eval_state_predicate(
            &exp,
            &and(
                at("P0", "wait0"),
                Expr::Cmp(
                    CmpOp::Eq,
                    Operand::Var("b0".to_owned()),
                    Operand::Bool(true),
                ),
            ),
        )
        .unwrap();
        assert_eq!(waiting.len(), 12);
        assert!(eval_state_predicate(&exp, &at("P9", "x")).is_err());
        assert!(eval_state_predicate(
            &exp,
            &Expr::Cmp(
                CmpOp::Lt,
                Operand::Var("b0".to_owned()),
                Operand::Bool(true)
            )
        )
        .is_err());
    }

    #[test]
    fn every_edge_has_exactly_one_justification() {
        let exp = peterson();
        let model = &exp.model;
        let compiled = model.compile_edges().unwrap();
        for (s, t) in exp.ars.edges() {
            let (from, to) = (exp.state(s), exp.state(t));
            let mut count = 0;
            for (pi, edges) in compiled.iter().enumerate() {
                for e in edges {
                    if from.locations[pi] != e.src || !from.eval(&e.guard) {
                        continue;
                    }
                    let mut next = from.clone();
                    next.locations[pi] = e.dst;
                    for &(var, value) in &e.assignments {
                        next.values[var] = match value {
                            Value::Var(j) => from.values[j],
                            Value::Const(c) => c,
                        };
                    }
                    if &next == to {
                        count += 1;
                    }
                }
            }
            assert_eq!(count, 1, "{} -> {}", exp.ars.label(s), exp.ars.label(t));
        }
    }
}
