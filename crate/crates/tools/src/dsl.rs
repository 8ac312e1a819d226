//! Text syntax for models and state predicates.
//!
//! ```text
//! var b0: bool = false
//! var x: int[0..1] = 0|1
//! process P0 {
//!   loc noncrit0 init
//!   loc wait0
//!   edge noncrit0 -> wait0 do b0 := true; x := 1
//!   edge wait0 -> noncrit0 when x = 0 || !b0
//! }
//! ```
//!
//! Guards and predicates use `= != < <= > >=`, `&& || !` (or `and or not`),
//! parentheses, `true`, `false` and `loc(P) = l`.

use apr_core::model::{CmpOp, Domain, Edge, Expr, Location, Model, Operand, Process, Variable};
use apr_core::ModelError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(&'static str),
    Eof,
}

const SYMBOLS: [&str; 22] = [
    ":=", "->", "..", "&&", "||", "!=", "<=", ">=", "{", "}", "(", ")", "[", "]", ":", "=", "|",
    ";", "!", "<", ">", ",",
];

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let pos = Pos {
                line: ln + 1,
                column: i + 1,
            };
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
                continue;
            }
            let negative = c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit());
            if c.is_ascii_digit() || negative {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse().map_err(|_| ParseError {
                    line: pos.line,
                    column: pos.column,
                    message: format!("integer '{s}' out of range"),
                })?;
                out.push((Tok::Int(v), pos));
                continue;
            }
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
                Some(s) => {
                    out.push((Tok::Sym(s), pos));
                    i += s.len();
                }
                None => {
                    return Err(ParseError {
                        line: pos.line,
                        column: pos.column,
                        message: format!("unexpected character '{c}'"),
                    })
                }
            }
        }
    }
    let end = Pos {
        line: text.lines().count().max(1),
        column: text.lines().last().map_or(0, |l| l.chars().count()) + 1,
    };
    out.push((Tok::Eof, end));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let p = self.pos();
        Err(ParseError {
            line: p.line,
            column: p.column,
            message: message.into(),
        })
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Int(v) => format!("'{v}'"),
            Tok::Sym(s) => format!("'{s}'"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == kw)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        let hit = self.is_sym(s);
        if hit {
            self.bump();
        }
        hit
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        let hit = self.is_kw(kw);
        if hit {
            self.bump();
        }
        hit
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.fail(format!("expected '{s}', found {}", self.describe()))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Ident(s) if !is_reserved(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => self.fail(format!("expected {what}, found {}", self.describe())),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        match *self.peek() {
            Tok::Int(v) => {
                self.bump();
                Ok(v)
            }
            _ => self.fail(format!("expected integer, found {}", self.describe())),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.eat_sym("||") || self.eat_kw("or") {
            lhs = Expr::Or(Box::new(lhs), Box::new(self.conjunction()?));
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat_sym("&&") || self.eat_kw("and") {
            lhs = Expr::And(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat_sym("!") || self.eat_kw("not") {
            return Ok(Expr::Not(Box::new(self.unary()?)));
        }
        if self.eat_sym("(") {
            let e = self.expr()?;
            self.expect_sym(")")?;
            return Ok(e);
        }
        if self.eat_kw("loc") {
            self.expect_sym("(")?;
            let process = self.ident("process name")?;
            self.expect_sym(")")?;
            let negated = if self.eat_sym("=") {
                false
            } else if self.eat_sym("!=") {
                true
            } else {
                return self.fail(format!("expected '=' or '!=', found {}", self.describe()));
            };
            let location = self.ident("location name")?;
            let at = Expr::At { process, location };
            return Ok(if negated { Expr::Not(Box::new(at)) } else { at });
        }
        let start = self.pos();
        let lhs = self.operand()?;
        let op = match self.peek() {
            Tok::Sym("=") => Some(CmpOp::Eq),
            Tok::Sym("!=") => Some(CmpOp::Ne),
            Tok::Sym("<") => Some(CmpOp::Lt),
            Tok::Sym("<=") => Some(CmpOp::Le),
            Tok::Sym(">") => Some(CmpOp::Gt),
            Tok::Sym(">=") => Some(CmpOp::Ge),
            _ => None,
        };
        match (op, lhs) {
            (Some(op), lhs) => {
                self.bump();
                Ok(Expr::Cmp(op, lhs, self.operand()?))
            }
            (None, Operand::Bool(b)) => Ok(Expr::Const(b)),
            (None, Operand::Var(v)) => Ok(Expr::Var(v)),
            (None, Operand::Int(_)) => Err(ParseError {
                line: start.line,
                column: start.column,
                message: "an integer is not a condition".into(),
            }),
        }
    }

    fn operand(&mut self) -> Result<Operand, ParseError> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(Operand::Int(v))
            }
            Tok::Ident(s) if s == "true" || s == "false" => {
                self.bump();
                Ok(Operand::Bool(s == "true"))
            }
            _ => Ok(Operand::Var(self.ident("variable or literal")?)),
        }
    }
}

fn is_reserved(s: &str) -> bool {
    matches!(
        s,
        "var"
            | "process"
            | "loc"
            | "init"
            | "edge"
            | "when"
            | "do"
            | "bool"
            | "int"
            | "true"
            | "false"
            | "and"
            | "or"
            | "not"
    )
}

/// Source positions of model items, for locating semantic errors.
struct Spans {
    variables: Vec<Pos>,
    processes: Vec<(Pos, Vec<Pos>)>,
}

pub fn parse_model(text: &str) -> Result<Model, ParseError> {
    let mut p = Parser::new(text)?;
    let mut model = Model::default();
    let mut spans = Spans {
        variables: Vec::new(),
        processes: Vec::new(),
    };
    loop {
        let pos = p.pos();
        if p.eat_kw("var") {
            model.variables.push(variable(&mut p)?);
            spans.variables.push(pos);
        } else if p.eat_kw("process") {
            let (proc_, edge_spans) = process(&mut p)?;
            model.processes.push(proc_);
            spans.processes.push((pos, edge_spans));
        } else if *p.peek() == Tok::Eof {
            break;
        } else {
            return p.fail(format!(
                "expected 'var' or 'process', found {}",
                p.describe()
            ));
        }
    }
    match model.validate() {
        Ok(()) => Ok(model),
        Err(e) => {
            let pos = locate(&model, &spans).unwrap_or(Pos { line: 1, column: 1 });
            Err(ParseError {
                line: pos.line,
                column: pos.column,
                message: e.to_string(),
            })
        }
    }
}

fn variable(p: &mut Parser) -> Result<Variable, ParseError> {
    let name = p.ident("variable name")?;
    p.expect_sym(":")?;
    let domain = if p.eat_kw("bool") {
        Domain::Bool
    } else if p.eat_kw("int") {
        p.expect_sym("[")?;
        let lo = p.int()?;
        p.expect_sym("..")?;
        let hi = p.int()?;
        p.expect_sym("]")?;
        Domain::Int { lo, hi }
    } else {
        return p.fail(format!("expected 'bool' or 'int', found {}", p.describe()));
    };
    p.expect_sym("=")?;
    let mut init = Vec::new();
    loop {
        let pos = p.pos();
        let v = match (domain, p.operand()?) {
            (Domain::Bool, Operand::Bool(b)) => i64::from(b),
            (Domain::Int { .. }, Operand::Int(v)) => v,
            (_, other) => {
                return Err(ParseError {
                    line: pos.line,
                    column: pos.column,
                    message: format!("initial value {other:?} does not fit the type of '{name}'"),
                })
            }
        };
        if !domain.contains(v) {
            return Err(ParseError {
                line: pos.line,
                column: pos.column,
                message: ModelError::OutOfDomain {
                    variable: name,
                    value: v,
                }
                .to_string(),
            });
        }
        init.push(v);
        if !p.eat_sym("|") {
            break;
        }
    }
    Ok(Variable { name, domain, init })
}

fn process(p: &mut Parser) -> Result<(Process, Vec<Pos>), ParseError> {
    let name = p.ident("process name")?;
    p.expect_sym("{")?;
    let mut out = Process {
        name,
        locations: Vec::new(),
        edges: Vec::new(),
    };
    let mut edge_spans = Vec::new();
    loop {
        let pos = p.pos();
        if p.eat_kw("loc") {
            let name = p.ident("location name")?;
            let initial = p.eat_kw("init");
            out.locations.push(Location { name, initial });
        } else if p.eat_kw("edge") {
            out.edges.push(edge(p)?);
            edge_spans.push(pos);
        } else if p.eat_sym("}") {
            return Ok((out, edge_spans));
        } else {
            return p.fail(format!(
                "expected 'loc', 'edge' or '}}', found {}",
                p.describe()
            ));
        }
    }
}

fn edge(p: &mut Parser) -> Result<Edge, ParseError> {
    let src = p.ident("location name")?;
    p.expect_sym("->")?;
    let dst = p.ident("location name")?;
    let guard = if p.eat_kw("when") {
        Some(p.expr()?)
    } else {
        None
    };
    let mut assignments = Vec::new();
    if p.eat_kw("do") {
        loop {
            let var = p.ident("variable name")?;
            p.expect_sym(":=")?;
            assignments.push((var, p.operand()?));
            if !p.eat_sym(";") {
                break;
            }
        }
    }
    Ok(Edge {
        src,
        dst,
        guard,
        assignments,
    })
}

/// Finds the first item whose addition makes validation fail.
fn locate(model: &Model, spans: &Spans) -> Option<Pos> {
    let placeholder = Process {
        name: String::new(),
        locations: vec![Location {
            name: String::new(),
            initial: true,
        }],
        edges: Vec::new(),
    };
    for (i, &pos) in spans.variables.iter().enumerate() {
        let m = Model {
            variables: model.variables[..=i].to_vec(),
            processes: vec![placeholder.clone()],
        };
        if m.validate().is_err() {
            return Some(pos);
        }
    }
    let bare: Vec<Process> = model
        .processes
        .iter()
        .map(|p| Process {
            edges: Vec::new(),
            ..p.clone()
        })
        .collect();
    for (j, (pos, _)) in spans.processes.iter().enumerate() {
        let m = Model {
            variables: model.variables.clone(),
            processes: bare[..=j].to_vec(),
        };
        if m.validate().is_err() {
            return Some(*pos);
        }
    }
    for (j, (_, edge_spans)) in spans.processes.iter().enumerate() {
        for (k, &pos) in edge_spans.iter().enumerate() {
            let mut processes = bare.clone();
            processes[j].edges.push(model.processes[j].edges[k].clone());
            let m = Model {
                variables: model.variables.clone(),
                processes,
            };
            if m.validate().is_err() {
                return Some(pos);
            }
        }
    }
    None
}

/// Parses a state predicate such as `loc(P0)=wait0 && b0=true`. Names are
/// resolved later, against an expansion.
pub fn parse_state_predicate(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return p.fail(format!("unexpected {}", p.describe()));
    }
    Ok(e)
}
