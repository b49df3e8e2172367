//! Encoding of 3-CNF formulas as a single numeric constraint.
//!
//! Every propositional variable `y` becomes a schema variable `x_y` and a
//! unary function `F_y` with `F_y(top) = 1` and `F_y(bot) = 0`. A literal is
//! `F_y(x_y)` or `1 - F_y(x_y)`, a clause is `1 - (1 - l1)(1 - l2)(1 - l3)`
//! and the formula is the constraint that the clause values sum to the
//! number of clauses. Some binding satisfies the constraint exactly when the
//! formula is satisfiable.

use std::fmt;

use crate::interval::{ArithOp, CmpOp};
use crate::model::{
    ActionSchema, Atom, Constraint, Domain, Expr, FuncId, FunctionSymbol, FunctionTerm, Goal, GroundFn, Literal, ObjId,
    Object, Parameter, PredId, PredicateKind, PredicateSymbol, State, Substitution, Task, Term,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    /// Signed 1-based variable indices.
    pub clauses: Vec<[i32; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct DimacsError {
    pub line: usize,
    pub message: String,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<[i32; 3]>) -> Self {
        for c in &clauses {
            for &l in c {
                assert!(l != 0 && l.unsigned_abs() as usize <= num_vars, "literal {l} out of range");
            }
        }
        CnfFormula { num_vars, clauses }
    }

    /// Truth value under `assignment[y - 1]`.
    pub fn eval(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|&l| {
                let v = assignment[l.unsigned_abs() as usize - 1];
                if l > 0 {
                    v
                } else {
                    !v
                }
            })
        })
    }

    /// Reads DIMACS CNF. Every clause must have exactly three literals.
    pub fn parse_dimacs(text: &str) -> Result<Self, DimacsError> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut cur: Vec<i32> = Vec::new();
        let mut last_line = 0;
        for (i, line) in text.lines().enumerate() {
            let n = i + 1;
            last_line = n;
            let err = |message: String| DimacsError { line: n, message };
            let t = line.trim();
            if t.is_empty() || t.starts_with('c') {
                continue;
            }
            if t.starts_with('%') {
                break;
            }
            if t.starts_with('p') {
                let parts: Vec<&str> = t.split_whitespace().collect();
                match parts.as_slice() {
                    ["p", "cnf", v, c] => {
                        let v = v.parse().map_err(|_| err(format!("bad variable count '{v}'")))?;
                        let c = c.parse().map_err(|_| err(format!("bad clause count '{c}'")))?;
                        if header.replace((v, c)).is_some() {
                            return Err(err("duplicate problem line".into()));
                        }
                    }
                    _ => return Err(err("expected 'p cnf <vars> <clauses>'".into())),
                }
                continue;
            }
            let Some((nv, _)) = header else {
                return Err(err("clause before the problem line".into()));
            };
            for tok in t.split_whitespace() {
                let l: i32 = tok.parse().map_err(|_| err(format!("bad literal '{tok}'")))?;
                if l == 0 {
                    let c: [i32; 3] = cur
                        .as_slice()
                        .try_into()
                        .map_err(|_| err(format!("clause has {} literals, expected 3", cur.len())))?;
                    clauses.push(c);
                    cur.clear();
                } else {
                    if l.unsigned_abs() as usize > nv {
                        return Err(err(format!("literal {l} exceeds variable count {nv}")));
                    }
                    cur.push(l);
                }
            }
        }
        let err = |message: String| DimacsError { line: last_line, message };
        let (nv, nc) = header.ok_or_else(|| err("missing problem line".into()))?;
        if !cur.is_empty() {
            return Err(err("last clause is not terminated by 0".into()));
        }
        if clauses.len() != nc {
            return Err(err(format!("header declares {nc} clauses, found {}", clauses.len())));
        }
        Ok(CnfFormula { num_vars: nv, clauses })
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.num_vars, self.clauses.len())?;
        for c in &self.clauses {
            writeln!(f, "{} {} {} 0", c[0], c[1], c[2])?;
        }
        Ok(())
    }
}

pub const TOP: ObjId = ObjId(0);
pub const BOTTOM: ObjId = ObjId(1);

/// The encoded formula as a task with one schema `satisfy(?x1 .. ?xn)`
/// whose only precondition is the formula constraint.
#[derive(Clone, Debug)]
pub struct GadgetInstance {
    pub formula: CnfFormula,
    pub task: Task,
}

impl GadgetInstance {
    pub fn constraint(&self) -> &Constraint {
        &self.task.domain.schemas[0].pre_num[0]
    }

    pub fn state(&self) -> &State {
        &self.task.init
    }
}

fn literal_gadget(l: i32) -> Expr {
    let y = l.unsigned_abs() as usize - 1;
    let f = Expr::Fn(FunctionTerm::new(FuncId(y as u32), vec![Term::Var(y)]));
    if l > 0 {
        f
    } else {
        Expr::bin(ArithOp::Sub, Expr::Const(1.0), f)
    }
}

fn clause_gadget(c: &[i32; 3]) -> Expr {
    let miss = |l: i32| Expr::bin(ArithOp::Sub, Expr::Const(1.0), literal_gadget(l));
    let prod = Expr::bin(ArithOp::Mul, Expr::bin(ArithOp::Mul, miss(c[0]), miss(c[1])), miss(c[2]));
    Expr::bin(ArithOp::Sub, Expr::Const(1.0), prod)
}

pub fn formula_gadget(phi: &CnfFormula) -> Constraint {
    let sum = phi
        .clauses
        .iter()
        .map(clause_gadget)
        .reduce(|acc, z| Expr::bin(ArithOp::Add, acc, z))
        .unwrap_or(Expr::Const(0.0));
    Constraint { lhs: sum, cmp: CmpOp::Eq, rhs: Expr::Const(phi.clauses.len() as f64) }
}

pub fn encode(phi: &CnfFormula) -> GadgetInstance {
    let n = phi.num_vars;
    let solved = PredId(1);
    let schema = ActionSchema {
        name: "satisfy".into(),
        params: (1..=n).map(|y| Parameter { name: format!("?x{y}"), ty: None }).collect(),
        pre_num: vec![formula_gadget(phi)],
        eff_add: vec![Atom::new(solved, vec![])],
        ..Default::default()
    };
    let domain = Domain {
        name: "sat-gadget".into(),
        requirements: vec![":numeric-fluents".into()],
        predicates: vec![
            PredicateSymbol { name: "=".into(), arity: 2, kind: PredicateKind::Equality },
            PredicateSymbol { name: "solved".into(), arity: 0, kind: PredicateKind::User },
        ],
        functions: (1..=n).map(|y| FunctionSymbol { name: format!("f{y}"), arity: 1 }).collect(),
        schemas: vec![schema],
        ..Default::default()
    };
    let mut init = State::new();
    for y in 0..n {
        init.set_value(GroundFn::new(FuncId(y as u32), vec![TOP]), 1.0);
        init.set_value(GroundFn::new(FuncId(y as u32), vec![BOTTOM]), 0.0);
    }
    let task = Task {
        domain,
        problem_name: "formula".into(),
        objects: vec![Object { name: "top".into(), ty: None }, Object { name: "bot".into(), ty: None }],
        init,
        goal: Goal { literals: vec![Literal { atom: Atom::new(solved, vec![]), positive: true }], constraints: vec![] },
        metric: None,
    };
    GadgetInstance { formula: phi.clone(), task }
}

/// Truth assignment read off a total binding: `y` is true iff `x_y` is
/// bound to `top`.
pub fn decode(rho: &Substitution, num_vars: usize) -> Vec<bool> {
    (0..num_vars)
        .map(|y| {
            let o = rho.get(y).expect("binding is total over the formula variables");
            o == TOP
        })
        .collect()
}

/// The binding that encodes a truth assignment.
pub fn binding_of(assignment: &[bool]) -> Substitution {
    Substitution::total(&assignment.iter().map(|&v| if v { TOP } else { BOTTOM }).collect::<Vec<_>>())
}
