//! Exact ground semantics.

use std::collections::BTreeMap;
use std::fmt;

use super::{
    ActionSchema, AssignOp, Atom, Constraint, Expr, Goal, GroundFn, Literal, ObjId, State, Substitution, EQUALITY,
};
use crate::interval::ArithOp;

fn holds_atom(state: &State, atom: &Atom, rho: &Substitution) -> Option<bool> {
    let g = atom.to_ground(rho)?;
    if g.pred == EQUALITY {
        return Some(g.args[0] == g.args[1]);
    }
    Some(state.contains(&g))
}

/// Whether a literal holds once grounded by `rho`. A literal that is not
/// ground under `rho` does not hold.
pub fn holds_literal(state: &State, lit: &Literal, rho: &Substitution) -> bool {
    match holds_atom(state, &lit.atom, rho) {
        Some(v) => v == lit.positive,
        None => {
            debug_assert!(false, "holds_literal on a non-ground literal");
            false
        }
    }
}

/// Value of an expression grounded by `rho`; `None` when undefined (absent
/// fluent, division by zero, non-ground leaf, or a non-finite result).
pub fn eval_expr(state: &State, expr: &Expr, rho: &Substitution) -> Option<f64> {
    let v = match expr {
        Expr::Const(c) => *c,
        Expr::Fn(t) => state.value(&t.to_ground(rho)?)?,
        Expr::Bin(op, l, r) => {
            let a = eval_expr(state, l, rho)?;
            let b = eval_expr(state, r, rho)?;
            match op {
                ArithOp::Add => a + b,
                ArithOp::Sub => a - b,
                ArithOp::Mul => a * b,
                ArithOp::Div if b == 0.0 => return None,
                ArithOp::Div => a / b,
            }
        }
    };
    v.is_finite().then_some(v)
}

/// A constraint holds iff both sides are defined and the comparison is true.
pub fn holds_constraint(state: &State, c: &Constraint, rho: &Substitution) -> bool {
    match (eval_expr(state, &c.lhs, rho), eval_expr(state, &c.rhs, rho)) {
        (Some(a), Some(b)) => c.cmp.test(a, b),
        _ => false,
    }
}

pub fn goal_satisfied(state: &State, goal: &Goal) -> bool {
    let rho = Substitution::empty();
    goal.literals.iter().all(|l| holds_literal(state, l, &rho))
        && goal.constraints.iter().all(|c| holds_constraint(state, c, &rho))
}

/// Why a ground action is not applicable. Indices refer to the schema's
/// precondition and effect lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inapplicable {
    WrongArity { expected: usize, got: usize },
    PositivePrecondition(usize),
    NegativePrecondition(usize),
    Constraint(usize),
    UndefinedEffectValue(usize),
    UndefinedEffectTarget(usize),
    ConflictingEffects(usize, usize),
    NonFiniteResult(usize),
}

impl fmt::Display for Inapplicable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inapplicable::WrongArity { expected, got } => write!(f, "expected {expected} arguments, got {got}"),
            Inapplicable::PositivePrecondition(i) => write!(f, "positive precondition #{i} does not hold"),
            Inapplicable::NegativePrecondition(i) => write!(f, "negative precondition #{i} does not hold"),
            Inapplicable::Constraint(i) => write!(f, "numeric precondition #{i} does not hold"),
            Inapplicable::UndefinedEffectValue(i) => write!(f, "numeric effect #{i} has an undefined value"),
            Inapplicable::UndefinedEffectTarget(i) => write!(f, "numeric effect #{i} updates an undefined fluent"),
            Inapplicable::ConflictingEffects(i, j) => write!(f, "numeric effects #{i} and #{j} conflict"),
            Inapplicable::NonFiniteResult(i) => write!(f, "numeric effect #{i} produces a non-finite value"),
        }
    }
}

impl std::error::Error for Inapplicable {}

struct Update {
    target: GroundFn,
    first: usize,
    value: f64,
}

/// Evaluates every numeric effect against `state` and folds them per target.
fn numeric_updates(state: &State, schema: &ActionSchema, rho: &Substitution) -> Result<Vec<Update>, Inapplicable> {
    // target -> [(effect index, op, rhs value)]
    let mut groups: BTreeMap<GroundFn, Vec<(usize, AssignOp, f64)>> = BTreeMap::new();
    for (i, eff) in schema.eff_num.iter().enumerate() {
        let target = eff.target.to_ground(rho).ok_or(Inapplicable::UndefinedEffectTarget(i))?;
        let rhs = eval_expr(state, &eff.expr, rho).ok_or(Inapplicable::UndefinedEffectValue(i))?;
        if eff.op != AssignOp::Assign && state.value(&target).is_none() {
            return Err(Inapplicable::UndefinedEffectTarget(i));
        }
        if eff.op == AssignOp::ScaleDown && rhs == 0.0 {
            return Err(Inapplicable::UndefinedEffectValue(i));
        }
        groups.entry(target).or_default().push((i, eff.op, rhs));
    }

    let mut out = Vec::with_capacity(groups.len());
    for (target, effs) in groups {
        let (first, op0, _) = effs[0];
        if effs.len() > 1 {
            let additive = effs.iter().all(|e| e.1.is_additive());
            let multiplicative = effs.iter().all(|e| e.1.is_multiplicative());
            if !additive && !multiplicative {
                return Err(Inapplicable::ConflictingEffects(first, effs[1].0));
            }
        }
        let value = if op0 == AssignOp::Assign {
            effs[0].2
        } else {
            let cur = state.value(&target).expect("checked above");
            if op0.is_additive() {
                let plus = sorted_sum(effs.iter().filter(|e| e.1 == AssignOp::Increase).map(|e| e.2));
                let minus = sorted_sum(effs.iter().filter(|e| e.1 == AssignOp::Decrease).map(|e| e.2));
                cur + plus - minus
            } else {
                let up = sorted_product(effs.iter().filter(|e| e.1 == AssignOp::ScaleUp).map(|e| e.2));
                let down = sorted_product(effs.iter().filter(|e| e.1 == AssignOp::ScaleDown).map(|e| 1.0 / e.2));
                cur * up * down
            }
        };
        if !value.is_finite() {
            return Err(Inapplicable::NonFiniteResult(first));
        }
        out.push(Update { target, first, value });
    }
    out.sort_by_key(|u| u.first);
    Ok(out)
}

// Sorting makes the fold independent of effect order.
fn sorted_sum(vals: impl Iterator<Item = f64>) -> f64 {
    let mut v: Vec<f64> = vals.collect();
    v.sort_by(f64::total_cmp);
    v.into_iter().sum()
}

fn sorted_product(vals: impl Iterator<Item = f64>) -> f64 {
    let mut v: Vec<f64> = vals.collect();
    v.sort_by(f64::total_cmp);
    v.into_iter().product()
}

/// Full applicability check: preconditions, effect definedness and
/// non-conflicting numeric effects.
pub fn check_applicable(state: &State, schema: &ActionSchema, args: &[ObjId]) -> Result<(), Inapplicable> {
    if args.len() != schema.arity() {
        return Err(Inapplicable::WrongArity { expected: schema.arity(), got: args.len() });
    }
    let rho = Substitution::total(args);
    for (i, a) in schema.pre_pos.iter().enumerate() {
        if holds_atom(state, a, &rho) != Some(true) {
            return Err(Inapplicable::PositivePrecondition(i));
        }
    }
    for (i, a) in schema.pre_neg.iter().enumerate() {
        if holds_atom(state, a, &rho) != Some(false) {
            return Err(Inapplicable::NegativePrecondition(i));
        }
    }
    for (i, c) in schema.pre_num.iter().enumerate() {
        if !holds_constraint(state, c, &rho) {
            return Err(Inapplicable::Constraint(i));
        }
    }
    numeric_updates(state, schema, &rho).map(|_| ())
}

pub fn is_applicable(state: &State, schema: &ActionSchema, args: &[ObjId]) -> bool {
    check_applicable(state, schema, args).is_ok()
}

/// Successor state. Every right-hand side is read from `state`.
///
/// Panics in debug builds when the action is not applicable.
pub fn apply(state: &State, schema: &ActionSchema, args: &[ObjId]) -> State {
    debug_assert!(is_applicable(state, schema, args), "apply on an inapplicable action");
    let rho = Substitution::total(args);
    let updates = numeric_updates(state, schema, &rho).unwrap_or_default();
    let mut next = state.clone();
    for a in &schema.eff_del {
        if let Some(g) = a.to_ground(&rho) {
            next.remove(&g);
        }
    }
    for a in &schema.eff_add {
        if let Some(g) = a.to_ground(&rho) {
            next.insert(g);
        }
    }
    for u in updates {
        next.set_value(u.target, u.value);
    }
    next
}
