//! Shared test support: a seeded random task generator that writes PDDL
//! text, and a brute-force oracle for applicability, successor states and
//! optimal plan cost. The oracle only reads the task data structures; it
//! does not call any evaluation code of the library.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::path::{Path, PathBuf};

use lnp::interval::{ArithOp, CmpOp};
use lnp::model::{
    ActionSchema, AssignOp, Atom, Constraint, Expr, FunctionTerm, GroundAction, GroundAtom, GroundFn, ObjId,
    PredicateKind, State, Task, Term,
};
use lnp::pddl::{parse_domain, parse_problem};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Seed from `LNP_TEST_SEED`, falling back to a fixed value.
pub fn seed() -> u64 {
    std::env::var("LNP_TEST_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED)
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    let mut r = ChaCha8Rng::seed_from_u64(seed());
    r.set_stream(stream);
    r
}

pub fn benchmarks_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../benchmarks")
}

pub fn benchmark_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(benchmarks_dir())
        .expect("benchmarks directory")
        .filter_map(|e| e.ok())
        .filter(|e| e.path().join("domain.pddl").exists())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    names
}

pub fn load_benchmark(name: &str) -> Task {
    let dir = benchmarks_dir().join(name);
    lnp::pddl::load_task(&dir.join("domain.pddl"), &dir.join("problem.pddl")).expect("benchmark parses")
}

#[derive(Clone, Copy, Debug)]
pub struct Shape {
    /// Upper bound on predicate and function arity, and on the number of
    /// distinct variables in one precondition element.
    pub max_arity: usize,
    pub max_params: usize,
    pub max_objects: usize,
    /// At most one numeric effect per function symbol and schema, only on
    /// functions defined for every tuple, built from sums of such functions
    /// and constants. Such effects never make a ground action inapplicable
    /// within the few steps the tests explore.
    pub vacuous_effects: bool,
}

impl Shape {
    pub fn binary() -> Self {
        Shape { max_arity: 2, max_params: 4, max_objects: 6, vacuous_effects: true }
    }

    pub fn ternary() -> Self {
        Shape { max_arity: 3, max_params: 4, max_objects: 6, vacuous_effects: false }
    }
}

#[derive(Clone, Debug)]
pub struct TaskText {
    pub domain: String,
    pub problem: String,
}

impl TaskText {
    pub fn parse(&self) -> Task {
        let d = parse_domain(&self.domain).unwrap_or_else(|e| panic!("{e}\n{}", self.domain));
        parse_problem(&self.problem, d).unwrap_or_else(|e| panic!("{e}\n{}", self.problem))
    }
}

const ALL_OPS: &[&str] = &["+", "-", "*", "/"];

struct Sym {
    name: String,
    arity: usize,
    total: bool,
}

struct Gen<'r> {
    rng: &'r mut ChaCha8Rng,
    shape: Shape,
    constants: Vec<String>,
    preds: Vec<Sym>,
    funcs: Vec<Sym>,
}

impl Gen<'_> {
    fn pool(&mut self, params: usize, limit: usize) -> Vec<String> {
        let mut all: Vec<usize> = (0..params).collect();
        all.shuffle(self.rng);
        let n = self.rng.gen_range(0..=limit.min(params));
        all.truncate(n);
        all.into_iter().map(|i| format!("?v{i}")).collect()
    }

    fn term(&mut self, pool: &[String]) -> Option<String> {
        let use_const = !self.constants.is_empty() && (pool.is_empty() || self.rng.gen_bool(0.15));
        if use_const {
            return self.constants.choose(self.rng).cloned();
        }
        pool.choose(self.rng).cloned()
    }

    fn args(&mut self, arity: usize, pool: &[String]) -> Option<String> {
        let mut s = String::new();
        for _ in 0..arity {
            s.push(' ');
            s.push_str(&self.term(pool)?);
        }
        Some(s)
    }

    fn atom(&mut self, pool: &[String]) -> Option<String> {
        if self.rng.gen_bool(0.1) {
            let a = self.term(pool)?;
            let b = self.term(pool)?;
            return Some(format!("(= {a} {b})"));
        }
        let p = self.rng.gen_range(0..self.preds.len());
        let (name, arity) = (self.preds[p].name.clone(), self.preds[p].arity);
        Some(format!("({name}{})", self.args(arity, pool)?))
    }

    fn fterm(&mut self, pool: &[String], only_total: bool) -> Option<String> {
        let choices: Vec<usize> = (0..self.funcs.len()).filter(|&i| !only_total || self.funcs[i].total).collect();
        let &f = choices.choose(self.rng)?;
        let (name, arity) = (self.funcs[f].name.clone(), self.funcs[f].arity);
        Some(format!("({name}{})", self.args(arity, pool)?))
    }

    fn expr(&mut self, pool: &[String], depth: usize, only_total: bool, ops: &[&str]) -> String {
        if depth > 0 && self.rng.gen_bool(0.4) {
            let op = ops.choose(self.rng).unwrap();
            let l = self.expr(pool, depth - 1, only_total, ops);
            let r = self.expr(pool, depth - 1, only_total, ops);
            return format!("({op} {l} {r})");
        }
        if self.rng.gen_bool(0.6) {
            if let Some(t) = self.fterm(pool, only_total) {
                return t;
            }
        }
        self.rng.gen_range(-2..=4).to_string()
    }

    fn schema(&mut self, idx: usize, types: &[&str]) -> String {
        let k = self.rng.gen_range(0..=self.shape.max_params);
        let mut params = String::new();
        for i in 0..k {
            let ty = types.choose(self.rng).unwrap();
            params.push_str(&format!(" ?v{i} - {ty}"));
        }
        let limit = self.shape.max_arity;
        let mut pre = Vec::new();
        for _ in 0..self.rng.gen_range(0..=2) {
            let pool = self.pool(k, limit);
            if let Some(a) = self.atom(&pool) {
                pre.push(a);
            }
        }
        for _ in 0..self.rng.gen_range(0..=2) {
            let pool = self.pool(k, limit);
            if let Some(a) = self.atom(&pool) {
                pre.push(format!("(not {a})"));
            }
        }
        for _ in 0..self.rng.gen_range(0..=2) {
            let pool = self.pool(k, limit);
            let cmp = ["=", "<", ">", "<=", ">="].choose(self.rng).unwrap();
            let l = self.expr(&pool, 2, false, ALL_OPS);
            let r = self.expr(&pool, 1, false, ALL_OPS);
            pre.push(format!("({cmp} {l} {r})"));
        }

        let all: Vec<String> = (0..k).map(|i| format!("?v{i}")).collect();
        let mut eff = Vec::new();
        for _ in 0..self.rng.gen_range(0..=2) {
            if let Some(a) = self.atom(&all).filter(|a| !a.starts_with("(= ")) {
                eff.push(a);
            }
        }
        for _ in 0..self.rng.gen_range(0..=2) {
            if let Some(a) = self.atom(&all).filter(|a| !a.starts_with("(= ")) {
                eff.push(format!("(not {a})"));
            }
        }
        if self.shape.vacuous_effects {
            for f in 0..self.funcs.len() {
                if !self.funcs[f].total || !self.rng.gen_bool(0.5) {
                    continue;
                }
                let (name, arity) = (self.funcs[f].name.clone(), self.funcs[f].arity);
                let Some(args) = self.args(arity, &all) else { continue };
                let op = ["increase", "decrease", "assign", "scale-up"].choose(self.rng).unwrap();
                // products of fluents could overflow within a few steps
                let rhs = if *op == "scale-up" {
                    self.rng.gen_range(0..=3).to_string()
                } else {
                    self.expr(&all, 1, true, &["+", "-"])
                };
                eff.push(format!("({op} ({name}{args}) {rhs})"));
            }
        } else {
            for _ in 0..self.rng.gen_range(0..=3) {
                let Some(target) = self.fterm(&all, false) else { continue };
                let op = ["increase", "decrease", "assign", "scale-up", "scale-down"].choose(self.rng).unwrap();
                let rhs = self.expr(&all, 1, false, ALL_OPS);
                eff.push(format!("({op} {target} {rhs})"));
            }
        }
        format!(
            "  (:action a{idx}\n    :parameters ({})\n    :precondition (and {})\n    :effect (and {}))\n",
            params.trim(),
            pre.join(" "),
            eff.join(" ")
        )
    }
}

fn tuples(n: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |o| {
                    let mut t = t.clone();
                    t.push(o);
                    t
                })
            })
            .collect();
    }
    out
}

/// Random domain and problem text.
pub fn random_task_text(rng: &mut ChaCha8Rng, shape: Shape) -> TaskText {
    let typed = rng.gen_bool(0.5);
    let types: Vec<&str> = if typed { vec!["object", "ta", "tb"] } else { vec!["object"] };
    let n_obj = rng.gen_range(1..=shape.max_objects);
    let n_const = if n_obj > 1 && rng.gen_bool(0.3) { 1 } else { 0 };
    let constants: Vec<String> = (0..n_const).map(|i| format!("c{i}")).collect();
    let objects: Vec<String> = (0..n_obj - n_const).map(|i| format!("o{i}")).collect();
    let preds: Vec<Sym> = (0..rng.gen_range(1..=4))
        .map(|i| Sym { name: format!("p{i}"), arity: rng.gen_range(0..=shape.max_arity), total: false })
        .collect();
    let funcs: Vec<Sym> = (0..rng.gen_range(1..=3))
        .map(|i| Sym { name: format!("f{i}"), arity: rng.gen_range(0..=shape.max_arity), total: rng.gen_bool(0.6) })
        .collect();

    let mut g = Gen { rng, shape, constants, preds, funcs };
    let mut domain = String::from("(define (domain random)\n");
    domain.push_str("  (:requirements :strips :typing :negative-preconditions :equality :numeric-fluents)\n");
    if typed {
        domain.push_str("  (:types ta - object tb - ta)\n");
    }
    let typed_name = |g: &mut Gen<'_>, n: &str| format!("{n} - {}", types.choose(g.rng).unwrap());
    if !g.constants.is_empty() {
        let cs: Vec<String> = g.constants.clone().iter().map(|c| typed_name(&mut g, c)).collect();
        domain.push_str(&format!("  (:constants {})\n", cs.join(" ")));
    }
    let sig = |s: &Sym| (0..s.arity).map(|i| format!(" ?a{i}")).collect::<String>();
    domain.push_str("  (:predicates");
    for p in &g.preds {
        domain.push_str(&format!(" ({}{})", p.name, sig(p)));
    }
    domain.push_str(")\n  (:functions");
    for f in &g.funcs {
        domain.push_str(&format!(" ({}{})", f.name, sig(f)));
    }
    domain.push_str(")\n");
    for i in 0..g.rng.gen_range(1..=3) {
        let s = g.schema(i, &types);
        domain.push_str(&s);
    }
    domain.push_str(")\n");

    let all_objects: Vec<String> = g.constants.iter().chain(&objects).cloned().collect();
    let mut problem = String::from("(define (problem random-p) (:domain random)\n");
    if !objects.is_empty() {
        let os: Vec<String> = objects.iter().map(|o| typed_name(&mut g, o)).collect();
        problem.push_str(&format!("  (:objects {})\n", os.join(" ")));
    }
    problem.push_str("  (:init");
    let n = all_objects.len();
    for p in &g.preds {
        for t in tuples(n, p.arity) {
            if g.rng.gen_bool(0.5) {
                let args: String = t.iter().map(|&o| format!(" {}", all_objects[o])).collect();
                problem.push_str(&format!(" ({}{args})", p.name));
            }
        }
    }
    for f in &g.funcs {
        for t in tuples(n, f.arity) {
            if f.total || g.rng.gen_bool(0.6) {
                let args: String = t.iter().map(|&o| format!(" {}", all_objects[o])).collect();
                problem.push_str(&format!(" (= ({}{args}) {})", f.name, g.rng.gen_range(-2..=5)));
            }
        }
    }
    problem.push_str(")\n  (:goal (and");
    let p = g.rng.gen_range(0..g.preds.len());
    let args: String = (0..g.preds[p].arity).map(|_| format!(" {}", all_objects.choose(g.rng).unwrap())).collect();
    problem.push_str(&format!(" ({}{args})", g.preds[p].name));
    problem.push_str(")))\n");
    TaskText { domain, problem }
}

pub fn random_task(rng: &mut ChaCha8Rng, shape: Shape) -> Task {
    random_task_text(rng, shape).parse()
}

// ---------------------------------------------------------------------------
// Oracle

fn ground_term(t: Term, args: &[ObjId]) -> ObjId {
    match t {
        Term::Var(v) => args[v],
        Term::Obj(o) => o,
    }
}

fn ground_atom(a: &Atom, args: &[ObjId]) -> GroundAtom {
    GroundAtom::new(a.pred, a.args.iter().map(|&t| ground_term(t, args)).collect())
}

fn ground_fn(f: &FunctionTerm, args: &[ObjId]) -> GroundFn {
    GroundFn::new(f.func, f.args.iter().map(|&t| ground_term(t, args)).collect())
}

fn holds_atom(task: &Task, state: &State, a: &Atom, args: &[ObjId]) -> bool {
    if task.domain.predicates[a.pred.0 as usize].kind == PredicateKind::Equality {
        return ground_term(a.args[0], args) == ground_term(a.args[1], args);
    }
    state.atoms().contains(&ground_atom(a, args))
}

pub fn oracle_eval(state: &State, e: &Expr, args: &[ObjId]) -> Option<f64> {
    let v = match e {
        Expr::Const(c) => *c,
        Expr::Fn(f) => *state.fluents().get(&ground_fn(f, args))?,
        Expr::Bin(op, l, r) => {
            let a = oracle_eval(state, l, args)?;
            let b = oracle_eval(state, r, args)?;
            match op {
                ArithOp::Add => a + b,
                ArithOp::Sub => a - b,
                ArithOp::Mul => a * b,
                ArithOp::Div => {
                    if b == 0.0 {
                        return None;
                    }
                    a / b
                }
            }
        }
    };
    v.is_finite().then_some(v)
}

fn compare(cmp: CmpOp, a: f64, b: f64) -> bool {
    match cmp {
        CmpOp::Eq => a == b,
        CmpOp::Lt => a < b,
        CmpOp::Gt => a > b,
        CmpOp::Le => a <= b,
        CmpOp::Ge => a >= b,
    }
}

pub fn oracle_constraint(state: &State, c: &Constraint, args: &[ObjId]) -> bool {
    match (oracle_eval(state, &c.lhs, args), oracle_eval(state, &c.rhs, args)) {
        (Some(a), Some(b)) => compare(c.cmp, a, b),
        _ => false,
    }
}

fn has_type(task: &Task, o: ObjId, ty: Option<usize>) -> bool {
    let Some(want) = ty else { return true };
    let mut cur = task.objects[o.0 as usize].ty;
    while let Some(t) = cur {
        if t == want {
            return true;
        }
        cur = task.domain.types[t].parent;
    }
    false
}

/// Successor state if `args` is applicable in `state`, `None` otherwise.
pub fn oracle_apply(task: &Task, state: &State, schema: &ActionSchema, args: &[ObjId]) -> Option<State> {
    if args.len() != schema.params.len() {
        return None;
    }
    if !schema.params.iter().zip(args).all(|(p, &o)| has_type(task, o, p.ty)) {
        return None;
    }
    if !schema.pre_pos.iter().all(|a| holds_atom(task, state, a, args)) {
        return None;
    }
    if schema.pre_neg.iter().any(|a| holds_atom(task, state, a, args)) {
        return None;
    }
    if !schema.pre_num.iter().all(|c| oracle_constraint(state, c, args)) {
        return None;
    }

    let mut groups: BTreeMap<GroundFn, Vec<(AssignOp, f64)>> = BTreeMap::new();
    for e in &schema.eff_num {
        let target = ground_fn(&e.target, args);
        let v = oracle_eval(state, &e.expr, args)?;
        if e.op != AssignOp::Assign && !state.fluents().contains_key(&target) {
            return None;
        }
        if e.op == AssignOp::ScaleDown && v == 0.0 {
            return None;
        }
        groups.entry(target).or_default().push((e.op, v));
    }
    let mut updates = Vec::new();
    for (target, effs) in groups {
        let additive = effs.iter().all(|(op, _)| matches!(op, AssignOp::Increase | AssignOp::Decrease));
        let multiplicative = effs.iter().all(|(op, _)| matches!(op, AssignOp::ScaleUp | AssignOp::ScaleDown));
        if effs.len() > 1 && !additive && !multiplicative {
            return None;
        }
        let cur = state.fluents().get(&target).copied();
        let mut v = match effs[0].0 {
            AssignOp::Assign => effs[0].1,
            _ => cur.expect("target defined"),
        };
        for &(op, x) in &effs {
            match op {
                AssignOp::Assign => {}
                AssignOp::Increase => v += x,
                AssignOp::Decrease => v -= x,
                AssignOp::ScaleUp => v *= x,
                AssignOp::ScaleDown => v /= x,
            }
        }
        if !v.is_finite() {
            return None;
        }
        updates.push((target, v));
    }

    let mut next = state.clone();
    for a in &schema.eff_del {
        next.remove(&ground_atom(a, args));
    }
    for a in &schema.eff_add {
        next.insert(ground_atom(a, args));
    }
    for (f, v) in updates {
        next.set_value(f, v);
    }
    Some(next)
}

/// Every object tuple of length `k`, in lexicographic order.
pub fn all_tuples(task: &Task, k: usize) -> Vec<Vec<ObjId>> {
    tuples(task.objects.len(), k).into_iter().map(|t| t.into_iter().map(|o| ObjId(o as u32)).collect()).collect()
}

pub fn oracle_applicable_in_schema(task: &Task, state: &State, schema: usize) -> BTreeSet<Vec<ObjId>> {
    let s = &task.domain.schemas[schema];
    all_tuples(task, s.params.len()).into_iter().filter(|t| oracle_apply(task, state, s, t).is_some()).collect()
}

pub fn oracle_successors(task: &Task, state: &State) -> Vec<(GroundAction, State)> {
    let mut out = Vec::new();
    for (i, s) in task.domain.schemas.iter().enumerate() {
        for t in all_tuples(task, s.params.len()) {
            if let Some(next) = oracle_apply(task, state, s, &t) {
                out.push((GroundAction { schema: i, args: t }, next));
            }
        }
    }
    out
}

pub fn oracle_goal(task: &Task, state: &State) -> bool {
    task.goal.literals.iter().all(|l| holds_atom(task, state, &l.atom, &[]) == l.positive)
        && task.goal.constraints.iter().all(|c| oracle_constraint(state, c, &[]))
}

/// Breadth-first exploration from the initial state; returns up to `max`
/// states in the order they are expanded.
pub fn oracle_explore(task: &Task, max: usize) -> Vec<State> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    seen.insert(task.init.clone());
    queue.push_back(task.init.clone());
    while let Some(s) = queue.pop_front() {
        if out.len() == max {
            break;
        }
        for (_, next) in oracle_successors(task, &s) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        out.push(s);
    }
    out
}

/// Optimal unit plan cost by breadth-first search, `None` if the goal is
/// unreachable within `max_states` distinct states.
pub fn oracle_optimal_cost(task: &Task, max_states: usize) -> Option<usize> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(task.init.clone());
    queue.push_back((task.init.clone(), 0usize));
    while let Some((s, g)) = queue.pop_front() {
        if oracle_goal(task, &s) {
            return Some(g);
        }
        for (_, next) in oracle_successors(task, &s) {
            if seen.len() >= max_states {
                return None;
            }
            if seen.insert(next.clone()) {
                queue.push_back((next, g + 1));
            }
        }
    }
    None
}
