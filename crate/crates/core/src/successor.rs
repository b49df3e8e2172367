//! Applicable-action generation with four interchangeable strategies.
//!
//! * `numeric`: cliques of the consistency graph including numeric pruning.
//! * `propositional`: cliques of the graph without numeric pruning.
//! * `exhaustive`: every type-consistent binding.
//! * `grounded`: a precomputed store of statically pruned ground actions,
//!   filtered per state on their propositional preconditions.
//!
//! Every candidate then goes through the exact applicability check, so all
//! strategies return the same set of actions.

use std::fmt;
use std::ops::AddAssign;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::clique::Cliques;
use crate::graph::{build_graph, ConsistencyGraph, GraphOptions, StateContext};
use crate::model::{
    apply, check_applicable, holds_literal, ActionSchema, Atom, GroundAction, Literal, ObjId, State, Substitution,
    Syntax, Task, EQUALITY,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Numeric,
    Propositional,
    Exhaustive,
    Grounded,
}

impl Strategy {
    pub const ALL: [Strategy; 4] =
        [Strategy::Numeric, Strategy::Propositional, Strategy::Exhaustive, Strategy::Grounded];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Numeric => "numeric",
            Strategy::Propositional => "propositional",
            Strategy::Exhaustive => "exhaustive",
            Strategy::Grounded => "grounded",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| format!("unknown generator '{s}' (expected numeric, propositional, exhaustive or grounded)"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub strategy: Strategy,
    /// Assignment-set degree.
    pub degree: usize,
    /// Largest ground-action store the grounded strategy may build.
    pub ground_cap: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig { strategy: Strategy::Numeric, degree: 2, ground_cap: 1_000_000 }
    }
}

impl GeneratorConfig {
    pub fn with_strategy(strategy: Strategy) -> Self {
        GeneratorConfig { strategy, ..Default::default() }
    }
}

/// Candidates emitted before the final check, and how many survived it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateReport {
    pub candidates: u64,
    pub applicable: u64,
}

impl AddAssign for CandidateReport {
    fn add_assign(&mut self, o: CandidateReport) {
        self.candidates += o.candidates;
        self.applicable += o.applicable;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroundingError {
    #[error("grounding exceeds the limit of {cap} actions (schema {schema})")]
    CapExceeded { cap: usize, schema: String },
}

/// Ground actions per schema, after static pruning against the initial
/// state.
#[derive(Clone, Debug, Default)]
pub struct GroundStore {
    per_schema: Vec<Vec<Vec<ObjId>>>,
}

impl GroundStore {
    pub fn len(&self) -> usize {
        self.per_schema.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn schema(&self, i: usize) -> &[Vec<ObjId>] {
        &self.per_schema[i]
    }

    pub fn actions(&self) -> impl Iterator<Item = GroundAction> + '_ {
        self.per_schema
            .iter()
            .enumerate()
            .flat_map(|(schema, bs)| bs.iter().map(move |args| GroundAction { schema, args: args.clone() }))
    }
}

/// Grounds every schema over its typed parameter domains, dropping bindings
/// whose static literals (predicates no effect mentions) fail initially.
pub fn ground_all(task: &Task, cap: usize) -> Result<GroundStore, GroundingError> {
    let statics = task.domain.static_predicates();
    let mut total = 0usize;
    let mut per_schema = Vec::with_capacity(task.domain.schemas.len());
    for schema in &task.domain.schemas {
        let k = schema.arity();
        // static literals grouped by the highest variable they mention
        let mut by_depth: Vec<Vec<Literal>> = vec![Vec::new(); k + 1];
        let lits = schema
            .pre_pos
            .iter()
            .map(|a| (a, true))
            .chain(schema.pre_neg.iter().map(|a| (a, false)))
            .filter(|(a, _)| statics.contains(&a.pred));
        for (a, positive) in lits {
            let depth = a.free_vars().last().map_or(0, |&v| v + 1);
            by_depth[depth].push(Literal { atom: a.clone(), positive });
        }
        let domains: Vec<Vec<ObjId>> = schema.params.iter().map(|p| task.objects_of_type(p.ty)).collect();
        let mut out = Vec::new();
        let mut rho = Substitution::empty();
        let ok0 = by_depth[0].iter().all(|l| holds_literal(&task.init, l, &rho));
        if ok0 {
            let mut err = None;
            ground_rec(task, &domains, &by_depth, 0, &mut rho, &mut Vec::new(), &mut out, &mut |n| {
                if total + n > cap {
                    err = Some(GroundingError::CapExceeded { cap, schema: schema.name.clone() });
                    false
                } else {
                    true
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        total += out.len();
        per_schema.push(out);
    }
    Ok(GroundStore { per_schema })
}

#[allow(clippy::too_many_arguments)]
fn ground_rec(
    task: &Task,
    domains: &[Vec<ObjId>],
    by_depth: &[Vec<Literal>],
    depth: usize,
    rho: &mut Substitution,
    args: &mut Vec<ObjId>,
    out: &mut Vec<Vec<ObjId>>,
    within_cap: &mut dyn FnMut(usize) -> bool,
) -> bool {
    if depth == domains.len() {
        if !within_cap(out.len() + 1) {
            return false;
        }
        out.push(args.clone());
        return true;
    }
    for &o in &domains[depth] {
        rho.bind(depth, o);
        if by_depth[depth + 1].iter().all(|l| holds_literal(&task.init, l, rho)) {
            args.push(o);
            let go_on = ground_rec(task, domains, by_depth, depth + 1, rho, args, out, within_cap);
            args.pop();
            if !go_on {
                rho.unbind(depth);
                return false;
            }
        }
        rho.unbind(depth);
    }
    true
}

fn holds_atom(state: &State, a: &Atom, rho: &Substitution) -> bool {
    match a.to_ground(rho) {
        Some(g) if g.pred == EQUALITY => g.args[0] == g.args[1],
        Some(g) => state.contains(&g),
        None => false,
    }
}

/// Successor generator for one task and configuration.
pub struct Generator<'t> {
    task: &'t Task,
    cfg: GeneratorConfig,
    store: Option<GroundStore>,
    typed_domains: Vec<Vec<Vec<ObjId>>>,
}

impl<'t> Generator<'t> {
    pub fn new(task: &'t Task, cfg: GeneratorConfig) -> Result<Self, GroundingError> {
        let store = match cfg.strategy {
            Strategy::Grounded => Some(ground_all(task, cfg.ground_cap)?),
            _ => None,
        };
        let typed_domains =
            task.domain.schemas.iter().map(|s| s.params.iter().map(|p| task.objects_of_type(p.ty)).collect()).collect();
        Ok(Generator { task, cfg, store, typed_domains })
    }

    pub fn task(&self) -> &'t Task {
        self.task
    }

    pub fn config(&self) -> GeneratorConfig {
        self.cfg
    }

    pub fn store(&self) -> Option<&GroundStore> {
        self.store.as_ref()
    }

    pub fn context<'s>(&self, state: &'s State) -> StateContext<'s> {
        StateContext::new(&self.task.domain, state, self.cfg.degree)
    }

    /// Consistency graph of one schema (graph strategies only; the
    /// propositional graph otherwise).
    pub fn graph(&self, schema: usize, ctx: &StateContext<'_>, trace: bool) -> ConsistencyGraph {
        let numeric = self.cfg.strategy == Strategy::Numeric;
        build_graph(self.task, &self.task.domain.schemas[schema], ctx, GraphOptions { numeric, trace })
    }

    /// Candidate bindings of one schema, before the final check.
    pub fn candidates(&self, schema: usize, ctx: &StateContext<'_>, sink: &mut dyn FnMut(&[ObjId])) {
        let s: &ActionSchema = &self.task.domain.schemas[schema];
        match self.cfg.strategy {
            Strategy::Numeric | Strategy::Propositional => {
                let g = self.graph(schema, ctx, false);
                for c in Cliques::new(&g) {
                    sink(&c);
                }
            }
            Strategy::Exhaustive => {
                let domains = &self.typed_domains[schema];
                if domains.iter().any(Vec::is_empty) {
                    return;
                }
                let mut idx = vec![0usize; domains.len()];
                let mut args: Vec<ObjId> = domains.iter().map(|d| d[0]).collect();
                loop {
                    sink(&args);
                    let mut p = domains.len();
                    loop {
                        if p == 0 {
                            return;
                        }
                        p -= 1;
                        idx[p] += 1;
                        if idx[p] < domains[p].len() {
                            args[p] = domains[p][idx[p]];
                            break;
                        }
                        idx[p] = 0;
                        args[p] = domains[p][0];
                    }
                }
            }
            Strategy::Grounded => {
                let store = self.store.as_ref().expect("grounded generator has a store");
                for args in store.schema(schema) {
                    let rho = Substitution::total(args);
                    let ok = s.pre_pos.iter().all(|a| holds_atom(ctx.state, a, &rho))
                        && s.pre_neg.iter().all(|a| !holds_atom(ctx.state, a, &rho));
                    if ok {
                        sink(args);
                    }
                }
            }
        }
    }

    /// Applicable actions of one schema.
    pub fn applicable_in_schema(&self, schema: usize, ctx: &StateContext<'_>) -> (Vec<GroundAction>, CandidateReport) {
        let s = &self.task.domain.schemas[schema];
        let mut out = Vec::new();
        let mut report = CandidateReport::default();
        self.candidates(schema, ctx, &mut |args| {
            report.candidates += 1;
            if check_applicable(ctx.state, s, args).is_ok() {
                report.applicable += 1;
                out.push(GroundAction { schema, args: args.to_vec() });
            }
        });
        (out, report)
    }

    /// All applicable actions in `state`, schema by schema.
    pub fn applicable(&self, state: &State) -> (Vec<GroundAction>, CandidateReport) {
        let ctx = self.context(state);
        let mut all = Vec::new();
        let mut report = CandidateReport::default();
        for i in 0..self.task.domain.schemas.len() {
            let (acts, r) = self.applicable_in_schema(i, &ctx);
            all.extend(acts);
            report += r;
        }
        (all, report)
    }

    /// Applicable actions with their successor states.
    pub fn successors(&self, state: &State) -> (Vec<(GroundAction, State)>, CandidateReport) {
        let (acts, report) = self.applicable(state);
        let succ = acts
            .into_iter()
            .map(|a| {
                let next = apply(state, self.task.schema(&a), &a.args);
                (a, next)
            })
            .collect();
        (succ, report)
    }
}
