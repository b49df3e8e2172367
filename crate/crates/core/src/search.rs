//! Blind A* (uniform-cost search with unit action costs) and plan
//! validation.

use std::cmp::Reverse;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;
use std::rc::Rc;
use std::time::{Duration, Instant};

use crate::model::{apply, check_applicable, goal_satisfied, GroundAction, Inapplicable, State, Task};
use crate::successor::{CandidateReport, Generator};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Limits {
    pub time: Option<Duration>,
    /// Approximate bytes of stored search nodes.
    pub memory: Option<usize>,
    /// Maximum number of expansions.
    pub nodes: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Limit {
    Time,
    Memory,
    Nodes,
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Limit::Time => "time",
            Limit::Memory => "memory",
            Limit::Nodes => "node cap",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Plan(Vec<GroundAction>),
    Unsolvable,
    LimitReached(Limit),
}

#[derive(Clone, Debug, Default)]
pub struct SearchStats {
    pub expansions: usize,
    pub generated: usize,
    /// g-value of each expanded node, in expansion order.
    pub expanded_g: Vec<u32>,
    /// Candidate counts of each expansion, in expansion order.
    pub per_expansion: Vec<CandidateReport>,
    pub wall_time: Duration,
}

impl SearchStats {
    pub fn totals(&self) -> CandidateReport {
        let mut t = CandidateReport::default();
        for r in &self.per_expansion {
            t += *r;
        }
        t
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub outcome: Outcome,
    pub stats: SearchStats,
}

struct Node {
    state: Rc<State>,
    parent: Option<usize>,
    action: Option<GroundAction>,
}

const NODE_OVERHEAD: usize = 96;

fn extract(nodes: &[Node], mut i: usize) -> Vec<GroundAction> {
    let mut plan = Vec::new();
    while let Some(p) = nodes[i].parent {
        plan.push(nodes[i].action.clone().expect("non-root node has an action"));
        i = p;
    }
    plan.reverse();
    plan
}

/// Finds a shortest plan. Ties on g are broken first-in first-out.
pub fn solve(task: &Task, generator: &Generator<'_>, limits: Limits) -> SearchResult {
    let start = Instant::now();
    let mut stats = SearchStats::default();
    let mut nodes: Vec<Node> = Vec::new();
    let mut best: HashMap<Rc<State>, (u32, bool)> = HashMap::new();
    let mut open: BinaryHeap<Reverse<(u32, usize)>> = BinaryHeap::new();
    let mut memory = 0usize;

    let root = Rc::new(task.init.clone());
    memory += root.approx_bytes() + NODE_OVERHEAD;
    best.insert(root.clone(), (0, false));
    nodes.push(Node { state: root, parent: None, action: None });
    open.push(Reverse((0, 0)));

    let finish = |outcome, mut stats: SearchStats| {
        stats.wall_time = start.elapsed();
        SearchResult { outcome, stats }
    };

    while let Some(Reverse((g, id))) = open.pop() {
        let state = nodes[id].state.clone();
        let entry = best.get_mut(&state).expect("queued states are recorded");
        if entry.1 || entry.0 < g {
            continue;
        }
        entry.1 = true;
        if goal_satisfied(&state, &task.goal) {
            return finish(Outcome::Plan(extract(&nodes, id)), stats);
        }
        if limits.time.is_some_and(|t| start.elapsed() >= t) {
            return finish(Outcome::LimitReached(Limit::Time), stats);
        }
        if limits.nodes.is_some_and(|n| stats.expansions >= n) {
            return finish(Outcome::LimitReached(Limit::Nodes), stats);
        }
        stats.expansions += 1;
        stats.expanded_g.push(g);
        let (succ, report) = generator.successors(&state);
        stats.per_expansion.push(report);
        for (action, next) in succ {
            stats.generated += 1;
            let ng = g + 1;
            let next = Rc::new(next);
            let bytes = next.approx_bytes() + NODE_OVERHEAD;
            match best.entry(next.clone()) {
                Entry::Occupied(mut e) => {
                    if e.get().0 <= ng {
                        continue;
                    }
                    e.insert((ng, false));
                }
                Entry::Vacant(e) => {
                    e.insert((ng, false));
                }
            }
            memory += bytes;
            nodes.push(Node { state: next, parent: Some(id), action: Some(action) });
            open.push(Reverse((ng, nodes.len() - 1)));
        }
        if limits.memory.is_some_and(|m| memory > m) {
            return finish(Outcome::LimitReached(Limit::Memory), stats);
        }
    }
    finish(Outcome::Unsolvable, stats)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationError {
    /// Action `index` is not applicable in the state reached before it.
    Inapplicable { index: usize, reason: Inapplicable },
    /// All actions applied; the goal does not hold afterwards.
    GoalNotReached { index: usize },
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationError::Inapplicable { index, reason } => write!(f, "step {index}: {reason}"),
            ValidationError::GoalNotReached { index } => write!(f, "step {index}: goal not satisfied"),
        }
    }
}

impl std::error::Error for ValidationError {}

/// Replays `plan` from the initial state. Returns its unit cost.
pub fn validate(task: &Task, plan: &[GroundAction]) -> Result<usize, ValidationError> {
    let mut state = task.init.clone();
    for (index, a) in plan.iter().enumerate() {
        let schema = task.schema(a);
        check_applicable(&state, schema, &a.args).map_err(|reason| ValidationError::Inapplicable { index, reason })?;
        state = apply(&state, schema, &a.args);
    }
    if goal_satisfied(&state, &task.goal) {
        Ok(plan.len())
    } else {
        Err(ValidationError::GoalNotReached { index: plan.len() })
    }
}

/// One `(name o1 ... on)` line per action, then the cost line.
pub fn format_plan(task: &Task, plan: &[GroundAction]) -> String {
    let mut out = String::new();
    for a in plan {
        out.push_str(&task.format_action(a));
        out.push('\n');
    }
    out.push_str(&format!("; cost = {} (unit cost)\n", plan.len()));
    out
}

#[derive(Debug, thiserror::Error)]
pub enum PlanParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// Reads a plan in the format written by [`format_plan`]. Lines starting
/// with `;` and blank lines are ignored.
pub fn parse_plan(task: &Task, text: &str) -> Result<Vec<GroundAction>, PlanParseError> {
    let mut plan = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with(';') {
            continue;
        }
        let err = |message: String| PlanParseError::Syntax { line: line_no, message };
        // IPC plans may prefix a step time, as in "0: (a b)"
        let line = line.split_once(':').filter(|(t, _)| t.trim().parse::<f64>().is_ok()).map_or(line, |(_, r)| r);
        let inner = line
            .trim()
            .strip_prefix('(')
            .and_then(|l| l.split(';').next())
            .and_then(|l| l.trim_end().strip_suffix(')'))
            .ok_or_else(|| err(format!("expected '(action args...)', got '{raw}'")))?;
        let words: Vec<String> = inner.split_whitespace().map(str::to_lowercase).collect();
        let Some((name, args)) = words.split_first() else {
            return Err(err("empty action".into()));
        };
        let schema = task
            .domain
            .schemas
            .iter()
            .position(|s| &s.name == name)
            .ok_or_else(|| err(format!("unknown action {name}")))?;
        let args = args
            .iter()
            .map(|a| {
                task.objects
                    .iter()
                    .position(|o| &o.name == a)
                    .map(|p| crate::model::ObjId(p as u32))
                    .ok_or_else(|| err(format!("unknown object {a}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        plan.push(GroundAction { schema, args });
    }
    Ok(plan)
}
