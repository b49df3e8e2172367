//! Substitution consistency graphs.
//!
//! For a schema with parameters `x_1..x_k` and a state, the graph has one
//! partition per parameter and one vertex `x_i/o` per object. Two vertices
//! from different partitions are adjacent unless the partial binding they
//! form refutes some precondition element:
//!
//! * a positive literal whose partial grounding matches no atom of the state,
//! * a negative literal that becomes ground and true,
//! * (numeric generator only) a numeric precondition that the interval
//!   relaxation proves unsatisfiable for every completion of the binding.
//!
//! Elements mentioning at most one parameter are checked on vertices, which
//! is equivalent to removing all edges incident to a refuted vertex; elements
//! mentioning none are checked once for the whole graph.

use std::collections::HashMap;
use std::fmt::{self, Write};
use std::sync::OnceLock;

use crate::assign::AssignmentCache;
use crate::bitset::BitSet;
use crate::interval::Interval;
use crate::model::{
    ActionSchema, Atom, Constraint, Domain, Expr, GroundAtom, ObjId, PredId, State, Substitution, Syntax, Task, Term,
    EQUALITY,
};

/// Whether `pattern` matches `ground`: same predicate, and in every position
/// the pattern has a variable or the same object.
pub fn matches(pattern: &Atom, ground: &GroundAtom) -> bool {
    pattern.pred == ground.pred
        && pattern.args.len() == ground.args.len()
        && pattern.args.iter().zip(ground.args.iter()).all(|(t, o)| match t {
            Term::Var(_) => true,
            Term::Obj(p) => p == o,
        })
}

#[derive(Default)]
struct PredicateIndex {
    count: usize,
    // (position, object) -> sorted atom ordinals within the predicate
    postings: HashMap<(usize, ObjId), Vec<u32>>,
}

/// Per-state index from `(predicate, position, object)` to matching atoms.
#[derive(Default)]
pub struct AtomIndex {
    preds: HashMap<PredId, PredicateIndex>,
}

impl AtomIndex {
    pub fn build(state: &State) -> Self {
        let mut preds: HashMap<PredId, PredicateIndex> = HashMap::new();
        for atom in state.atoms() {
            let idx = preds.entry(atom.pred).or_default();
            let ord = idx.count as u32;
            idx.count += 1;
            for (pos, &o) in atom.args.iter().enumerate() {
                idx.postings.entry((pos, o)).or_default().push(ord);
            }
        }
        AtomIndex { preds }
    }

    /// Is there an atom in the state that `atom[rho]` matches?
    pub fn any_match(&self, atom: &Atom, rho: &Substitution) -> bool {
        if atom.pred == EQUALITY {
            return match (atom.args[0].ground(rho), atom.args[1].ground(rho)) {
                (Some(a), Some(b)) => a == b,
                _ => true,
            };
        }
        let Some(idx) = self.preds.get(&atom.pred) else {
            return false;
        };
        let mut lists: Vec<&[u32]> = Vec::with_capacity(atom.args.len());
        for (pos, t) in atom.args.iter().enumerate() {
            if let Some(o) = t.ground(rho) {
                match idx.postings.get(&(pos, o)) {
                    Some(l) => lists.push(l),
                    None => return false,
                }
            }
        }
        if lists.is_empty() {
            return idx.count > 0;
        }
        lists.sort_by_key(|l| l.len());
        let (first, rest) = lists.split_first().unwrap();
        first.iter().any(|id| rest.iter().all(|l| l.binary_search(id).is_ok()))
    }
}

/// Everything the graph construction reads from one state: the state, its
/// assignment sets and its atom index. Shared by all schemas.
pub struct StateContext<'a> {
    pub state: &'a State,
    pub assign: AssignmentCache<'a>,
    index: OnceLock<AtomIndex>,
}

impl<'a> StateContext<'a> {
    pub fn new(domain: &Domain, state: &'a State, degree: usize) -> Self {
        StateContext { state, assign: AssignmentCache::new(domain, state, degree), index: OnceLock::new() }
    }

    pub fn index(&self) -> &AtomIndex {
        self.index.get_or_init(|| AtomIndex::build(self.state))
    }
}

/// Interval of values `expr` can take under any completion of `rho`, using
/// assignment sets at the leaves.
pub fn relaxed_eval(expr: &Expr, rho: &Substitution, assign: &AssignmentCache<'_>) -> Interval {
    match expr {
        Expr::Const(c) => Interval::point(*c),
        Expr::Fn(term) => {
            let set = assign.get(term.func);
            let mut key: Vec<(usize, ObjId)> = Vec::with_capacity(term.args.len());
            for (pos, t) in term.args.iter().enumerate() {
                if key.len() == set.degree() {
                    // dropping bound positions only widens the interval
                    break;
                }
                if let Some(o) = t.ground(rho) {
                    key.push((pos, o));
                }
            }
            set.lookup(&key)
        }
        Expr::Bin(op, l, r) => relaxed_eval(l, rho, assign).arith(*op, &relaxed_eval(r, rho, assign)),
    }
}

/// True only if no completion of `rho` can satisfy `c`. Never true for a
/// satisfiable constraint.
pub fn relaxed_unsat(c: &Constraint, rho: &Substitution, assign: &AssignmentCache<'_>) -> bool {
    let lhs = relaxed_eval(&c.lhs, rho, assign);
    let rhs = relaxed_eval(&c.rhs, rho, assign);
    !lhs.compare(c.cmp, &rhs)
}

/// Which exclusion rule removed a vertex or an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exclusion {
    /// Positive literal with no match.
    Positive,
    /// Negative literal that holds as an atom.
    Negative,
    /// Numeric constraint refuted by the relaxation.
    Numeric,
}

impl fmt::Display for Exclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exclusion::Positive => "I+",
            Exclusion::Negative => "I-",
            Exclusion::Numeric => "I-delta",
        })
    }
}

#[derive(Clone, Copy)]
enum Element<'s> {
    Pos(&'s Atom),
    Neg(&'s Atom),
    Num(&'s Constraint),
}

impl Element<'_> {
    fn refuted(&self, rho: &Substitution, ctx: &StateContext<'_>) -> Option<Exclusion> {
        match *self {
            Element::Pos(a) => (!ctx.index().any_match(a, rho)).then_some(Exclusion::Positive),
            Element::Neg(a) => {
                let g = a.to_ground(rho)?;
                let holds = if g.pred == EQUALITY { g.args[0] == g.args[1] } else { ctx.state.contains(&g) };
                holds.then_some(Exclusion::Negative)
            }
            Element::Num(c) => relaxed_unsat(c, rho, &ctx.assign).then_some(Exclusion::Numeric),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct GraphOptions {
    /// Include numeric preconditions (the numeric generator). Without this
    /// the graph is the propositional one.
    pub numeric: bool,
    /// Record why vertices and edges were removed.
    pub trace: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub partition: usize,
    pub object: ObjId,
}

#[derive(Clone, Debug, Default)]
pub struct GraphTrace {
    pub global: Option<Exclusion>,
    pub vertices: Vec<(Vertex, Exclusion)>,
    pub edges: Vec<(Vertex, Vertex, Exclusion)>,
}

/// k-partite graph over surviving vertices with bitset adjacency.
#[derive(Clone, Debug)]
pub struct ConsistencyGraph {
    k: usize,
    /// Surviving objects per partition, ascending.
    partitions: Vec<Vec<ObjId>>,
    offsets: Vec<usize>,
    adjacency: Vec<BitSet>,
    masks: Vec<BitSet>,
    refuted: bool,
    trace: Option<GraphTrace>,
}

impl ConsistencyGraph {
    /// Builds a graph directly from partitions and an adjacency predicate.
    /// Pairs inside a partition are never adjacent.
    pub fn from_parts(partitions: Vec<Vec<ObjId>>, adjacent: impl Fn(Vertex, Vertex) -> bool) -> Self {
        let mut g = ConsistencyGraph::with_partitions(partitions, false, None);
        for i in 0..g.k {
            for j in i + 1..g.k {
                for (a, &oa) in g.partitions[i].clone().iter().enumerate() {
                    for (b, &ob) in g.partitions[j].clone().iter().enumerate() {
                        if adjacent(Vertex { partition: i, object: oa }, Vertex { partition: j, object: ob }) {
                            g.connect(g.offsets[i] + a, g.offsets[j] + b);
                        }
                    }
                }
            }
        }
        g
    }

    fn with_partitions(partitions: Vec<Vec<ObjId>>, refuted: bool, trace: Option<GraphTrace>) -> Self {
        let k = partitions.len();
        let mut offsets = Vec::with_capacity(k + 1);
        let mut n = 0;
        for p in &partitions {
            offsets.push(n);
            n += p.len();
        }
        offsets.push(n);
        let masks = (0..k)
            .map(|i| {
                let mut m = BitSet::new(n);
                m.insert_range(offsets[i], offsets[i + 1]);
                m
            })
            .collect();
        ConsistencyGraph { k, partitions, offsets, adjacency: vec![BitSet::new(n); n], masks, refuted, trace }
    }

    fn connect(&mut self, u: usize, v: usize) {
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets[self.k]
    }

    pub fn partition(&self, i: usize) -> &[ObjId] {
        &self.partitions[i]
    }

    pub fn partition_mask(&self, i: usize) -> &BitSet {
        &self.masks[i]
    }

    pub fn neighbours(&self, v: usize) -> &BitSet {
        &self.adjacency[v]
    }

    /// Global vertex id of the `idx`-th surviving vertex of partition `i`.
    pub fn vertex_id(&self, i: usize, idx: usize) -> usize {
        self.offsets[i] + idx
    }

    pub fn vertex(&self, id: usize) -> Vertex {
        let partition = self.offsets.partition_point(|&o| o <= id) - 1;
        Vertex { partition, object: self.partitions[partition][id - self.offsets[partition]] }
    }

    pub fn find(&self, v: Vertex) -> Option<usize> {
        let idx = self.partitions.get(v.partition)?.binary_search(&v.object).ok()?;
        Some(self.vertex_id(v.partition, idx))
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        match (self.find(u), self.find(v)) {
            (Some(a), Some(b)) => self.adjacency[a].contains(b),
            _ => false,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Some variable-free precondition element is refuted: no binding can
    /// be a candidate.
    pub fn is_refuted(&self) -> bool {
        self.refuted
    }

    pub fn trace(&self) -> Option<&GraphTrace> {
        self.trace.as_ref()
    }

    /// Text dump: surviving vertices, edges, and removed vertices and pairs
    /// with the rule that removed them (when traced).
    pub fn dump(&self, task: &Task, schema: &ActionSchema) -> String {
        let var = |p: usize| schema.params[p].name.as_str();
        let vx = |v: Vertex| format!("{}/{}", var(v.partition), task.object_name(v.object));
        let mut out = String::new();
        let _ = writeln!(out, "graph {} k={}", schema.name, self.k);
        if let Some(g) = self.trace.as_ref().and_then(|t| t.global) {
            let _ = writeln!(out, "refuted {g}");
        }
        for i in 0..self.k {
            for &o in &self.partitions[i] {
                let _ = writeln!(out, "vertex {} {}", var(i), task.object_name(o));
            }
        }
        for u in 0..self.vertex_count() {
            for v in self.adjacency[u].iter().filter(|&v| v > u) {
                let _ = writeln!(out, "edge {} {}", vx(self.vertex(u)), vx(self.vertex(v)));
            }
        }
        if let Some(t) = &self.trace {
            for (v, why) in &t.vertices {
                let _ = writeln!(out, "removed-vertex {} {}", vx(*v), why);
            }
            for (u, v, why) in &t.edges {
                let _ = writeln!(out, "removed-edge {} {} {}", vx(*u), vx(*v), why);
            }
        }
        out
    }
}

/// Builds the consistency graph of `schema` in the state behind `ctx`.
pub fn build_graph(task: &Task, schema: &ActionSchema, ctx: &StateContext<'_>, opts: GraphOptions) -> ConsistencyGraph {
    let k = schema.arity();
    let mut elements: Vec<(Element<'_>, Vec<usize>)> = Vec::new();
    for a in &schema.pre_pos {
        elements.push((Element::Pos(a), a.free_vars().into_iter().collect()));
    }
    for a in &schema.pre_neg {
        elements.push((Element::Neg(a), a.free_vars().into_iter().collect()));
    }
    if opts.numeric {
        for c in &schema.pre_num {
            elements.push((Element::Num(c), c.free_vars().into_iter().collect()));
        }
    }
    let mut trace = opts.trace.then(GraphTrace::default);

    let empty = Substitution::empty();
    let global = elements.iter().find_map(|(e, _)| e.refuted(&empty, ctx));
    if let Some(why) = global {
        if let Some(t) = trace.as_mut() {
            t.global = Some(why);
        }
        return ConsistencyGraph::with_partitions(vec![Vec::new(); k], true, trace);
    }

    let objects: Vec<ObjId> = task.object_ids().collect();
    let mut rho = Substitution::empty();
    let mut partitions = Vec::with_capacity(k);
    for i in 0..k {
        let relevant: Vec<Element<'_>> =
            elements.iter().filter(|(_, vars)| vars.contains(&i)).map(|(e, _)| *e).collect();
        let mut keep = Vec::new();
        for &o in &objects {
            rho.bind(i, o);
            match relevant.iter().find_map(|e| e.refuted(&rho, ctx)) {
                None => keep.push(o),
                Some(why) => {
                    if let Some(t) = trace.as_mut() {
                        t.vertices.push((Vertex { partition: i, object: o }, why));
                    }
                }
            }
        }
        rho.unbind(i);
        partitions.push(keep);
    }

    let mut g = ConsistencyGraph::with_partitions(partitions, false, trace);
    for i in 0..k {
        for j in i + 1..k {
            let relevant: Vec<Element<'_>> =
                elements.iter().filter(|(_, vars)| vars.contains(&i) && vars.contains(&j)).map(|(e, _)| *e).collect();
            for a in 0..g.partitions[i].len() {
                let oa = g.partitions[i][a];
                rho.bind(i, oa);
                for b in 0..g.partitions[j].len() {
                    let ob = g.partitions[j][b];
                    rho.bind(j, ob);
                    match relevant.iter().find_map(|e| e.refuted(&rho, ctx)) {
                        None => {
                            let (u, v) = (g.vertex_id(i, a), g.vertex_id(j, b));
                            g.connect(u, v);
                        }
                        Some(why) => {
                            if let Some(t) = g.trace.as_mut() {
                                t.edges.push((
                                    Vertex { partition: i, object: oa },
                                    Vertex { partition: j, object: ob },
                                    why,
                                ));
                            }
                        }
                    }
                }
                rho.unbind(j);
            }
            rho.unbind(i);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{ArithOp, CmpOp};
    use crate::model::{FuncId, FunctionTerm, GroundFn, Object, Parameter, PredicateKind, PredicateSymbol};
    use crate::model::{FunctionSymbol, Goal};

    const A: ObjId = ObjId(0);
    const B: ObjId = ObjId(1);
    const AT: PredId = PredId(1);
    const IN: PredId = PredId(2);
    const F: FuncId = FuncId(0);

    fn task(nobj: usize, init: State) -> Task {
        let mut domain = Domain {
            name: "t".into(),
            predicates: vec![
                PredicateSymbol { name: "=".into(), arity: 2, kind: PredicateKind::Equality },
                PredicateSymbol { name: "at".into(), arity: 2, kind: PredicateKind::User },
                PredicateSymbol { name: "in".into(), arity: 2, kind: PredicateKind::User },
            ],
            functions: vec![FunctionSymbol { name: "f".into(), arity: 1 }],
            ..Default::default()
        };
        domain.schemas.clear();
        Task {
            domain,
            problem_name: "p".into(),
            objects: (0..nobj).map(|i| Object { name: format!("o{i}"), ty: None }).collect(),
            init,
            goal: Goal::default(),
            metric: None,
        }
    }

    fn two_params() -> Vec<Parameter> {
        vec![Parameter { name: "?x".into(), ty: None }, Parameter { name: "?y".into(), ty: None }]
    }

    fn xy(pred: PredId) -> Atom {
        Atom::new(pred, vec![Term::Var(0), Term::Var(1)])
    }

    fn v(p: usize, o: ObjId) -> Vertex {
        Vertex { partition: p, object: o }
    }

    #[test]
    fn matching_examples() {
        let at_xb = Atom::new(AT, vec![Term::Var(0), Term::Obj(B)]);
        assert!(matches(&at_xb, &GroundAtom::new(AT, vec![A, B])));
        let at_ab = Atom::new(AT, vec![Term::Obj(A), Term::Obj(B)]);
        assert!(!matches(&at_ab, &GroundAtom::new(AT, vec![A, ObjId(2)])));
        assert!(!matches(&xy(AT), &GroundAtom::new(IN, vec![A, B])));
    }

    #[test]
    fn index_agrees_with_linear_matching() {
        let mut s = State::new();
        s.insert(GroundAtom::new(AT, vec![A, B]));
        s.insert(GroundAtom::new(AT, vec![B, B]));
        let idx = AtomIndex::build(&s);
        for x in [None, Some(A), Some(B), Some(ObjId(2))] {
            for y in [None, Some(A), Some(B)] {
                let mut rho = Substitution::empty();
                if let Some(o) = x {
                    rho.bind(0, o);
                }
                if let Some(o) = y {
                    rho.bind(1, o);
                }
                let pat = xy(AT).substitute(&rho);
                let linear = s.atoms().iter().any(|g| matches(&pat, g));
                assert_eq!(idx.any_match(&xy(AT), &rho), linear, "{x:?} {y:?}");
            }
        }
    }

    #[test]
    fn positive_literal_edges() {
        let mut s = State::new();
        s.insert(GroundAtom::new(AT, vec![A, B]));
        let t = task(2, s);
        let schema =
            ActionSchema { name: "m".into(), params: two_params(), pre_pos: vec![xy(AT)], ..Default::default() };
        let ctx = StateContext::new(&t.domain, &t.init, 2);
        let g = build_graph(&t, &schema, &ctx, GraphOptions::default());
        assert!(g.adjacent(v(0, A), v(1, B)));
        assert!(!g.adjacent(v(0, A), v(1, A)));
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn negative_literal_edges() {
        let mut s = State::new();
        s.insert(GroundAtom::new(AT, vec![A, B]));
        let t = task(2, s);
        let schema =
            ActionSchema { name: "m".into(), params: two_params(), pre_neg: vec![xy(AT)], ..Default::default() };
        let ctx = StateContext::new(&t.domain, &t.init, 2);
        let opts = GraphOptions { numeric: true, trace: true };
        let g = build_graph(&t, &schema, &ctx, opts);
        assert!(!g.adjacent(v(0, A), v(1, B)));
        assert!(g.adjacent(v(0, A), v(1, A)));
        assert_eq!(g.trace().unwrap().edges, vec![(v(0, A), v(1, B), Exclusion::Negative)]);
    }

    fn sum_le_3() -> Constraint {
        let fx = Expr::Fn(FunctionTerm::new(F, vec![Term::Var(0)]));
        let fy = Expr::Fn(FunctionTerm::new(F, vec![Term::Var(1)]));
        Constraint { lhs: Expr::bin(ArithOp::Add, fx, fy), cmp: CmpOp::Le, rhs: Expr::Const(3.0) }
    }

    #[test]
    fn numeric_edges() {
        let mut s = State::new();
        s.set_value(GroundFn::new(F, vec![A]), 1.0);
        s.set_value(GroundFn::new(F, vec![B]), 5.0);
        let t = task(2, s);
        let schema =
            ActionSchema { name: "m".into(), params: two_params(), pre_num: vec![sum_le_3()], ..Default::default() };
        let ctx = StateContext::new(&t.domain, &t.init, 2);
        let g = build_graph(&t, &schema, &ctx, GraphOptions { numeric: true, trace: false });
        assert!(!g.adjacent(v(0, A), v(1, B)));
        assert!(g.adjacent(v(0, A), v(1, A)));
        // the propositional graph keeps every pair
        let p = build_graph(&t, &schema, &ctx, GraphOptions::default());
        assert_eq!(p.edge_count(), 4);
    }

    #[test]
    fn relaxed_examples() {
        let mut s = State::new();
        s.set_value(GroundFn::new(F, vec![A]), 2.0);
        s.set_value(GroundFn::new(F, vec![B]), 4.0);
        let t = task(2, s);
        let cache = AssignmentCache::new(&t.domain, &t.init, 2);
        let fx1 = Expr::bin(ArithOp::Add, Expr::Fn(FunctionTerm::new(F, vec![Term::Var(0)])), Expr::Const(1.0));
        assert_eq!(relaxed_eval(&fx1, &Substitution::empty(), &cache), Interval::from_f64(3.0, 5.0));
        assert_eq!(relaxed_eval(&fx1, &Substitution::from_pairs([(0, A)]), &cache), Interval::point(3.0));

        let fx = Expr::Fn(FunctionTerm::new(F, vec![Term::Var(0)]));
        let ge = |v| Constraint { lhs: fx.clone(), cmp: CmpOp::Ge, rhs: Expr::Const(v) };
        assert!(relaxed_unsat(&ge(10.0), &Substitution::empty(), &cache));
        assert!(!relaxed_unsat(&ge(3.0), &Substitution::empty(), &cache));

        let empty_state = State::new();
        let empty_cache = AssignmentCache::new(&t.domain, &empty_state, 2);
        assert_eq!(relaxed_eval(&fx, &Substitution::empty(), &empty_cache), Interval::Empty);
        assert!(relaxed_unsat(&ge(0.0), &Substitution::empty(), &empty_cache));
    }

    #[test]
    fn unary_elements_prune_vertices() {
        let mut s = State::new();
        s.insert(GroundAtom::new(AT, vec![A, A]));
        let t = task(3, s);
        let at_xx = Atom::new(AT, vec![Term::Var(0), Term::Var(0)]);
        let schema =
            ActionSchema { name: "m".into(), params: two_params(), pre_pos: vec![at_xx], ..Default::default() };
        let ctx = StateContext::new(&t.domain, &t.init, 2);
        let g = build_graph(&t, &schema, &ctx, GraphOptions::default());
        assert_eq!(g.partition(0), &[A]);
        assert_eq!(g.partition(1).len(), 3);
    }

    #[test]
    fn ground_failure_refutes_graph() {
        let t = task(2, State::new());
        let ground = Atom::new(AT, vec![Term::Obj(A), Term::Obj(B)]);
        let schema =
            ActionSchema { name: "m".into(), params: two_params(), pre_pos: vec![ground], ..Default::default() };
        let ctx = StateContext::new(&t.domain, &t.init, 2);
        let g = build_graph(&t, &schema, &ctx, GraphOptions { numeric: true, trace: true });
        assert!(g.is_refuted());
        assert_eq!(g.vertex_count(), 0);
        assert!(g.dump(&t, &schema).contains("refuted I+"));
    }

    #[test]
    fn equality_constraint_on_edges() {
        let t = task(2, State::new());
        let eq = Atom::new(EQUALITY, vec![Term::Var(0), Term::Var(1)]);
        let schema = ActionSchema { name: "m".into(), params: two_params(), pre_neg: vec![eq], ..Default::default() };
        let ctx = StateContext::new(&t.domain, &t.init, 2);
        let g = build_graph(&t, &schema, &ctx, GraphOptions::default());
        assert!(g.adjacent(v(0, A), v(1, B)));
        assert!(!g.adjacent(v(0, A), v(1, A)));
    }

    #[test]
    fn dump_lists_vertices_and_edges() {
        let mut s = State::new();
        s.insert(GroundAtom::new(AT, vec![A, B]));
        let t = task(2, s);
        let schema =
            ActionSchema { name: "m".into(), params: two_params(), pre_pos: vec![xy(AT)], ..Default::default() };
        let ctx = StateContext::new(&t.domain, &t.init, 2);
        let g = build_graph(&t, &schema, &ctx, GraphOptions { numeric: true, trace: true });
        let d = g.dump(&t, &schema);
        assert!(d.contains("vertex ?x o0"));
        assert!(d.contains("edge ?x/o0 ?y/o1"));
        assert!(d.contains("removed-vertex ?x/o1 I+"));
    }
}
