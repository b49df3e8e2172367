//! Numeric planning task representation.
//!
//! Symbols, objects and schema variables are referred to by index. Schema
//! variables are the positions in [`ActionSchema::params`]; a
//! [`Substitution`] is a partial map from those positions to objects.

mod eval;
mod state;

pub use eval::{
    apply, check_applicable, eval_expr, goal_satisfied, holds_constraint, holds_literal, is_applicable, Inapplicable,
};
pub use state::{GroundAtom, GroundFn, State};

use std::collections::BTreeSet;
use std::fmt;

use crate::interval::{ArithOp, CmpOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PredId(pub u32);

/// The built-in equality predicate occupies the first predicate slot of
/// every domain.
pub const EQUALITY: PredId = PredId(0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FuncId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PredicateKind {
    /// Declared in `:predicates`.
    User,
    /// Membership in a declared type (index into [`Domain::types`]).
    Type(usize),
    /// Built-in object equality, never stored in states.
    Equality,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PredicateSymbol {
    pub name: String,
    pub arity: usize,
    pub kind: PredicateKind,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FunctionSymbol {
    pub name: String,
    pub arity: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypeDecl {
    pub name: String,
    pub parent: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Object {
    pub name: String,
    pub ty: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Parameter {
    pub name: String,
    pub ty: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// Schema variable by parameter position.
    Var(usize),
    Obj(ObjId),
}

impl Term {
    fn resolve(self, rho: &Substitution) -> Term {
        match self {
            Term::Var(v) => rho.get(v).map_or(self, Term::Obj),
            t => t,
        }
    }

    pub fn ground(self, rho: &Substitution) -> Option<ObjId> {
        match self.resolve(rho) {
            Term::Obj(o) => Some(o),
            Term::Var(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub pred: PredId,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: PredId, args: Vec<Term>) -> Self {
        Atom { pred, args }
    }

    pub fn to_ground(&self, rho: &Substitution) -> Option<GroundAtom> {
        let args = self.args.iter().map(|t| t.ground(rho)).collect::<Option<Vec<_>>>()?;
        Some(GroundAtom::new(self.pred, args))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionTerm {
    pub func: FuncId,
    pub args: Vec<Term>,
}

impl FunctionTerm {
    pub fn new(func: FuncId, args: Vec<Term>) -> Self {
        FunctionTerm { func, args }
    }

    pub fn to_ground(&self, rho: &Substitution) -> Option<GroundFn> {
        let args = self.args.iter().map(|t| t.ground(rho)).collect::<Option<Vec<_>>>()?;
        Some(GroundFn::new(self.func, args))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(f64),
    Fn(FunctionTerm),
    Bin(ArithOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn bin(op: ArithOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Bin(op, Box::new(lhs), Box::new(rhs))
    }

    /// Every function term leaf, left to right.
    pub fn leaves(&self) -> Vec<&FunctionTerm> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a FunctionTerm>) {
        match self {
            Expr::Const(_) => {}
            Expr::Fn(f) => out.push(f),
            Expr::Bin(_, l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub lhs: Expr,
    pub cmp: CmpOp,
    pub rhs: Expr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AssignOp {
    Assign,
    Increase,
    Decrease,
    ScaleUp,
    ScaleDown,
}

impl AssignOp {
    pub fn keyword(self) -> &'static str {
        match self {
            AssignOp::Assign => "assign",
            AssignOp::Increase => "increase",
            AssignOp::Decrease => "decrease",
            AssignOp::ScaleUp => "scale-up",
            AssignOp::ScaleDown => "scale-down",
        }
    }

    pub fn is_additive(self) -> bool {
        matches!(self, AssignOp::Increase | AssignOp::Decrease)
    }

    pub fn is_multiplicative(self) -> bool {
        matches!(self, AssignOp::ScaleUp | AssignOp::ScaleDown)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericEffect {
    pub target: FunctionTerm,
    pub op: AssignOp,
    pub expr: Expr,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ActionSchema {
    pub name: String,
    pub params: Vec<Parameter>,
    pub pre_pos: Vec<Atom>,
    pub pre_neg: Vec<Atom>,
    pub pre_num: Vec<Constraint>,
    pub eff_add: Vec<Atom>,
    pub eff_del: Vec<Atom>,
    pub eff_num: Vec<NumericEffect>,
}

impl ActionSchema {
    pub fn arity(&self) -> usize {
        self.params.len()
    }

    /// Variables used anywhere in the schema body.
    pub fn body_vars(&self) -> BTreeSet<usize> {
        let mut vars = BTreeSet::new();
        for a in self.pre_pos.iter().chain(&self.pre_neg).chain(&self.eff_add).chain(&self.eff_del) {
            vars.extend(a.free_vars());
        }
        for c in &self.pre_num {
            vars.extend(c.free_vars());
        }
        for e in &self.eff_num {
            vars.extend(e.target.free_vars());
            vars.extend(e.expr.free_vars());
        }
        vars
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Domain {
    pub name: String,
    pub requirements: Vec<String>,
    pub types: Vec<TypeDecl>,
    pub predicates: Vec<PredicateSymbol>,
    pub functions: Vec<FunctionSymbol>,
    pub constants: Vec<Object>,
    pub schemas: Vec<ActionSchema>,
}

impl Domain {
    pub fn predicate(&self, id: PredId) -> &PredicateSymbol {
        &self.predicates[id.0 as usize]
    }

    pub fn function(&self, id: FuncId) -> &FunctionSymbol {
        &self.functions[id.0 as usize]
    }

    pub fn is_equality(&self, id: PredId) -> bool {
        id == EQUALITY
    }

    /// `ty` and all its ancestors.
    pub fn type_closure(&self, ty: usize) -> Vec<usize> {
        let mut out = vec![ty];
        let mut cur = ty;
        while let Some(p) = self.types[cur].parent {
            if out.contains(&p) {
                break;
            }
            out.push(p);
            cur = p;
        }
        out
    }

    pub fn type_predicate(&self, ty: usize) -> Option<PredId> {
        self.predicates.iter().position(|p| p.kind == PredicateKind::Type(ty)).map(|i| PredId(i as u32))
    }

    /// Predicates that never occur in any effect.
    pub fn static_predicates(&self) -> BTreeSet<PredId> {
        let mut fluent = BTreeSet::new();
        for s in &self.schemas {
            for a in s.eff_add.iter().chain(&s.eff_del) {
                fluent.insert(a.pred);
            }
        }
        (0..self.predicates.len() as u32).map(PredId).filter(|p| !fluent.contains(p)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Goal {
    /// Ground literals.
    pub literals: Vec<Literal>,
    /// Ground constraints.
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Task {
    pub domain: Domain,
    pub problem_name: String,
    /// Domain constants first, then problem objects.
    pub objects: Vec<Object>,
    pub init: State,
    pub goal: Goal,
    /// Raw `:metric` body, kept for reference only.
    pub metric: Option<String>,
}

impl Task {
    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o.0 as usize].name
    }

    pub fn object_ids(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len() as u32).map(ObjId)
    }

    pub fn schema(&self, ga: &GroundAction) -> &ActionSchema {
        &self.domain.schemas[ga.schema]
    }

    /// Objects admissible for a parameter under its declared type.
    pub fn objects_of_type(&self, ty: Option<usize>) -> Vec<ObjId> {
        match ty {
            None => self.object_ids().collect(),
            Some(t) => self
                .object_ids()
                .filter(|&o| match self.objects[o.0 as usize].ty {
                    Some(ot) => self.domain.type_closure(ot).contains(&t),
                    None => false,
                })
                .collect(),
        }
    }

    /// `(name o1 ... on)`.
    pub fn format_action(&self, ga: &GroundAction) -> String {
        let mut s = format!("({}", self.schema(ga).name);
        for &o in &ga.args {
            s.push(' ');
            s.push_str(self.object_name(o));
        }
        s.push(')');
        s
    }

    pub fn format_atom(&self, a: &GroundAtom) -> String {
        let mut s = format!("({}", self.domain.predicate(a.pred).name);
        for &o in a.args.iter() {
            s.push(' ');
            s.push_str(self.object_name(o));
        }
        s.push(')');
        s
    }

    pub fn format_fn(&self, f: &GroundFn) -> String {
        let mut s = format!("({}", self.domain.function(f.func).name);
        for &o in f.args.iter() {
            s.push(' ');
            s.push_str(self.object_name(o));
        }
        s.push(')');
        s
    }
}

/// A schema together with a total binding of its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundAction {
    pub schema: usize,
    pub args: Vec<ObjId>,
}

impl GroundAction {
    pub fn binding(&self) -> Substitution {
        Substitution::total(&self.args)
    }
}

/// Partial map from schema variable positions to objects.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Substitution {
    slots: Vec<Option<ObjId>>,
}

impl Substitution {
    pub fn empty() -> Self {
        Substitution::default()
    }

    pub fn total(objs: &[ObjId]) -> Self {
        Substitution { slots: objs.iter().copied().map(Some).collect() }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, ObjId)>>(pairs: I) -> Self {
        let mut s = Substitution::empty();
        for (v, o) in pairs {
            s.bind(v, o);
        }
        s
    }

    pub fn bind(&mut self, var: usize, obj: ObjId) {
        if self.slots.len() <= var {
            self.slots.resize(var + 1, None);
        }
        self.slots[var] = Some(obj);
    }

    pub fn unbind(&mut self, var: usize) {
        if let Some(s) = self.slots.get_mut(var) {
            *s = None;
        }
        // canonical form: no trailing unbound slots
        while self.slots.last() == Some(&None) {
            self.slots.pop();
        }
    }

    pub fn get(&self, var: usize) -> Option<ObjId> {
        self.slots.get(var).copied().flatten()
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.slots.iter().enumerate().filter_map(|(i, s)| s.map(|_| i))
    }

    pub fn len(&self) -> usize {
        self.slots.iter().filter(|s| s.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `self ⊆ other`: same image on every variable bound by `self`.
    pub fn is_subset(&self, other: &Substitution) -> bool {
        self.domain().all(|v| self.get(v) == other.get(v))
    }

    /// Union of two substitutions with disjoint domains.
    pub fn union(&self, other: &Substitution) -> Substitution {
        let mut out = self.clone();
        for v in other.domain() {
            debug_assert!(self.get(v).is_none(), "union of overlapping substitutions");
            out.bind(v, other.get(v).unwrap());
        }
        out
    }
}

/// Free variables and substitution for syntactic elements.
pub trait Syntax: Sized {
    fn substitute(&self, rho: &Substitution) -> Self;
    fn visit_vars(&self, f: &mut dyn FnMut(usize));

    fn free_vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.visit_vars(&mut |v| {
            out.insert(v);
        });
        out
    }

    /// Number of distinct free variables.
    fn arity(&self) -> usize {
        self.free_vars().len()
    }

    fn is_ground(&self) -> bool {
        self.arity() == 0
    }
}

impl Syntax for Term {
    fn substitute(&self, rho: &Substitution) -> Self {
        self.resolve(rho)
    }

    fn visit_vars(&self, f: &mut dyn FnMut(usize)) {
        if let Term::Var(v) = self {
            f(*v)
        }
    }
}

impl Syntax for Atom {
    fn substitute(&self, rho: &Substitution) -> Self {
        Atom { pred: self.pred, args: self.args.iter().map(|t| t.substitute(rho)).collect() }
    }

    fn visit_vars(&self, f: &mut dyn FnMut(usize)) {
        self.args.iter().for_each(|t| t.visit_vars(f));
    }
}

impl Syntax for Literal {
    fn substitute(&self, rho: &Substitution) -> Self {
        Literal { atom: self.atom.substitute(rho), positive: self.positive }
    }

    fn visit_vars(&self, f: &mut dyn FnMut(usize)) {
        self.atom.visit_vars(f)
    }
}

impl Syntax for FunctionTerm {
    fn substitute(&self, rho: &Substitution) -> Self {
        FunctionTerm { func: self.func, args: self.args.iter().map(|t| t.substitute(rho)).collect() }
    }

    fn visit_vars(&self, f: &mut dyn FnMut(usize)) {
        self.args.iter().for_each(|t| t.visit_vars(f));
    }
}

impl Syntax for Expr {
    fn substitute(&self, rho: &Substitution) -> Self {
        match self {
            Expr::Const(c) => Expr::Const(*c),
            Expr::Fn(t) => Expr::Fn(t.substitute(rho)),
            Expr::Bin(op, l, r) => Expr::bin(*op, l.substitute(rho), r.substitute(rho)),
        }
    }

    fn visit_vars(&self, f: &mut dyn FnMut(usize)) {
        match self {
            Expr::Const(_) => {}
            Expr::Fn(t) => t.visit_vars(f),
            Expr::Bin(_, l, r) => {
                l.visit_vars(f);
                r.visit_vars(f);
            }
        }
    }
}

impl Syntax for Constraint {
    fn substitute(&self, rho: &Substitution) -> Self {
        Constraint { lhs: self.lhs.substitute(rho), cmp: self.cmp, rhs: self.rhs.substitute(rho) }
    }

    fn visit_vars(&self, f: &mut dyn FnMut(usize)) {
        self.lhs.visit_vars(f);
        self.rhs.visit_vars(f);
    }
}

impl Syntax for NumericEffect {
    fn substitute(&self, rho: &Substitution) -> Self {
        NumericEffect { target: self.target.substitute(rho), op: self.op, expr: self.expr.substitute(rho) }
    }

    fn visit_vars(&self, f: &mut dyn FnMut(usize)) {
        self.target.visit_vars(f);
        self.expr.visit_vars(f);
    }
}

impl Syntax for ActionSchema {
    fn substitute(&self, rho: &Substitution) -> Self {
        ActionSchema {
            name: self.name.clone(),
            params: self.params.clone(),
            pre_pos: self.pre_pos.iter().map(|a| a.substitute(rho)).collect(),
            pre_neg: self.pre_neg.iter().map(|a| a.substitute(rho)).collect(),
            pre_num: self.pre_num.iter().map(|c| c.substitute(rho)).collect(),
            eff_add: self.eff_add.iter().map(|a| a.substitute(rho)).collect(),
            eff_del: self.eff_del.iter().map(|a| a.substitute(rho)).collect(),
            eff_num: self.eff_num.iter().map(|e| e.substitute(rho)).collect(),
        }
    }

    fn visit_vars(&self, f: &mut dyn FnMut(usize)) {
        for v in self.body_vars() {
            f(v)
        }
    }
}

impl fmt::Display for GroundAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}{:?}", self.schema, self.args.iter().map(|o| o.0).collect::<Vec<_>>())
    }
}
