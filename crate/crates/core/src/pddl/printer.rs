use std::fmt::Write;

use crate::model::{
    ActionSchema, Atom, Constraint, Domain, Expr, FunctionTerm, Literal, Object, Parameter, PredicateKind, Task, Term,
    EQUALITY,
};

struct Names<'a> {
    domain: &'a Domain,
    params: &'a [Parameter],
    objects: &'a [Object],
}

impl Names<'_> {
    fn term(&self, t: &Term) -> &str {
        match *t {
            Term::Var(v) => &self.params[v].name,
            Term::Obj(o) => &self.objects[o.0 as usize].name,
        }
    }

    fn call(&self, name: &str, args: &[Term]) -> String {
        let mut s = format!("({name}");
        for a in args {
            s.push(' ');
            s.push_str(self.term(a));
        }
        s.push(')');
        s
    }

    fn atom(&self, a: &Atom) -> String {
        let name = if a.pred == EQUALITY { "=" } else { self.domain.predicate(a.pred).name.as_str() };
        self.call(name, &a.args)
    }

    fn fterm(&self, f: &FunctionTerm) -> String {
        self.call(&self.domain.function(f.func).name, &f.args)
    }

    fn expr(&self, e: &Expr) -> String {
        match e {
            Expr::Const(c) => format!("{c}"),
            Expr::Fn(f) => self.fterm(f),
            Expr::Bin(op, l, r) => format!("({} {} {})", op.symbol(), self.expr(l), self.expr(r)),
        }
    }

    fn constraint(&self, c: &Constraint) -> String {
        format!("({} {} {})", c.cmp.symbol(), self.expr(&c.lhs), self.expr(&c.rhs))
    }
}

pub fn write_atom(domain: &Domain, params: &[Parameter], a: &Atom) -> String {
    Names { domain, params, objects: &domain.constants }.atom(a)
}

pub fn write_expr(domain: &Domain, params: &[Parameter], e: &Expr) -> String {
    Names { domain, params, objects: &domain.constants }.expr(e)
}

pub fn write_constraint(domain: &Domain, params: &[Parameter], c: &Constraint) -> String {
    Names { domain, params, objects: &domain.constants }.constraint(c)
}

pub fn write_ground_literal(task: &Task, l: &Literal) -> String {
    let a = Names { domain: &task.domain, params: &[], objects: &task.objects }.atom(&l.atom);
    if l.positive {
        a
    } else {
        format!("(not {a})")
    }
}

pub fn write_ground_constraint(task: &Task, c: &Constraint) -> String {
    Names { domain: &task.domain, params: &[], objects: &task.objects }.constraint(c)
}

fn typed(name: &str, ty: Option<usize>, domain: &Domain) -> String {
    match ty {
        Some(t) => format!("{name} - {}", domain.types[t].name),
        // a bare name would take the type of the next typed group
        None if !domain.types.is_empty() => format!("{name} - object"),
        None => name.to_string(),
    }
}

fn conjunction(parts: Vec<String>) -> String {
    match parts.len() {
        0 => "(and)".to_string(),
        1 => parts.into_iter().next().unwrap(),
        _ => format!("(and {})", parts.join(" ")),
    }
}

fn write_schema(out: &mut String, domain: &Domain, s: &ActionSchema) {
    let n = Names { domain, params: &s.params, objects: &domain.constants };
    let params: Vec<String> = s.params.iter().map(|p| typed(&p.name, p.ty, domain)).collect();
    let mut pre = Vec::new();
    for a in &s.pre_pos {
        if !matches!(domain.predicate(a.pred).kind, PredicateKind::Type(_)) {
            pre.push(n.atom(a));
        }
    }
    pre.extend(s.pre_neg.iter().map(|a| format!("(not {})", n.atom(a))));
    pre.extend(s.pre_num.iter().map(|c| n.constraint(c)));
    let mut eff: Vec<String> = s.eff_add.iter().map(|a| n.atom(a)).collect();
    eff.extend(s.eff_del.iter().map(|a| format!("(not {})", n.atom(a))));
    eff.extend(s.eff_num.iter().map(|e| format!("({} {} {})", e.op.keyword(), n.fterm(&e.target), n.expr(&e.expr))));
    let _ = writeln!(out, "  (:action {}", s.name);
    let _ = writeln!(out, "    :parameters ({})", params.join(" "));
    let _ = writeln!(out, "    :precondition {}", conjunction(pre));
    let _ = writeln!(out, "    :effect {})", conjunction(eff));
}

fn generic_params(arity: usize) -> String {
    (0..arity).map(|i| format!(" ?a{i}")).collect()
}

pub fn write_domain(d: &Domain) -> String {
    let mut out = format!("(define (domain {})\n", d.name);
    if !d.requirements.is_empty() {
        let _ = writeln!(out, "  (:requirements {})", d.requirements.join(" "));
    }
    if !d.types.is_empty() {
        let types: Vec<String> = d
            .types
            .iter()
            .map(|t| format!("{} - {}", t.name, t.parent.map_or("object", |p| d.types[p].name.as_str())))
            .collect();
        let _ = writeln!(out, "  (:types {})", types.join(" "));
    }
    if !d.constants.is_empty() {
        let cs: Vec<String> = d.constants.iter().map(|o| typed(&o.name, o.ty, d)).collect();
        let _ = writeln!(out, "  (:constants {})", cs.join(" "));
    }
    let preds: Vec<String> = d
        .predicates
        .iter()
        .filter(|p| p.kind == PredicateKind::User)
        .map(|p| format!("({}{})", p.name, generic_params(p.arity)))
        .collect();
    if !preds.is_empty() {
        let _ = writeln!(out, "  (:predicates {})", preds.join(" "));
    }
    if !d.functions.is_empty() {
        let fs: Vec<String> = d.functions.iter().map(|f| format!("({}{})", f.name, generic_params(f.arity))).collect();
        let _ = writeln!(out, "  (:functions {} - number)", fs.join(" "));
    }
    for s in &d.schemas {
        write_schema(&mut out, d, s);
    }
    out.push_str(")\n");
    out
}

pub fn write_problem(t: &Task) -> String {
    let d = &t.domain;
    let mut out = format!("(define (problem {})\n  (:domain {})\n", t.problem_name, d.name);
    let objs: Vec<String> = t.objects[d.constants.len()..].iter().map(|o| typed(&o.name, o.ty, d)).collect();
    if !objs.is_empty() {
        let _ = writeln!(out, "  (:objects {})", objs.join(" "));
    }
    out.push_str("  (:init");
    for a in t.init.atoms() {
        if d.predicate(a.pred).kind == PredicateKind::User {
            let _ = write!(out, "\n    {}", t.format_atom(a));
        }
    }
    for (f, v) in t.init.fluents() {
        let _ = write!(out, "\n    (= {} {v})", t.format_fn(f));
    }
    out.push_str(")\n");
    let mut goal: Vec<String> = t.goal.literals.iter().map(|l| write_ground_literal(t, l)).collect();
    goal.extend(t.goal.constraints.iter().map(|c| write_ground_constraint(t, c)));
    let _ = writeln!(out, "  (:goal {})", conjunction(goal));
    if let Some(m) = &t.metric {
        let _ = writeln!(out, "  (:metric {m})");
    }
    out.push_str(")\n");
    out
}
