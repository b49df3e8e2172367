use std::collections::HashMap;

use super::sexpr::{is_number, read, SExpr};
use super::{ParseError, Span};
use crate::interval::{ArithOp, CmpOp};
use crate::model::{
    ActionSchema, AssignOp, Atom, Constraint, Domain, Expr, FuncId, FunctionSymbol, FunctionTerm, Goal, GroundAtom,
    GroundFn, Literal, NumericEffect, ObjId, Object, Parameter, PredId, PredicateKind, PredicateSymbol, State, Task,
    Term, TypeDecl, EQUALITY,
};

pub const SUPPORTED_REQUIREMENTS: [&str; 5] =
    [":strips", ":typing", ":negative-preconditions", ":equality", ":numeric-fluents"];

type Result<T> = std::result::Result<T, ParseError>;

struct Reader<'f> {
    file: &'f str,
}

impl Reader<'_> {
    fn err<T>(&self, span: Span, msg: impl Into<String>) -> Result<T> {
        Err(ParseError::new(self.file, span, msg))
    }

    fn list<'e>(&self, e: &'e SExpr, what: &str) -> Result<&'e [SExpr]> {
        match e.as_list() {
            Some(l) => Ok(l),
            None => self.err(e.span(), format!("expected {what}")),
        }
    }

    fn atom<'e>(&self, e: &'e SExpr, what: &str) -> Result<&'e str> {
        match e.as_atom() {
            Some(a) => Ok(a),
            None => self.err(e.span(), format!("expected {what}")),
        }
    }

    /// `(define (<kind> NAME) sections...)`.
    fn header<'e>(&self, e: &'e SExpr, kind: &str) -> Result<(String, &'e [SExpr])> {
        let items = self.list(e, "'(define ...)'")?;
        if items.first().and_then(SExpr::as_atom) != Some("define") {
            return self.err(e.span(), "expected '(define ...)'");
        }
        let Some(decl) = items.get(1) else {
            return self.err(e.span(), format!("missing '({kind} <name>)'"));
        };
        match decl.as_list() {
            Some([k, name]) if k.as_atom() == Some(kind) => {
                Ok((self.atom(name, &format!("{kind} name"))?.to_string(), &items[2..]))
            }
            _ => self.err(decl.span(), format!("expected '({kind} <name>)'")),
        }
    }

    /// `a b - t c` style list. Returns `(name, span, type)` triples.
    fn typed_list<'e>(&self, items: &'e [SExpr]) -> Result<Vec<(&'e str, Span, Option<&'e str>)>> {
        let mut out = Vec::new();
        let mut pending = 0;
        let mut i = 0;
        while i < items.len() {
            let e = &items[i];
            let a = self.atom(e, "name")?;
            if a == "-" {
                let Some(t) = items.get(i + 1) else {
                    return self.err(e.span(), "missing type after '-'");
                };
                if t.head() == Some("either") {
                    return self.err(t.span(), "'either' types are not supported");
                }
                let t = self.atom(t, "type name")?;
                let n = out.len();
                for entry in &mut out[n - pending..] {
                    let entry: &mut (&str, Span, Option<&str>) = entry;
                    entry.2 = Some(t);
                }
                if pending == 0 {
                    return self.err(e.span(), "'-' without preceding names");
                }
                pending = 0;
                i += 2;
            } else {
                out.push((a, e.span(), None));
                pending += 1;
                i += 1;
            }
        }
        Ok(out)
    }
}

/// Name resolution for terms: schema variables and objects.
struct Scope<'s> {
    vars: &'s HashMap<String, usize>,
    objects: &'s HashMap<String, ObjId>,
    /// Whether variables are allowed at all (false for goals and init).
    lifted: bool,
}

struct Symbols {
    preds: HashMap<String, PredId>,
    funcs: HashMap<String, FuncId>,
    types: HashMap<String, usize>,
}

impl Symbols {
    fn of(domain: &Domain) -> Self {
        let preds = domain
            .predicates
            .iter()
            .enumerate()
            .filter(|(_, p)| p.kind == PredicateKind::User)
            .map(|(i, p)| (p.name.clone(), PredId(i as u32)))
            .collect();
        let funcs = domain.functions.iter().enumerate().map(|(i, f)| (f.name.clone(), FuncId(i as u32))).collect();
        let types = domain.types.iter().enumerate().map(|(i, t)| (t.name.clone(), i)).collect();
        Symbols { preds, funcs, types }
    }
}

struct Body {
    pos: Vec<Atom>,
    neg: Vec<Atom>,
    num: Vec<Constraint>,
}

struct Effects {
    add: Vec<Atom>,
    del: Vec<Atom>,
    num: Vec<NumericEffect>,
}

fn cmp_op(s: &str) -> Option<CmpOp> {
    CmpOp::ALL.into_iter().find(|c| c.symbol() == s)
}

fn assign_op(s: &str) -> Option<AssignOp> {
    [AssignOp::Assign, AssignOp::Increase, AssignOp::Decrease, AssignOp::ScaleUp, AssignOp::ScaleDown]
        .into_iter()
        .find(|o| o.keyword() == s)
}

struct Elements<'a> {
    r: &'a Reader<'a>,
    domain: &'a Domain,
    syms: &'a Symbols,
}

impl Elements<'_> {
    fn term(&self, e: &SExpr, scope: &Scope<'_>) -> Result<Term> {
        let name = self.r.atom(e, "term")?;
        if name.starts_with('?') {
            if !scope.lifted {
                return self.r.err(e.span(), format!("free variable {name}: goals and initial states must be ground"));
            }
            return match scope.vars.get(name) {
                Some(&v) => Ok(Term::Var(v)),
                None => self.r.err(e.span(), format!("unbound variable {name}")),
            };
        }
        match scope.objects.get(name) {
            Some(&o) => Ok(Term::Obj(o)),
            None => self.r.err(e.span(), format!("unknown object {name}")),
        }
    }

    fn terms(&self, items: &[SExpr], scope: &Scope<'_>) -> Result<Vec<Term>> {
        items.iter().map(|t| self.term(t, scope)).collect()
    }

    fn atom(&self, e: &SExpr, scope: &Scope<'_>) -> Result<Atom> {
        let items = self.r.list(e, "atom")?;
        let Some(head) = items.first() else {
            return self.r.err(e.span(), "empty atom");
        };
        let name = self.r.atom(head, "predicate name")?;
        let args = self.terms(&items[1..], scope)?;
        if name == "=" {
            if args.len() != 2 {
                return self.r.err(e.span(), "'=' takes two arguments");
            }
            return Ok(Atom::new(EQUALITY, args));
        }
        let Some(&pred) = self.syms.preds.get(name) else {
            return self.r.err(head.span(), format!("unknown predicate {name}"));
        };
        let arity = self.domain.predicate(pred).arity;
        if arity != args.len() {
            return self.r.err(
                e.span(),
                format!("arity mismatch: predicate {name} takes {arity} arguments, got {}", args.len()),
            );
        }
        Ok(Atom::new(pred, args))
    }

    fn function_term(&self, e: &SExpr, scope: &Scope<'_>) -> Result<FunctionTerm> {
        let items = self.r.list(e, "function term")?;
        let Some(head) = items.first() else {
            return self.r.err(e.span(), "empty function term");
        };
        let name = self.r.atom(head, "function name")?;
        let Some(&func) = self.syms.funcs.get(name) else {
            return self.r.err(head.span(), format!("unknown function {name}"));
        };
        let args = self.terms(&items[1..], scope)?;
        let arity = self.domain.function(func).arity;
        if arity != args.len() {
            return self
                .r
                .err(e.span(), format!("arity mismatch: function {name} takes {arity} arguments, got {}", args.len()));
        }
        Ok(FunctionTerm::new(func, args))
    }

    fn expr(&self, e: &SExpr, scope: &Scope<'_>) -> Result<Expr> {
        if let Some(a) = e.as_atom() {
            if is_number(a) {
                return Ok(Expr::Const(a.parse().expect("numeric token")));
            }
            return self.r.err(e.span(), format!("expected numeric expression, found '{a}'"));
        }
        let items = e.as_list().unwrap();
        let op = match e.head() {
            Some("+") => ArithOp::Add,
            Some("-") => ArithOp::Sub,
            Some("*") => ArithOp::Mul,
            Some("/") => ArithOp::Div,
            _ => return Ok(Expr::Fn(self.function_term(e, scope)?)),
        };
        let args: Vec<Expr> = items[1..].iter().map(|a| self.expr(a, scope)).collect::<Result<_>>()?;
        let n = args.len();
        let bad = match op {
            ArithOp::Div => n != 2,
            ArithOp::Sub => n == 0,
            _ => n == 0,
        };
        if bad {
            return self.r.err(e.span(), format!("wrong number of operands for '{}'", op.symbol()));
        }
        let mut it = args.into_iter();
        let first = it.next().unwrap();
        if n == 1 {
            return Ok(match op {
                ArithOp::Sub => Expr::bin(ArithOp::Sub, Expr::Const(0.0), first),
                _ => first,
            });
        }
        Ok(it.fold(first, |acc, x| Expr::bin(op, acc, x)))
    }

    /// Conjunctive condition: literals, equalities and comparisons.
    fn condition(&self, e: &SExpr, scope: &Scope<'_>, out: &mut Body) -> Result<()> {
        let items = self.r.list(e, "condition")?;
        let Some(head) = e.head() else {
            if items.is_empty() {
                return Ok(());
            }
            return self.r.err(e.span(), "expected condition");
        };
        match head {
            "and" => {
                for c in &items[1..] {
                    self.condition(c, scope, out)?;
                }
            }
            "not" => {
                let [_, inner] = items else {
                    return self.r.err(e.span(), "'not' takes one argument");
                };
                if inner.head().is_some_and(|h| cmp_op(h).is_some() && h != "=") {
                    return self.r.err(inner.span(), "negated comparisons are not supported");
                }
                if inner.head() == Some("=") && !self.is_term_equality(inner) {
                    return self.r.err(inner.span(), "negated comparisons are not supported");
                }
                out.neg.push(self.atom(inner, scope)?);
            }
            "or" | "imply" | "forall" | "exists" | "when" => {
                return self.r.err(e.span(), format!("'{head}' conditions are not supported"));
            }
            _ if cmp_op(head).is_some() => {
                if head == "=" && self.is_term_equality(e) {
                    out.pos.push(self.atom(e, scope)?);
                    return Ok(());
                }
                let [_, l, r] = items else {
                    return self.r.err(e.span(), format!("'{head}' takes two arguments"));
                };
                let lhs = self.expr(l, scope)?;
                let rhs = self.expr(r, scope)?;
                out.num.push(Constraint { lhs, cmp: cmp_op(head).unwrap(), rhs });
            }
            _ => out.pos.push(self.atom(e, scope)?),
        }
        Ok(())
    }

    /// `(= a b)` with two bare non-numeric symbols compares objects.
    fn is_term_equality(&self, e: &SExpr) -> bool {
        match e.as_list() {
            Some([_, a, b]) => [a, b].iter().all(|x| x.as_atom().is_some_and(|s| !is_number(s))),
            _ => false,
        }
    }

    fn effect(&self, e: &SExpr, scope: &Scope<'_>, out: &mut Effects) -> Result<()> {
        let items = self.r.list(e, "effect")?;
        let Some(head) = e.head() else {
            if items.is_empty() {
                return Ok(());
            }
            return self.r.err(e.span(), "expected effect");
        };
        match head {
            "and" => {
                for c in &items[1..] {
                    self.effect(c, scope, out)?;
                }
            }
            "not" => {
                let [_, inner] = items else {
                    return self.r.err(e.span(), "'not' takes one argument");
                };
                let a = self.atom(inner, scope)?;
                if a.pred == EQUALITY {
                    return self.r.err(inner.span(), "equality cannot be an effect");
                }
                out.del.push(a);
            }
            "forall" | "when" => return self.r.err(e.span(), format!("'{head}' effects are not supported")),
            _ => {
                if let Some(op) = assign_op(head) {
                    let [_, target, value] = items else {
                        return self.r.err(e.span(), format!("'{head}' takes two arguments"));
                    };
                    let target = self.function_term(target, scope)?;
                    let expr = self.expr(value, scope)?;
                    out.num.push(NumericEffect { target, op, expr });
                } else {
                    let a = self.atom(e, scope)?;
                    if a.pred == EQUALITY {
                        return self.r.err(e.span(), "equality cannot be an effect");
                    }
                    out.add.push(a);
                }
            }
        }
        Ok(())
    }
}

pub fn parse_domain(text: &str) -> Result<Domain> {
    parse_domain_from(text, "domain")
}

pub fn parse_domain_from(text: &str, file: &str) -> Result<Domain> {
    let r = Reader { file };
    let root = read(text, file)?;
    let (name, sections) = r.header(&root, "domain")?;
    let mut domain = Domain { name, ..Default::default() };
    domain.predicates.push(PredicateSymbol { name: "=".into(), arity: 2, kind: PredicateKind::Equality });

    let mut by_key: HashMap<&str, &SExpr> = HashMap::new();
    let mut actions = Vec::new();
    for s in sections {
        let key = match s.head() {
            Some(k) if k.starts_with(':') => k,
            _ => return r.err(s.span(), "expected a ':section'"),
        };
        match key {
            ":action" => actions.push(s),
            ":requirements" | ":types" | ":constants" | ":predicates" | ":functions" => {
                if by_key.insert(key, s).is_some() {
                    return r.err(s.span(), format!("duplicate {key} section"));
                }
            }
            _ => return r.err(s.span(), format!("unsupported section {key}")),
        }
    }
    let body = |k: &str| by_key.get(k).map(|s| &s.as_list().unwrap()[1..]);

    if let Some(reqs) = body(":requirements") {
        for q in reqs {
            let q = r.atom(q, "requirement")?;
            if !SUPPORTED_REQUIREMENTS.contains(&q) {
                return r.err(by_key[":requirements"].span(), format!("unsupported requirement {q}"));
            }
            domain.requirements.push(q.to_string());
        }
    }

    if let Some(types) = body(":types") {
        let entries = r.typed_list(types)?;
        let mut index: HashMap<String, usize> = HashMap::new();
        fn declare(index: &mut HashMap<String, usize>, name: &str, domain: &mut Domain) -> usize {
            *index.entry(name.to_string()).or_insert_with(|| {
                domain.types.push(TypeDecl { name: name.to_string(), parent: None });
                domain.types.len() - 1
            })
        }
        let mut parents = Vec::new();
        for (name, span, _) in &entries {
            if *name == "object" {
                continue;
            }
            if name.starts_with('?') {
                return r.err(*span, format!("invalid type name {name}"));
            }
            declare(&mut index, name, &mut domain);
        }
        for (name, _, parent) in &entries {
            if let Some(p) = parent.filter(|p| *p != "object") {
                let pi = declare(&mut index, p, &mut domain);
                if *name != "object" {
                    parents.push((index[*name], pi));
                }
            }
        }
        for (child, parent) in parents {
            domain.types[child].parent = Some(parent);
        }
        for i in 0..domain.types.len() {
            let mut cur = domain.types[i].parent;
            for _ in 0..domain.types.len() {
                match cur {
                    Some(p) if p == i => {
                        let name = &domain.types[i].name;
                        return r.err(by_key[":types"].span(), format!("cyclic type hierarchy at {name}"));
                    }
                    Some(p) => cur = domain.types[p].parent,
                    None => break,
                }
            }
        }
        for i in 0..domain.types.len() {
            let name = domain.types[i].name.clone();
            domain.predicates.push(PredicateSymbol { name, arity: 1, kind: PredicateKind::Type(i) });
        }
    }
    let mut syms = Symbols::of(&domain);

    let mut objects: HashMap<String, ObjId> = HashMap::new();
    if let Some(cs) = body(":constants") {
        for (name, span, ty) in r.typed_list(cs)? {
            let ty = resolve_type(&r, &syms, ty, span)?;
            if objects.insert(name.to_string(), ObjId(domain.constants.len() as u32)).is_some() {
                return r.err(span, format!("duplicate constant {name}"));
            }
            domain.constants.push(Object { name: name.to_string(), ty });
        }
    }

    if let Some(ps) = body(":predicates") {
        for p in ps {
            let items = r.list(p, "predicate declaration")?;
            let Some(head) = items.first() else {
                return r.err(p.span(), "empty predicate declaration");
            };
            let name = r.atom(head, "predicate name")?;
            if name == "=" {
                return r.err(head.span(), "'=' is built in");
            }
            let params = r.typed_list(&items[1..])?;
            if syms.preds.contains_key(name) {
                return r.err(head.span(), format!("duplicate predicate {name}"));
            }
            for (_, span, ty) in &params {
                resolve_type(&r, &syms, *ty, *span)?;
            }
            syms.preds.insert(name.to_string(), PredId(domain.predicates.len() as u32));
            domain.predicates.push(PredicateSymbol {
                name: name.to_string(),
                arity: params.len(),
                kind: PredicateKind::User,
            });
        }
    }

    if let Some(fs) = body(":functions") {
        let mut i = 0;
        while i < fs.len() {
            let f = &fs[i];
            if f.as_atom() == Some("-") {
                match fs.get(i + 1).and_then(SExpr::as_atom) {
                    Some("number") => {
                        i += 2;
                        continue;
                    }
                    _ => return r.err(f.span(), "functions must have type number"),
                }
            }
            let items = r.list(f, "function declaration")?;
            let Some(head) = items.first() else {
                return r.err(f.span(), "empty function declaration");
            };
            let name = r.atom(head, "function name")?;
            let params = r.typed_list(&items[1..])?;
            if syms.funcs.contains_key(name) {
                return r.err(head.span(), format!("duplicate function {name}"));
            }
            syms.funcs.insert(name.to_string(), FuncId(domain.functions.len() as u32));
            domain.functions.push(FunctionSymbol { name: name.to_string(), arity: params.len() });
            i += 1;
        }
    }

    for a in actions {
        let schema = parse_action(&r, a, &domain, &syms, &objects)?;
        if domain.schemas.iter().any(|s| s.name == schema.name) {
            return r.err(a.span(), format!("duplicate action {}", schema.name));
        }
        domain.schemas.push(schema);
    }
    Ok(domain)
}

fn resolve_type(r: &Reader<'_>, syms: &Symbols, ty: Option<&str>, span: Span) -> Result<Option<usize>> {
    match ty {
        None | Some("object") => Ok(None),
        Some(t) => match syms.types.get(t) {
            Some(&i) => Ok(Some(i)),
            None => r.err(span, format!("unknown type {t}")),
        },
    }
}

fn parse_action(
    r: &Reader<'_>,
    a: &SExpr,
    domain: &Domain,
    syms: &Symbols,
    objects: &HashMap<String, ObjId>,
) -> Result<ActionSchema> {
    let items = a.as_list().unwrap();
    let Some(name) = items.get(1).and_then(SExpr::as_atom) else {
        return r.err(a.span(), "missing action name");
    };
    let mut schema = ActionSchema { name: name.to_string(), ..Default::default() };
    let mut fields: HashMap<&str, &SExpr> = HashMap::new();
    let mut rest = &items[2..];
    while let [k, v, tail @ ..] = rest {
        let key = r.atom(k, "action field")?;
        if !matches!(key, ":parameters" | ":precondition" | ":effect") {
            return r.err(k.span(), format!("unsupported action field {key}"));
        }
        if fields.insert(key, v).is_some() {
            return r.err(k.span(), format!("duplicate {key}"));
        }
        rest = tail;
    }
    if let [k] = rest {
        return r.err(k.span(), "action field without value");
    }

    let mut vars = HashMap::new();
    if let Some(p) = fields.get(":parameters") {
        for (v, span, ty) in r.typed_list(r.list(p, "parameter list")?)? {
            if !v.starts_with('?') {
                return r.err(span, format!("parameter {v} must start with '?'"));
            }
            if vars.insert(v.to_string(), schema.params.len()).is_some() {
                return r.err(span, format!("duplicate parameter {v}"));
            }
            let ty = resolve_type(r, syms, ty, span)?;
            schema.params.push(Parameter { name: v.to_string(), ty });
        }
    }
    for (i, p) in schema.params.iter().enumerate() {
        if let Some(t) = p.ty {
            let pred = domain.type_predicate(t).expect("type predicate");
            schema.pre_pos.push(Atom::new(pred, vec![Term::Var(i)]));
        }
    }

    let el = Elements { r, domain, syms };
    let scope = Scope { vars: &vars, objects, lifted: true };
    if let Some(pre) = fields.get(":precondition") {
        let mut body = Body { pos: std::mem::take(&mut schema.pre_pos), neg: Vec::new(), num: Vec::new() };
        el.condition(pre, &scope, &mut body)?;
        schema.pre_pos = body.pos;
        schema.pre_neg = body.neg;
        schema.pre_num = body.num;
    }
    if let Some(eff) = fields.get(":effect") {
        let mut effs = Effects { add: Vec::new(), del: Vec::new(), num: Vec::new() };
        el.effect(eff, &scope, &mut effs)?;
        schema.eff_add = effs.add;
        schema.eff_del = effs.del;
        schema.eff_num = effs.num;
    }
    Ok(schema)
}

pub fn parse_problem(text: &str, domain: Domain) -> Result<Task> {
    parse_problem_from(text, "problem", domain)
}

pub fn parse_problem_from(text: &str, file: &str, domain: Domain) -> Result<Task> {
    let r = Reader { file };
    let root = read(text, file)?;
    let (problem_name, sections) = r.header(&root, "problem")?;
    let syms = Symbols::of(&domain);

    let mut by_key: HashMap<&str, &SExpr> = HashMap::new();
    for s in sections {
        let key = match s.head() {
            Some(k) if k.starts_with(':') => k,
            _ => return r.err(s.span(), "expected a ':section'"),
        };
        if !matches!(key, ":domain" | ":requirements" | ":objects" | ":init" | ":goal" | ":metric") {
            return r.err(s.span(), format!("unsupported section {key}"));
        }
        if by_key.insert(key, s).is_some() {
            return r.err(s.span(), format!("duplicate {key} section"));
        }
    }
    let body = |k: &str| by_key.get(k).map(|s| &s.as_list().unwrap()[1..]);

    match body(":domain") {
        Some([d]) => {
            let d = r.atom(d, "domain name")?;
            if d != domain.name {
                return r.err(by_key[":domain"].span(), format!("problem is for domain {d}, not {}", domain.name));
            }
        }
        Some(_) => return r.err(by_key[":domain"].span(), "expected '(:domain <name>)'"),
        None => return r.err(root.span(), "missing :domain section"),
    }
    if let Some(reqs) = body(":requirements") {
        for q in reqs {
            let q = r.atom(q, "requirement")?;
            if !SUPPORTED_REQUIREMENTS.contains(&q) {
                return r.err(by_key[":requirements"].span(), format!("unsupported requirement {q}"));
            }
        }
    }

    let mut objects = domain.constants.clone();
    let mut names: HashMap<String, ObjId> =
        objects.iter().enumerate().map(|(i, o)| (o.name.clone(), ObjId(i as u32))).collect();
    if let Some(os) = body(":objects") {
        for (name, span, ty) in r.typed_list(os)? {
            let ty = resolve_type(&r, &syms, ty, span)?;
            if names.insert(name.to_string(), ObjId(objects.len() as u32)).is_some() {
                return r.err(span, format!("duplicate object {name}"));
            }
            objects.push(Object { name: name.to_string(), ty });
        }
    }

    let no_vars = HashMap::new();
    let scope = Scope { vars: &no_vars, objects: &names, lifted: false };
    let el = Elements { r: &r, domain: &domain, syms: &syms };
    let ground_args = |terms: &[Term]| -> Vec<ObjId> {
        terms.iter().map(|t| if let Term::Obj(o) = t { *o } else { unreachable!("ground scope") }).collect()
    };

    let mut init = State::new();
    for f in body(":init").unwrap_or(&[]) {
        match f.head() {
            Some("=") => {
                let [_, target, value] = f.as_list().unwrap() else {
                    return r.err(f.span(), "'=' takes two arguments");
                };
                let term = el.function_term(target, &scope)?;
                let v = match value.as_atom() {
                    Some(s) if is_number(s) => s.parse::<f64>().expect("numeric token"),
                    _ => return r.err(value.span(), "initial fluent values must be numbers"),
                };
                let g = GroundFn::new(term.func, ground_args(&term.args));
                if init.value(&g).is_some() {
                    return r.err(f.span(), "fluent assigned twice");
                }
                init.set_value(g, v);
            }
            Some("not") => return r.err(f.span(), "negative literals are not allowed in the initial state"),
            _ => {
                let a = el.atom(f, &scope)?;
                if a.pred == EQUALITY {
                    return r.err(f.span(), "equality cannot appear in the initial state");
                }
                init.insert(GroundAtom::new(a.pred, ground_args(&a.args)));
            }
        }
    }
    for (o, obj) in objects.iter().enumerate() {
        if let Some(t) = obj.ty {
            for anc in domain.type_closure(t) {
                let pred = domain.type_predicate(anc).expect("type predicate");
                init.insert(GroundAtom::new(pred, vec![ObjId(o as u32)]));
            }
        }
    }

    let mut goal = Goal::default();
    if let Some(g) = by_key.get(":goal") {
        let items = g.as_list().unwrap();
        let [_, cond] = items else {
            return r.err(g.span(), "expected '(:goal <condition>)'");
        };
        let mut b = Body { pos: Vec::new(), neg: Vec::new(), num: Vec::new() };
        el.condition(cond, &scope, &mut b)?;
        goal.literals.extend(b.pos.into_iter().map(|atom| Literal { atom, positive: true }));
        goal.literals.extend(b.neg.into_iter().map(|atom| Literal { atom, positive: false }));
        goal.constraints = b.num;
    } else {
        return r.err(root.span(), "missing :goal section");
    }

    let metric = body(":metric").map(|m| m.iter().map(SExpr::render).collect::<Vec<_>>().join(" "));
    Ok(Task { domain, problem_name, objects, init, goal, metric })
}
