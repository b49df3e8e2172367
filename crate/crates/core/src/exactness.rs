//! Static check for the arity conditions under which the numeric graph's
//! cliques are exactly the bindings whose preconditions hold.
//!
//! Every precondition literal and numeric constraint must mention at most
//! two schema variables, and every function term inside a constraint must
//! be resolvable by assignment-set lookups of the configured degree, which
//! means its function symbol has arity at most that degree.

use std::fmt;

use crate::model::{AssignOp, Domain, Expr, Syntax};
use crate::pddl::{write_atom, write_constraint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub schema: String,
    /// Rendered offending element.
    pub element: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub violations: Vec<Violation>,
    /// Effect forms that the final filter may reject even when the
    /// precondition part is exact.
    pub effect_notes: Vec<Violation>,
}

impl ExactnessReport {
    pub fn guaranteed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ExactnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.guaranteed() {
            writeln!(f, "exactness guaranteed")?;
        }
        for v in &self.violations {
            writeln!(f, "exactness NOT guaranteed: {}/{} ({})", v.schema, v.element, v.reason)?;
        }
        for v in &self.effect_notes {
            writeln!(f, "note: {}/{} ({})", v.schema, v.element, v.reason)?;
        }
        Ok(())
    }
}

fn contains_division(e: &Expr) -> bool {
    match e {
        Expr::Bin(op, l, r) => *op == crate::interval::ArithOp::Div || contains_division(l) || contains_division(r),
        _ => false,
    }
}

pub fn check(domain: &Domain, degree: usize) -> ExactnessReport {
    let mut violations = Vec::new();
    let mut effect_notes = Vec::new();
    for s in &domain.schemas {
        let push = |out: &mut Vec<Violation>, element: String, reason: String| {
            out.push(Violation { schema: s.name.clone(), element, reason });
        };
        for a in s.pre_pos.iter().chain(&s.pre_neg) {
            let n = a.arity();
            if n > 2 {
                push(&mut violations, write_atom(domain, &s.params, a), format!("literal over {n} variables"));
            }
        }
        for c in &s.pre_num {
            let text = write_constraint(domain, &s.params, c);
            let n = c.arity();
            if n > 2 {
                push(&mut violations, text.clone(), format!("constraint over {n} variables"));
            }
            let mut wide: Vec<&str> = Vec::new();
            for leaf in c.lhs.leaves().into_iter().chain(c.rhs.leaves()) {
                let sym = domain.function(leaf.func);
                if sym.arity > degree && !wide.contains(&sym.name.as_str()) {
                    wide.push(&sym.name);
                }
            }
            for name in wide {
                push(&mut violations, text.clone(), format!("function {name} has arity above degree {degree}"));
            }
        }
        for (i, e) in s.eff_num.iter().enumerate() {
            let render = || format!("effect {}", i + 1);
            if e.op == AssignOp::ScaleDown || contains_division(&e.expr) {
                push(&mut effect_notes, render(), "may divide by zero".into());
            }
            let conflicting = s.eff_num.iter().enumerate().any(|(j, o)| {
                j != i
                    && o.target.func == e.target.func
                    && !(o.op.is_additive() && e.op.is_additive())
                    && !(o.op.is_multiplicative() && e.op.is_multiplicative())
            });
            if conflicting && s.eff_num.iter().position(|o| o.target.func == e.target.func) == Some(i) {
                let name = &domain.function(e.target.func).name;
                push(&mut effect_notes, render(), format!("effects on {name} may conflict"));
            }
        }
    }
    ExactnessReport { violations, effect_notes }
}
