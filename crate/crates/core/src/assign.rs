//! Numeric assignment sets.
//!
//! For a function symbol `F` of arity `n` and a state, the assignment set
//! maps every partial binding of at most `d` argument positions to the hull
//! of the values of all ground `F`-fluents consistent with that binding.
//! Only bindings that occur in some fluent are stored; a missing key stands
//! for the empty interval.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::interval::{ExtReal, Interval};
use crate::model::{Domain, FuncId, ObjId, State};

/// A partial binding of argument positions, sorted by position.
pub type PositionKey = Vec<(usize, ObjId)>;

#[derive(Clone, Debug)]
pub struct AssignmentSet {
    func: FuncId,
    arity: usize,
    degree: usize,
    table: HashMap<PositionKey, Interval>,
}

impl AssignmentSet {
    /// Builds the set from every `func` fluent in `state`, fixing up to
    /// `min(d, arity)` positions at a time.
    pub fn construct(func: FuncId, arity: usize, state: &State, d: usize) -> Self {
        let degree = d.min(arity);
        let mut table: HashMap<PositionKey, Interval> = HashMap::new();
        table.insert(Vec::new(), Interval::Empty);
        let mut key = Vec::with_capacity(degree);
        for (term, value) in state.fluents_of(func) {
            debug_assert_eq!(term.args.len(), arity);
            let v = ExtReal::finite(value);
            for size in 0..=degree {
                for_each_subset(arity, size, &mut |positions| {
                    key.clear();
                    key.extend(positions.iter().map(|&p| (p, term.args[p])));
                    table.entry(key.clone()).or_insert(Interval::Empty).extend(v);
                });
            }
        }
        AssignmentSet { func, arity, degree, table }
    }

    pub fn func(&self) -> FuncId {
        self.func
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of positions a lookup key may fix.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn entries(&self) -> usize {
        self.table.len()
    }

    /// Interval for a position binding. Panics if the key fixes more than
    /// [`degree`](Self::degree) positions.
    pub fn lookup(&self, key: &[(usize, ObjId)]) -> Interval {
        assert!(
            key.len() <= self.degree,
            "assignment set lookup fixes {} positions, degree is {}",
            key.len(),
            self.degree
        );
        debug_assert!(key.windows(2).all(|w| w[0].0 < w[1].0), "key must be sorted by position");
        self.table.get(key).copied().unwrap_or(Interval::Empty)
    }
}

/// Calls `f` with every `size`-subset of `0..n` in lexicographic order.
fn for_each_subset(n: usize, size: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        let need = size - cur.len();
        for p in start..=n - need {
            cur.push(p);
            rec(p + 1, n, size, cur, f);
            cur.pop();
        }
    }
    if size <= n {
        rec(0, n, size, &mut Vec::with_capacity(size), f);
    }
}

/// Lazily built assignment sets for one state, one per function symbol.
///
/// Initialization is single-winner, so the cache can be shared between
/// threads generating successors of the same state.
pub struct AssignmentCache<'a> {
    state: &'a State,
    arities: Vec<usize>,
    degree: usize,
    sets: Vec<OnceLock<AssignmentSet>>,
}

impl<'a> AssignmentCache<'a> {
    pub fn new(domain: &Domain, state: &'a State, degree: usize) -> Self {
        let arities: Vec<usize> = domain.functions.iter().map(|f| f.arity).collect();
        let sets = (0..arities.len()).map(|_| OnceLock::new()).collect();
        AssignmentCache { state, arities, degree, sets }
    }

    pub fn state(&self) -> &'a State {
        self.state
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, func: FuncId) -> &AssignmentSet {
        let i = func.0 as usize;
        self.sets[i].get_or_init(|| AssignmentSet::construct(func, self.arities[i], self.state, self.degree))
    }

    /// Number of sets built so far.
    pub fn built(&self) -> usize {
        self.sets.iter().filter(|s| s.get().is_some()).count()
    }
}
