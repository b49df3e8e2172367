use std::collections::{BTreeMap, BTreeSet};
use std::hash::{Hash, Hasher};

use super::{FuncId, ObjId, PredId};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundAtom {
    pub pred: PredId,
    pub args: Box<[ObjId]>,
}

impl GroundAtom {
    pub fn new(pred: PredId, args: Vec<ObjId>) -> Self {
        GroundAtom { pred, args: args.into_boxed_slice() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundFn {
    pub func: FuncId,
    pub args: Box<[ObjId]>,
}

impl GroundFn {
    pub fn new(func: FuncId, args: Vec<ObjId>) -> Self {
        GroundFn { func, args: args.into_boxed_slice() }
    }
}

/// True ground atoms plus the defined fluents.
///
/// Both collections are ordered, so two states are equal iff they hold the
/// same atoms and the same fluent values bit for bit.
#[derive(Clone, Debug, Default)]
pub struct State {
    atoms: BTreeSet<GroundAtom>,
    fluents: BTreeMap<GroundFn, f64>,
}

impl State {
    pub fn new() -> Self {
        State::default()
    }

    pub fn atoms(&self) -> &BTreeSet<GroundAtom> {
        &self.atoms
    }

    pub fn fluents(&self) -> &BTreeMap<GroundFn, f64> {
        &self.fluents
    }

    pub fn contains(&self, atom: &GroundAtom) -> bool {
        self.atoms.contains(atom)
    }

    pub fn insert(&mut self, atom: GroundAtom) -> bool {
        self.atoms.insert(atom)
    }

    pub fn remove(&mut self, atom: &GroundAtom) -> bool {
        self.atoms.remove(atom)
    }

    pub fn value(&self, f: &GroundFn) -> Option<f64> {
        self.fluents.get(f).copied()
    }

    /// Sets a fluent. Values must be finite.
    pub fn set_value(&mut self, f: GroundFn, v: f64) {
        assert!(v.is_finite(), "fluent values must be finite, got {v}");
        let v = if v == 0.0 { 0.0 } else { v };
        self.fluents.insert(f, v);
    }

    pub fn unset_value(&mut self, f: &GroundFn) -> Option<f64> {
        self.fluents.remove(f)
    }

    /// Ground fluents of one function symbol.
    pub fn fluents_of(&self, func: FuncId) -> impl Iterator<Item = (&GroundFn, f64)> + '_ {
        let start = GroundFn { func, args: Box::new([]) };
        self.fluents.range(start..).take_while(move |(k, _)| k.func == func).map(|(k, v)| (k, *v))
    }

    /// Ground atoms of one predicate.
    pub fn atoms_of(&self, pred: PredId) -> impl Iterator<Item = &GroundAtom> + '_ {
        let start = GroundAtom { pred, args: Box::new([]) };
        self.atoms.range(start..).take_while(move |a| a.pred == pred)
    }

    /// Rough heap footprint, used as a memory proxy by the search.
    pub fn approx_bytes(&self) -> usize {
        let atoms: usize = self.atoms.iter().map(|a| 40 + 4 * a.args.len()).sum();
        let fluents: usize = self.fluents.keys().map(|f| 48 + 4 * f.args.len()).sum();
        64 + atoms + fluents
    }
}

impl PartialEq for State {
    fn eq(&self, other: &Self) -> bool {
        self.atoms == other.atoms
            && self.fluents.len() == other.fluents.len()
            && self
                .fluents
                .iter()
                .zip(&other.fluents)
                .all(|((k1, v1), (k2, v2))| k1 == k2 && v1.to_bits() == v2.to_bits())
    }
}

impl Eq for State {}

impl Hash for State {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.atoms.hash(state);
        state.write_usize(self.fluents.len());
        for (k, v) in &self.fluents {
            k.hash(state);
            state.write_u64(v.to_bits());
        }
    }
}
