//! k-clique enumeration in k-partite consistency graphs.
//!
//! Depth-first over partitions, smallest partition first. The candidate set
//! at each depth is the intersection of the neighbourhoods of the vertices
//! chosen so far; a branch is abandoned as soon as some later partition has
//! no candidate left.

use crate::bitset::BitSet;
use crate::graph::ConsistencyGraph;
use crate::model::ObjId;

struct Frame {
    candidates: Vec<usize>,
    next: usize,
}

/// Resumable stream of cliques. Each item holds one object per partition,
/// indexed by partition.
pub struct Cliques<'g> {
    g: &'g ConsistencyGraph,
    order: Vec<usize>,
    running: Vec<BitSet>,
    stack: Vec<Frame>,
    chosen: Vec<usize>,
    state: Phase,
}

#[derive(PartialEq)]
enum Phase {
    Fresh,
    Running,
    Done,
}

impl<'g> Cliques<'g> {
    pub fn new(g: &'g ConsistencyGraph) -> Self {
        let mut order: Vec<usize> = (0..g.k()).collect();
        order.sort_by_key(|&i| (g.partition(i).len(), i));
        Cliques::with_order(g, order)
    }

    /// Enumerates with an explicit branching order over partitions. The set
    /// of cliques does not depend on the order.
    pub fn with_order(g: &'g ConsistencyGraph, order: Vec<usize>) -> Self {
        assert_eq!(order.len(), g.k());
        Cliques { g, order, running: Vec::new(), stack: Vec::new(), chosen: Vec::new(), state: Phase::Fresh }
    }

    fn start(&mut self) -> bool {
        self.state = Phase::Done;
        let g = self.g;
        if g.is_refuted() || (0..g.k()).any(|i| g.partition(i).is_empty()) {
            return false;
        }
        if g.k() == 0 {
            return true;
        }
        let mut all = BitSet::new(g.vertex_count());
        all.insert_range(0, g.vertex_count());
        let first = g.partition_mask(self.order[0]).iter().collect();
        self.running.push(all);
        self.stack.push(Frame { candidates: first, next: 0 });
        self.state = Phase::Running;
        false
    }

    fn emit(&self) -> Vec<ObjId> {
        let mut out = vec![ObjId(0); self.g.k()];
        for (depth, &v) in self.chosen.iter().enumerate() {
            let vx = self.g.vertex(v);
            debug_assert_eq!(vx.partition, self.order[depth]);
            out[vx.partition] = vx.object;
        }
        out
    }
}

impl Iterator for Cliques<'_> {
    type Item = Vec<ObjId>;

    fn next(&mut self) -> Option<Vec<ObjId>> {
        match self.state {
            Phase::Fresh => {
                if self.start() {
                    return Some(Vec::new());
                }
                if self.state == Phase::Done {
                    return None;
                }
            }
            Phase::Done => return None,
            Phase::Running => {}
        }
        let g = self.g;
        let k = g.k();
        while !self.stack.is_empty() {
            let depth = self.stack.len() - 1;
            let top = &mut self.stack[depth];
            if top.next == top.candidates.len() {
                self.stack.pop();
                self.running.pop();
                continue;
            }
            let v = top.candidates[top.next];
            top.next += 1;
            self.chosen.truncate(depth);
            self.chosen.push(v);
            if depth + 1 == k {
                return Some(self.emit());
            }
            let mut run = self.running[depth].clone();
            run.intersect_with(g.neighbours(v));
            if self.order[depth + 1..].iter().any(|&p| !run.intersects(g.partition_mask(p))) {
                continue;
            }
            let mut cands = run.clone();
            cands.intersect_with(g.partition_mask(self.order[depth + 1]));
            self.running.push(run);
            self.stack.push(Frame { candidates: cands.iter().collect(), next: 0 });
        }
        self.state = Phase::Done;
        None
    }
}

pub fn enumerate_cliques(g: &ConsistencyGraph) -> Cliques<'_> {
    Cliques::new(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn objs(n: u32) -> Vec<ObjId> {
        (0..n).map(ObjId).collect()
    }

    #[test]
    fn complete_bipartite() {
        let g = ConsistencyGraph::from_parts(vec![objs(2), objs(2)], |_, _| true);
        assert_eq!(enumerate_cliques(&g).count(), 4);
    }

    #[test]
    fn empty_partition_gives_nothing() {
        let g = ConsistencyGraph::from_parts(vec![objs(2), vec![], objs(3)], |_, _| true);
        assert_eq!(enumerate_cliques(&g).count(), 0);
    }

    #[test]
    fn zero_partitions_give_one_empty_clique() {
        let g = ConsistencyGraph::from_parts(vec![], |_, _| true);
        assert_eq!(enumerate_cliques(&g).collect::<Vec<_>>(), vec![Vec::<ObjId>::new()]);
    }

    #[test]
    fn single_partition_lists_vertices() {
        let g = ConsistencyGraph::from_parts(vec![vec![ObjId(1), ObjId(4)]], |_, _| false);
        assert_eq!(enumerate_cliques(&g).collect::<Vec<_>>(), vec![vec![ObjId(1)], vec![ObjId(4)]]);
    }

    #[test]
    fn order_is_deterministic() {
        let g = ConsistencyGraph::from_parts(vec![objs(3), objs(2)], |u, v| u.object != v.object);
        let a: Vec<_> = enumerate_cliques(&g).collect();
        let b: Vec<_> = enumerate_cliques(&g).collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 4);
    }

    fn brute(parts: &[Vec<ObjId>], adj: &dyn Fn(Vertex, Vertex) -> bool) -> BTreeSet<Vec<ObjId>> {
        let mut out = BTreeSet::new();
        let mut cur = Vec::new();
        fn rec(
            parts: &[Vec<ObjId>],
            adj: &dyn Fn(Vertex, Vertex) -> bool,
            cur: &mut Vec<ObjId>,
            out: &mut BTreeSet<Vec<ObjId>>,
        ) {
            let i = cur.len();
            if i == parts.len() {
                let ok = (0..i).all(|a| {
                    (a + 1..i)
                        .all(|b| adj(Vertex { partition: a, object: cur[a] }, Vertex { partition: b, object: cur[b] }))
                });
                if ok {
                    out.insert(cur.clone());
                }
                return;
            }
            for &o in &parts[i] {
                cur.push(o);
                rec(parts, adj, cur, out);
                cur.pop();
            }
        }
        rec(parts, adj, &mut cur, &mut out);
        out
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(
            sizes in proptest::collection::vec(0u32..=5, 1..=4),
            seed in any::<u64>(),
            density in 0.2f64..0.95,
        ) {
            let parts: Vec<Vec<ObjId>> = sizes.iter().map(|&n| objs(n)).collect();
            let adj = move |u: Vertex, v: Vertex| {
                let (u, v) = if u < v { (u, v) } else { (v, u) };
                let h = seed
                    ^ (u.partition as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
                    ^ (u.object.0 as u64).wrapping_mul(0xc2b2_ae3d_27d4_eb4f)
                    ^ (v.partition as u64).wrapping_mul(0x1656_67b1_9e37_79f9)
                    ^ (v.object.0 as u64).wrapping_mul(0x27d4_eb2f_1656_67c5);
                let h = h.wrapping_mul(0xff51_afd7_ed55_8ccd);
                ((h >> 11) as f64 / (1u64 << 53) as f64) < density
            };
            let g = ConsistencyGraph::from_parts(parts.clone(), adj);
            let got: Vec<Vec<ObjId>> = enumerate_cliques(&g).collect();
            let set: BTreeSet<Vec<ObjId>> = got.iter().cloned().collect();
            prop_assert_eq!(set.len(), got.len(), "duplicate cliques");
            prop_assert_eq!(&set, &brute(&parts, &adj));

            let reversed: BTreeSet<Vec<ObjId>> =
                Cliques::with_order(&g, (0..parts.len()).rev().collect()).collect();
            prop_assert_eq!(set, reversed);
        }
    }
}
