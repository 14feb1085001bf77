use fixedbitset::FixedBitSet;

use super::{has_one_factor, CycleSearch, Nodes, SolveBudget, DP_HARD_LIMIT};
use crate::digraph::{CycleWitness, Digraph};
use crate::error::{Error, Result};

/// Hamilton cycle search: subset DP up to `budget.max_n_dp`, pruned
/// backtracking above.
pub fn has_hamilton_cycle(g: &Digraph, budget: &SolveBudget) -> CycleSearch {
    if budget.use_dp(g.n()) {
        hamilton_dp(g).expect("n within DP limit").into()
    } else {
        if !has_one_factor(g).has_factor {
            return CycleSearch::Absent;
        }
        hamilton_backtrack(g, budget)
    }
}

/// Necessary conditions that are cheap to test.
fn obviously_non_hamiltonian(g: &Digraph) -> bool {
    let n = g.n();
    n < 2 || (0..n).any(|v| g.out_degree(v) == 0 || g.in_degree(v) == 0) || !g.is_strongly_connected()
}

/// Held–Karp reachability over subsets containing vertex 0: `ends[mask]`
/// holds the possible last vertices of a path that starts at 0 and visits
/// exactly `{0} ∪ mask`. Vertex `v ≥ 1` is bit `v − 1`.
pub fn hamilton_dp(g: &Digraph) -> Result<Option<CycleWitness>> {
    let n = g.n();
    if n > DP_HARD_LIMIT {
        return Err(Error::TooLarge(format!(
            "subset DP is limited to n <= {DP_HARD_LIMIT}, got {n}"
        )));
    }
    if obviously_non_hamiltonian(g) {
        return Ok(None);
    }
    let r = n - 1;
    let bits = |set: &FixedBitSet| -> u32 { set.ones().filter(|&v| v >= 1).fold(0u32, |acc, v| acc | (1 << (v - 1))) };
    let out: Vec<u32> = (1..n).map(|v| bits(g.out_set(v))).collect();
    let start = bits(g.out_set(0));
    let close = bits(g.in_set(0));
    let full: u32 = if r == 32 { u32::MAX } else { (1u32 << r) - 1 };
    let mut ends = vec![0u32; 1usize << r];
    for j in 0..r {
        if start >> j & 1 == 1 {
            ends[1 << j] |= 1 << j;
        }
    }
    for mask in 1..=full {
        let mut e = ends[mask as usize];
        while e != 0 {
            let j = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut next = out[j] & !mask;
            while next != 0 {
                let bit = next & next.wrapping_neg();
                next ^= bit;
                ends[(mask | bit) as usize] |= bit;
            }
        }
    }
    let closing = ends[full as usize] & close;
    if closing == 0 {
        return Ok(None);
    }
    // Walk back from the lowest closing end.
    let mut path = Vec::with_capacity(n);
    let mut mask = full;
    let mut cur = closing.trailing_zeros() as usize;
    loop {
        path.push(cur + 1);
        let rest = mask & !(1 << cur);
        if rest == 0 {
            break;
        }
        let preds = ends[rest as usize] & bits(g.in_set(cur + 1));
        debug_assert_ne!(preds, 0);
        cur = preds.trailing_zeros() as usize;
        mask = rest;
    }
    path.push(0);
    path.reverse();
    Ok(Some(CycleWitness::new(path)))
}

struct Backtrack<'a> {
    g: &'a Digraph,
    path: Vec<usize>,
    unvisited: FixedBitSet,
    nodes: Nodes,
}

impl Backtrack<'_> {
    /// Vertices of `within` reachable from `from` using `adj` (forward or
    /// reverse adjacency) through vertices of `within` only.
    fn spread(&self, from: usize, within: &FixedBitSet, forward: bool) -> FixedBitSet {
        let n = self.g.n();
        let mut reached = FixedBitSet::with_capacity(n);
        let mut frontier = FixedBitSet::with_capacity(n);
        frontier.insert(from);
        loop {
            let mut next = FixedBitSet::with_capacity(n);
            for v in frontier.ones() {
                next.union_with(if forward { self.g.out_set(v) } else { self.g.in_set(v) });
            }
            next.intersect_with(within);
            next.difference_with(&reached);
            if next.is_clear() {
                return reached;
            }
            reached.union_with(&next);
            frontier = next;
        }
    }

    fn feasible(&self, current: usize) -> bool {
        let g = self.g;
        if g.in_set(0).is_disjoint(&self.unvisited) {
            return false;
        }
        for v in self.unvisited.ones() {
            let out = g.out_set(v);
            if out.is_disjoint(&self.unvisited) && !out.contains(0) {
                return false;
            }
            let inn = g.in_set(v);
            if inn.is_disjoint(&self.unvisited) && !inn.contains(current) {
                return false;
            }
        }
        let total = self.unvisited.count_ones(..);
        self.spread(current, &self.unvisited, true).count_ones(..) == total
            && self.spread(0, &self.unvisited, false).count_ones(..) == total
    }

    /// `Some(found)`, or `None` when the budget ran out.
    fn dfs(&mut self, current: usize) -> Option<bool> {
        if self.unvisited.is_clear() {
            return Some(self.g.has_edge(current, 0));
        }
        if !self.nodes.tick() {
            return None;
        }
        if !self.feasible(current) {
            return Some(false);
        }
        let mut cands: Vec<(usize, usize)> = self
            .g
            .out_set(current)
            .intersection(&self.unvisited)
            .map(|c| {
                let onward =
                    self.g.out_set(c).intersection(&self.unvisited).count() + usize::from(self.g.has_edge(c, 0));
                (onward, c)
            })
            .collect();
        cands.sort_unstable();
        for (_, c) in cands {
            self.unvisited.set(c, false);
            self.path.push(c);
            match self.dfs(c) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.path.pop();
            self.unvisited.insert(c);
        }
        Some(false)
    }
}

/// Pruned depth-first search from vertex 0. Prunes on per-vertex
/// entry/exit availability and on reachability through the unvisited part.
pub fn hamilton_backtrack(g: &Digraph, budget: &SolveBudget) -> CycleSearch {
    let n = g.n();
    if obviously_non_hamiltonian(g) {
        return CycleSearch::Absent;
    }
    let mut unvisited = FixedBitSet::with_capacity(n);
    unvisited.insert_range(1..n);
    let mut bt = Backtrack {
        g,
        path: vec![0],
        unvisited,
        nodes: Nodes::new(budget.node_budget),
    };
    match bt.dfs(0) {
        Some(true) => CycleSearch::found(CycleWitness::new(bt.path)),
        Some(false) => CycleSearch::Absent,
        None => CycleSearch::Unknown,
    }
}
