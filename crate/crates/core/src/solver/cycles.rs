use std::collections::{BTreeMap, VecDeque};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{has_hamilton_cycle, CycleSearch, Nodes, SolveBudget, DP_HARD_LIMIT};
use crate::digraph::{CycleWitness, Digraph};
use crate::error::{Error, Result};

/// Subset DP for cycles through `start` whose other vertices come from
/// `others` (bit `j` is `others[j]`). Fills `found[t]` for every cycle
/// length `t ≤ max_len` not already present.
fn lengths_from(
    g: &Digraph,
    start: usize,
    others: &[usize],
    max_len: usize,
    found: &mut [Option<CycleWitness>],
    buf: &mut Vec<u32>,
) {
    let r = others.len();
    if r == 0 {
        return;
    }
    let mut pos = vec![usize::MAX; g.n()];
    for (j, &v) in others.iter().enumerate() {
        pos[v] = j;
    }
    let bits = |set: &FixedBitSet| -> u32 {
        set.ones()
            .filter(|&v| pos[v] != usize::MAX)
            .fold(0u32, |acc, v| acc | (1 << pos[v]))
    };
    let out: Vec<u32> = others.iter().map(|&v| bits(g.out_set(v))).collect();
    let inn: Vec<u32> = others.iter().map(|&v| bits(g.in_set(v))).collect();
    let first = bits(g.out_set(start));
    let close = bits(g.in_set(start));
    let size = 1usize << r;
    buf.clear();
    buf.resize(size, 0);
    let ends = buf;
    for j in 0..r {
        if first >> j & 1 == 1 {
            ends[1 << j] |= 1 << j;
        }
    }
    let mut missing = (2..=max_len).filter(|&t| found[t].is_none()).count();
    for mask in 1..size as u32 {
        if missing == 0 {
            return;
        }
        let e_all = ends[mask as usize];
        if e_all == 0 {
            continue;
        }
        let len = mask.count_ones() as usize + 1;
        let closing = e_all & close;
        if closing != 0 && found[len].is_none() {
            found[len] = Some(rebuild(start, others, ends, &inn, mask, closing));
            missing -= 1;
        }
        if len >= max_len {
            continue;
        }
        let mut e = e_all;
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
}

fn rebuild(start: usize, others: &[usize], ends: &[u32], inn: &[u32], mut mask: u32, closing: u32) -> CycleWitness {
    let mut path = Vec::new();
    let mut cur = closing.trailing_zeros() as usize;
    loop {
        path.push(others[cur]);
        let rest = mask & !(1 << cur);
        if rest == 0 {
            break;
        }
        let preds = ends[rest as usize] & inn[cur];
        debug_assert_ne!(preds, 0);
        cur = preds.trailing_zeros() as usize;
        mask = rest;
    }
    path.push(start);
    path.reverse();
    CycleWitness::new(path)
}

fn dp_limit(n: usize) -> Result<()> {
    if n > DP_HARD_LIMIT {
        Err(Error::TooLarge(format!(
            "subset DP is limited to n <= {DP_HARD_LIMIT}, got {n}"
        )))
    } else {
        Ok(())
    }
}

/// One witness per cycle length `2..=max_len` (index = length), found by
/// running the subset DP from each vertex `s` over the vertices above `s`,
/// so every cycle is seen from its smallest vertex.
pub fn cycle_lengths_dp(g: &Digraph, max_len: usize) -> Result<Vec<Option<CycleWitness>>> {
    let n = g.n();
    dp_limit(n)?;
    let max_len = max_len.min(n);
    let mut found = vec![None; n + 1];
    let mut buf = Vec::new();
    for s in 0..n {
        // Cycles with smallest vertex s have at most n − s vertices.
        let others: Vec<usize> = (s + 1..n).collect();
        lengths_from(g, s, &others, max_len, &mut found, &mut buf);
        if (2..=max_len).all(|t| found[t].is_some()) {
            break;
        }
    }
    Ok(found)
}

/// Lengths of cycles through `v`.
fn lengths_through_dp(g: &Digraph, v: usize, buf: &mut Vec<u32>) -> Vec<Option<CycleWitness>> {
    let n = g.n();
    let mut found = vec![None; n + 1];
    let others: Vec<usize> = (0..n).filter(|&u| u != v).collect();
    lengths_from(g, v, &others, n, &mut found, buf);
    found
}

struct LengthSearch<'a> {
    g: &'a Digraph,
    target: usize,
    start: usize,
    allowed: FixedBitSet,
    dist_back: Vec<usize>,
    path: Vec<usize>,
}

impl LengthSearch<'_> {
    fn dfs(&mut self, cur: usize, nodes: &mut Nodes) -> Option<bool> {
        let len = self.path.len();
        if len == self.target {
            return Some(self.g.has_edge(cur, self.start));
        }
        if !nodes.tick() {
            return None;
        }
        let cands: Vec<usize> = self.g.out_set(cur).intersection(&self.allowed).collect();
        for c in cands {
            // After adding c the path has len + 1 vertices and needs
            // target − len − 1 more, i.e. target − len edges back to start.
            if self.dist_back[c] > self.target - len {
                continue;
            }
            self.allowed.set(c, false);
            self.path.push(c);
            match self.dfs(c, nodes) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.path.pop();
            self.allowed.insert(c);
        }
        Some(false)
    }
}

/// Distances to `target` inside `within ∪ {target}` (reverse BFS).
fn distances_to(g: &Digraph, target: usize, within: &FixedBitSet) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[target] = 0;
    let mut queue = VecDeque::from([target]);
    while let Some(u) = queue.pop_front() {
        for w in g.in_neighbours(u) {
            if within.contains(w) && dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Depth-limited search for a `t`-cycle through `start` using only
/// vertices of `allowed`.
fn length_through(
    g: &Digraph,
    start: usize,
    allowed: FixedBitSet,
    t: usize,
    nodes: &mut Nodes,
) -> Option<Option<CycleWitness>> {
    let dist_back = distances_to(g, start, &allowed);
    let mut s = LengthSearch {
        g,
        target: t,
        start,
        allowed,
        dist_back,
        path: vec![start],
    };
    match s.dfs(start, nodes) {
        Some(true) => Some(Some(CycleWitness::new(s.path))),
        Some(false) => Some(None),
        None => None,
    }
}

/// Backtracking search for a cycle of exactly `t` vertices, trying each
/// vertex in turn as the cycle's smallest vertex.
pub fn cycle_of_length_backtrack(g: &Digraph, t: usize, budget: &SolveBudget) -> CycleSearch {
    let n = g.n();
    if t < 2 || t > n {
        return CycleSearch::Absent;
    }
    let mut nodes = Nodes::new(budget.node_budget);
    for s in 0..n.saturating_sub(t - 1) {
        let mut allowed = FixedBitSet::with_capacity(n);
        allowed.insert_range(s + 1..n);
        match length_through(g, s, allowed, t, &mut nodes) {
            Some(Some(w)) => return CycleSearch::found(w),
            Some(None) => {}
            None => return CycleSearch::Unknown,
        }
    }
    CycleSearch::Absent
}

fn check_length(n: usize, t: usize) -> Result<()> {
    if t < 2 || t > n {
        Err(Error::InvalidParams(format!("cycle length {t} outside 2..={n}")))
    } else {
        Ok(())
    }
}

/// A cycle with exactly `t` vertices.
pub fn cycle_of_length(g: &Digraph, t: usize, budget: &SolveBudget) -> Result<CycleSearch> {
    let n = g.n();
    check_length(n, t)?;
    if budget.use_dp(n) {
        let mut found = cycle_lengths_dp(g, t)?;
        return Ok(found[t].take().into());
    }
    if t == n {
        return Ok(has_hamilton_cycle(g, budget));
    }
    Ok(cycle_of_length_backtrack(g, t, budget))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PancyclicReport {
    pub n: usize,
    pub witnesses: BTreeMap<usize, CycleWitness>,
    pub missing: Vec<usize>,
    pub unknown: Vec<usize>,
    /// `None` when some length is undecided and none is known missing.
    pub pancyclic: Option<bool>,
}

fn verdict(missing: &[usize], unknown: &[usize]) -> Option<bool> {
    if !missing.is_empty() {
        Some(false)
    } else if unknown.is_empty() {
        Some(true)
    } else {
        None
    }
}

/// Cycles of every length `2..=n`.
pub fn is_pancyclic(g: &Digraph, budget: &SolveBudget) -> PancyclicReport {
    let n = g.n();
    let mut witnesses = BTreeMap::new();
    let mut missing = Vec::new();
    let mut unknown = Vec::new();
    if budget.use_dp(n) {
        let found = cycle_lengths_dp(g, n).expect("n within DP limit");
        for (t, w) in found.into_iter().enumerate().skip(2) {
            match w {
                Some(w) => {
                    witnesses.insert(t, w);
                }
                None => missing.push(t),
            }
        }
    } else {
        for t in 2..=n {
            let res = if t == n {
                has_hamilton_cycle(g, budget)
            } else {
                cycle_of_length_backtrack(g, t, budget)
            };
            match res {
                CycleSearch::Found { witness } => {
                    witnesses.insert(t, witness);
                }
                CycleSearch::Absent => missing.push(t),
                CycleSearch::Unknown => unknown.push(t),
            }
        }
    }
    PancyclicReport {
        n,
        pancyclic: verdict(&missing, &unknown),
        witnesses,
        missing,
        unknown,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexLengths {
    pub vertex: usize,
    pub missing: Vec<usize>,
    pub unknown: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPancyclicReport {
    pub n: usize,
    pub per_vertex: Vec<VertexLengths>,
    pub vertex_pancyclic: Option<bool>,
}

/// Whether every vertex lies on a cycle of every length `2..=n`.
pub fn is_vertex_pancyclic(g: &Digraph, budget: &SolveBudget) -> VertexPancyclicReport {
    let n = g.n();
    let mut per_vertex = Vec::with_capacity(n);
    let mut buf = Vec::new();
    for v in 0..n {
        let mut missing = Vec::new();
        let mut unknown = Vec::new();
        if budget.use_dp(n) {
            let found = lengths_through_dp(g, v, &mut buf);
            missing.extend((2..=n).filter(|&t| found[t].is_none()));
        } else {
            let mut nodes = Nodes::new(budget.node_budget);
            for t in 2..=n {
                let mut allowed = FixedBitSet::with_capacity(n);
                allowed.insert_range(..);
                allowed.set(v, false);
                match length_through(g, v, allowed, t, &mut nodes) {
                    Some(Some(_)) => {}
                    Some(None) => missing.push(t),
                    None => unknown.push(t),
                }
            }
        }
        per_vertex.push(VertexLengths {
            vertex: v,
            missing,
            unknown,
        });
    }
    let all_missing: Vec<usize> = per_vertex.iter().flat_map(|p| p.missing.clone()).collect();
    let all_unknown: Vec<usize> = per_vertex.iter().flat_map(|p| p.unknown.clone()).collect();
    VertexPancyclicReport {
        n,
        vertex_pancyclic: verdict(&all_missing, &all_unknown),
        per_vertex,
    }
}

/// Shortest directed cycle through `x`: BFS from `x`, closing at the first
/// dequeued in-neighbour of `x`.
pub fn shortest_cycle_through(g: &Digraph, x: usize) -> Result<Option<(usize, CycleWitness)>> {
    g.check_vertex(x)?;
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut dist = vec![usize::MAX; n];
    dist[x] = 0;
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        if u != x && g.has_edge(u, x) {
            let mut path = vec![u];
            let mut v = u;
            while parent[v] != x {
                v = parent[v];
                path.push(v);
            }
            path.push(x);
            path.reverse();
            return Ok(Some((dist[u] + 1, CycleWitness::new(path))));
        }
        for w in g.out_neighbours(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    Ok(None)
}
