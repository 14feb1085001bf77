//! Loop-free digraphs with at most one edge per ordered pair.
//!
//! Vertices are the dense integers `0..n`. Both the out- and the
//! in-adjacency are kept as bitsets so that neighbourhood unions and
//! intersection counts over vertex sets stay cheap.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out: Vec<FixedBitSet>,
    inn: Vec<FixedBitSet>,
    edge_count: usize,
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Digraph {
    /// Builds a digraph from ordered pairs. Duplicate pairs collapse to one edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = Builder::new(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            b.edge(u, v);
        }
        Ok(b.build())
    }

    /// Each undirected edge `{u, v}` becomes the 2-cycle `u → v → u`.
    pub fn from_undirected<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges(n, edges.into_iter().flat_map(|(u, v)| [(u, v), (v, u)]))
    }

    pub fn empty(n: usize) -> Self {
        Builder::new(n).build()
    }

    /// The complete digraph: every ordered pair of distinct vertices.
    pub fn complete(n: usize) -> Self {
        let mut b = Builder::new(n);
        b.complete_on(0..n);
        b.build()
    }

    /// The directed cycle `0 → 1 → … → n−1 → 0`.
    pub fn directed_cycle(n: usize) -> Self {
        let mut b = Builder::new(n);
        for v in 0..n {
            if n > 1 {
                b.edge(v, (v + 1) % n);
            }
        }
        b.build()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.out[u].contains(v)
    }

    #[inline]
    pub fn out_set(&self, v: usize) -> &FixedBitSet {
        &self.out[v]
    }

    #[inline]
    pub fn in_set(&self, v: usize) -> &FixedBitSet {
        &self.inn[v]
    }

    pub fn out_neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[v].ones()
    }

    pub fn in_neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.inn[v].ones()
    }

    #[inline]
    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].count_ones(..)
    }

    #[inline]
    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].count_ones(..)
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out[u].ones().map(move |v| (u, v)))
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.out_degree(v)).collect()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.in_degree(v)).collect()
    }

    pub fn degree_sequences(&self) -> DegreeSequences {
        let mut out_sorted = self.out_degrees();
        let mut in_sorted = self.in_degrees();
        out_sorted.sort_unstable();
        in_sorted.sort_unstable();
        DegreeSequences { out_sorted, in_sorted }
    }

    /// δ⁰(G) = min(δ⁺, δ⁻). Zero for the empty vertex set.
    pub fn min_semi_degree(&self) -> usize {
        (0..self.n)
            .map(|v| self.out_degree(v).min(self.in_degree(v)))
            .min()
            .unwrap_or(0)
    }

    /// Vertices reachable from `start` (including `start`).
    pub fn reachable_from(&self, start: usize) -> FixedBitSet {
        self.search(start, &self.out)
    }

    /// Vertices that can reach `target` (including `target`).
    pub fn reaching(&self, target: usize) -> FixedBitSet {
        self.search(target, &self.inn)
    }

    fn search(&self, start: usize, adj: &[FixedBitSet]) -> FixedBitSet {
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut queue = VecDeque::new();
        seen.insert(start);
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for w in adj[u].ones() {
                if !seen.put(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        self.reachable_from(0).count_ones(..) == self.n && self.reaching(0).count_ones(..) == self.n
    }

    /// N⁺(S): the union of the out-neighbourhoods of the vertices of `s`.
    pub fn out_neighbourhood(&self, s: &[usize]) -> Result<Vec<usize>> {
        Ok(self.union_of(s, &self.out)?.ones().collect())
    }

    /// N⁻(S).
    pub fn in_neighbourhood(&self, s: &[usize]) -> Result<Vec<usize>> {
        Ok(self.union_of(s, &self.inn)?.ones().collect())
    }

    pub(crate) fn out_neighbourhood_set(&self, s: &FixedBitSet) -> FixedBitSet {
        let mut acc = FixedBitSet::with_capacity(self.n);
        for v in s.ones() {
            acc.union_with(&self.out[v]);
        }
        acc
    }

    fn union_of(&self, s: &[usize], adj: &[FixedBitSet]) -> Result<FixedBitSet> {
        let mut acc = FixedBitSet::with_capacity(self.n);
        for &v in s {
            self.check_vertex(v)?;
            acc.union_with(&adj[v]);
        }
        Ok(acc)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::NoSuchVertex { vertex: v, n: self.n })
        }
    }

    /// Flips every edge.
    pub fn reverse(&self) -> Self {
        Digraph {
            n: self.n,
            out: self.inn.clone(),
            inn: self.out.clone(),
            edge_count: self.edge_count,
        }
    }

    /// No pair of vertices is joined in both directions.
    pub fn is_oriented(&self) -> bool {
        (0..self.n).all(|u| self.out[u].is_disjoint(&self.inn[u]))
    }

    /// Number of unordered pairs joined in both directions.
    pub fn two_cycle_count(&self) -> usize {
        (0..self.n)
            .map(|u| self.out[u].intersection(&self.inn[u]).filter(|&v| v > u).count())
            .sum()
    }

    /// G − v, relabelled compactly. `mapping[new] = old`.
    pub fn remove_vertex(&self, v: usize) -> Result<(Self, Vec<usize>)> {
        self.check_vertex(v)?;
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    /// G[S], with vertices relabelled in the order given. `mapping[new] = old`.
    pub fn induced(&self, s: &[usize]) -> Result<(Self, Vec<usize>)> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in s.iter().enumerate() {
            self.check_vertex(v)?;
            if index[v] != usize::MAX {
                return Err(Error::InvalidParams(format!("vertex {v} repeated in subset")));
            }
            index[v] = i;
        }
        let mut b = Builder::new(s.len());
        for (i, &u) in s.iter().enumerate() {
            for w in self.out[u].ones() {
                if index[w] != usize::MAX {
                    b.edge(i, index[w]);
                }
            }
        }
        Ok((b.build(), s.to_vec()))
    }

    /// Edge-subgraph with the given edges removed (missing edges are ignored).
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Self {
        let mut out = self.out.clone();
        for &(u, v) in removed {
            if u < self.n && v < self.n {
                out[u].set(v, false);
            }
        }
        Builder { n: self.n, out }.build()
    }

    /// Same vertex set, union of edges.
    pub fn with_edges<I>(&self, extra: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges(self.n, self.edges().chain(extra))
    }
}

/// Unvalidated digraph assembly for generators whose layout is known to be
/// loop-free. Loops passed here panic.
#[derive(Clone, Debug)]
pub struct Builder {
    n: usize,
    out: Vec<FixedBitSet>,
}

impl Builder {
    pub fn new(n: usize) -> Self {
        Builder {
            n,
            out: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn edge(&mut self, u: usize, v: usize) -> &mut Self {
        assert_ne!(u, v, "loop at {u}");
        self.out[u].insert(v);
        self
    }

    /// Every edge from a vertex of `from` to a distinct vertex of `to`.
    pub fn all_edges<A, B>(&mut self, from: A, to: B) -> &mut Self
    where
        A: IntoIterator<Item = usize>,
        B: IntoIterator<Item = usize> + Clone,
    {
        for u in from {
            for v in to.clone() {
                if u != v {
                    self.out[u].insert(v);
                }
            }
        }
        self
    }

    pub fn complete_on<A>(&mut self, vs: A) -> &mut Self
    where
        A: IntoIterator<Item = usize> + Clone,
    {
        self.all_edges(vs.clone(), vs)
    }

    pub fn build(self) -> Digraph {
        let n = self.n;
        let mut inn = vec![FixedBitSet::with_capacity(n); n];
        let mut edge_count = 0;
        for (u, row) in self.out.iter().enumerate() {
            for v in row.ones() {
                inn[v].insert(u);
                edge_count += 1;
            }
        }
        Digraph {
            n,
            out: self.out,
            inn,
            edge_count,
        }
    }
}

/// Sorted out- and indegree sequences. Position `i` in one list need not
/// belong to the same vertex as position `i` in the other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSequences {
    pub out_sorted: Vec<usize>,
    pub in_sorted: Vec<usize>,
}

impl DegreeSequences {
    pub fn n(&self) -> usize {
        self.out_sorted.len()
    }

    /// d⁺ᵢ with 1-based `i`; `None` outside `1..=n`.
    pub fn out_at(&self, i: usize) -> Option<usize> {
        i.checked_sub(1).and_then(|j| self.out_sorted.get(j).copied())
    }

    /// d⁻ᵢ with 1-based `i`; `None` outside `1..=n`.
    pub fn in_at(&self, i: usize) -> Option<usize> {
        i.checked_sub(1).and_then(|j| self.in_sorted.get(j).copied())
    }

    /// The same sequences with the roles of out and in exchanged.
    pub fn swapped(&self) -> Self {
        DegreeSequences {
            out_sorted: self.in_sorted.clone(),
            in_sorted: self.out_sorted.clone(),
        }
    }
}

/// `true` iff `a` dominates `b`, i.e. `a[i] ≥ b[i]` for every position.
pub fn dominates<A, B>(a: &[A], b: &[B]) -> Result<bool>
where
    A: PartialOrd<B>,
{
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.iter().zip(b).all(|(x, y)| x >= y))
}

/// A directed cycle given by its vertex sequence; the edge from the last
/// vertex back to the first closes it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleWitness {
    pub vertices: Vec<usize>,
}

impl CycleWitness {
    /// Rotates the sequence so that it starts at its smallest vertex.
    pub fn new(mut vertices: Vec<usize>) -> Self {
        if let Some(pos) = vertices.iter().enumerate().min_by_key(|&(_, v)| *v).map(|(i, _)| i) {
            vertices.rotate_left(pos);
        }
        CycleWitness { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// Edges of the cycle including the closing one.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| (self.vertices[i], self.vertices[(i + 1) % k]))
    }

    /// Checks length ≥ 2, distinct vertices, and every edge present in `g`.
    pub fn validate(&self, g: &Digraph) -> Result<()> {
        if self.vertices.len() < 2 {
            return Err(Error::Precondition(format!(
                "cycle of length {} is too short",
                self.vertices.len()
            )));
        }
        let mut seen = FixedBitSet::with_capacity(g.n());
        for &v in &self.vertices {
            g.check_vertex(v)?;
            if seen.put(v) {
                return Err(Error::Precondition(format!("vertex {v} repeats in cycle")));
            }
        }
        for (u, v) in self.edges() {
            if !g.has_edge(u, v) {
                return Err(Error::Precondition(format!("cycle uses missing edge {u}->{v}")));
            }
        }
        Ok(())
    }

    pub fn is_valid_in(&self, g: &Digraph) -> bool {
        self.validate(g).is_ok()
    }

    /// Same cycle traversed in the reverse digraph.
    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        CycleWitness::new(v)
    }
}
