//! Edge-removal trials on regular tournaments, the vertex-merge reduction
//! for a forced edge, and a falsification check for dense edge counts
//! between large sets in oriented graphs.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::digraph::{Builder, CycleWitness, Digraph};
use crate::error::{Error, Result};
use crate::ratio::{ceil_usize, of_n, serde_rational, Rational};
use crate::solver::{has_hamilton_cycle, CycleSearch, SolveBudget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RemovalStrategy {
    /// `r` distinct edges chosen uniformly.
    Random,
    /// `r` out-edges of one vertex.
    OneVertexOut,
    /// Out-edges of two vertices, `⌈r/2⌉` and `⌊r/2⌋`.
    Split,
    /// Repeatedly removes the edge minimising `min_v d⁺(v)·d⁻(v)`.
    AdversarialGreedy,
}

impl RemovalStrategy {
    pub const ALL: [RemovalStrategy; 4] = [
        RemovalStrategy::Random,
        RemovalStrategy::OneVertexOut,
        RemovalStrategy::Split,
        RemovalStrategy::AdversarialGreedy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RemovalStrategy::Random => "random",
            RemovalStrategy::OneVertexOut => "one-vertex-out",
            RemovalStrategy::Split => "split",
            RemovalStrategy::AdversarialGreedy => "adversarial-greedy",
        }
    }
}

impl fmt::Display for RemovalStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RemovalStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RemovalStrategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown removal strategy {s:?}")))
    }
}

/// Checks that `t` is a tournament in which every vertex has out-degree
/// `(n−1)/2`.
pub fn check_regular_tournament(t: &Digraph) -> Result<()> {
    let n = t.n();
    if n.is_multiple_of(2) || n < 3 {
        return Err(Error::Precondition(format!(
            "a regular tournament needs odd n >= 3, got {n}"
        )));
    }
    if !t.is_oriented() || t.edge_count() != n * (n - 1) / 2 {
        return Err(Error::Precondition("input is not a tournament".into()));
    }
    if let Some(v) = (0..n).find(|&v| t.out_degree(v) != (n - 1) / 2) {
        return Err(Error::Precondition(format!(
            "vertex {v} has out-degree {} != {}",
            t.out_degree(v),
            (n - 1) / 2
        )));
    }
    Ok(())
}

/// Picks `r` distinct edges of `g` following `strat`.
pub fn choose_removals(g: &Digraph, r: usize, strat: RemovalStrategy, seed: u64) -> Result<Vec<(usize, usize)>> {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let out_edges_of = |v: usize, k: usize, rng: &mut ChaCha8Rng| -> Vec<(usize, usize)> {
        let mut outs: Vec<usize> = g.out_neighbours(v).collect();
        outs.shuffle(rng);
        outs.into_iter().take(k).map(|w| (v, w)).collect()
    };
    let mut removed = match strat {
        RemovalStrategy::Random => {
            let edges: Vec<(usize, usize)> = g.edges().collect();
            edges.choose_multiple(&mut rng, r).copied().collect()
        }
        RemovalStrategy::OneVertexOut => {
            let v = rng.gen_range(0..n);
            out_edges_of(v, r, &mut rng)
        }
        RemovalStrategy::Split => {
            let u = rng.gen_range(0..n);
            let v = (u + rng.gen_range(1..n)) % n;
            let mut a = out_edges_of(u, r.div_ceil(2), &mut rng);
            a.extend(out_edges_of(v, r / 2, &mut rng));
            a
        }
        RemovalStrategy::AdversarialGreedy => adversarial_greedy(g, r, &mut rng),
    };
    if removed.len() != r {
        return Err(Error::Precondition(format!(
            "strategy {strat} could only pick {} of {r} edges",
            removed.len()
        )));
    }
    removed.sort_unstable();
    Ok(removed)
}

fn adversarial_greedy(g: &Digraph, r: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut outd = g.out_degrees();
    let mut ind = g.in_degrees();
    let mut alive: Vec<(usize, usize)> = g.edges().collect();
    let mut removed = Vec::with_capacity(r);
    for _ in 0..r {
        let score = |(u, v): (usize, usize)| -> usize {
            (0..n)
                .map(|w| {
                    let o = outd[w] - usize::from(w == u);
                    let i = ind[w] - usize::from(w == v);
                    o * i
                })
                .min()
                .unwrap_or(0)
        };
        let best = alive.iter().map(|&e| score(e)).min();
        let Some(best) = best else { break };
        let ties: Vec<usize> = (0..alive.len()).filter(|&k| score(alive[k]) == best).collect();
        let k = ties[rng.gen_range(0..ties.len())];
        let (u, v) = alive.swap_remove(k);
        outd[u] -= 1;
        ind[v] -= 1;
        removed.push((u, v));
    }
    removed
}

/// `G` with `x`, `y` replaced by a vertex `z`, `N⁺(z) = N⁺(y)∖{x}`,
/// `N⁻(z) = N⁻(x)∖{y}`. Kept vertices keep their relative order and `z`
/// is the last vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Merged {
    pub graph: Digraph,
    /// Old id of each new vertex except `z`.
    pub mapping: Vec<usize>,
    pub z: usize,
    pub x: usize,
    pub y: usize,
}

pub fn merge_endpoints(g: &Digraph, x: usize, y: usize) -> Result<Merged> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y || !g.has_edge(x, y) {
        return Err(Error::Precondition(format!("{x} -> {y} is not an edge")));
    }
    let n = g.n();
    let mapping: Vec<usize> = (0..n).filter(|&v| v != x && v != y).collect();
    let mut new_id = vec![usize::MAX; n];
    for (i, &v) in mapping.iter().enumerate() {
        new_id[v] = i;
    }
    let z = n - 2;
    let mut b = Builder::new(n - 1);
    for (u, v) in g.edges() {
        if new_id[u] != usize::MAX && new_id[v] != usize::MAX {
            b.edge(new_id[u], new_id[v]);
        }
    }
    for w in g.out_neighbours(y).filter(|&w| w != x) {
        b.edge(z, new_id[w]);
    }
    for w in g.in_neighbours(x).filter(|&w| w != y) {
        b.edge(new_id[w], z);
    }
    Ok(Merged {
        graph: b.build(),
        mapping,
        z,
        x,
        y,
    })
}

impl Merged {
    /// Replaces `z` by `x, y` and maps the other vertices back.
    pub fn lift_cycle(&self, c: &CycleWitness) -> CycleWitness {
        let mut out = Vec::with_capacity(c.len() + 1);
        for &v in &c.vertices {
            if v == self.z {
                out.push(self.x);
                out.push(self.y);
            } else {
                out.push(self.mapping[v]);
            }
        }
        CycleWitness::new(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeCheck {
    pub x: usize,
    pub y: usize,
    pub merged_hamiltonian: Option<bool>,
    pub lifted: Option<CycleWitness>,
    /// Both routes reach the same definite answer and any lift validates.
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialReport {
    pub n: usize,
    pub strategy: RemovalStrategy,
    pub r: usize,
    pub seed: u64,
    pub removed: Vec<(usize, usize)>,
    pub hamiltonian: Option<bool>,
    pub witness: Option<CycleWitness>,
    pub merge_check: Option<MergeCheck>,
}

/// Removes `r < (n−1)/2` edges from the regular tournament `t` and decides
/// Hamiltonicity of what remains. When a vertex is left with a single
/// out-neighbour the forced edge is also contracted with
/// [`merge_endpoints`] and the two answers are compared.
pub fn thomassen_trial(
    t: &Digraph,
    r: usize,
    strat: RemovalStrategy,
    seed: u64,
    budget: &SolveBudget,
) -> Result<TrialReport> {
    check_regular_tournament(t)?;
    let n = t.n();
    if 2 * r >= n - 1 {
        return Err(Error::InvalidParams(format!(
            "r = {r} is not below (n-1)/2 = {}/2",
            n - 1
        )));
    }
    let removed = choose_removals(t, r, strat, seed)?;
    let g = t.without_edges(&removed);
    let res = has_hamilton_cycle(&g, budget);
    let merge_check = forced_edge(&g).map(|(x, y)| merge_cross_check(&g, x, y, &res, budget));
    Ok(TrialReport {
        n,
        strategy: strat,
        r,
        seed,
        removed,
        hamiltonian: res.verdict(),
        witness: res.witness().cloned(),
        merge_check,
    })
}

/// The first vertex with out-degree 1 and its out-neighbour.
fn forced_edge(g: &Digraph) -> Option<(usize, usize)> {
    (0..g.n())
        .find(|&v| g.out_degree(v) == 1)
        .map(|v| (v, g.out_neighbours(v).next().expect("degree 1")))
}

fn merge_cross_check(g: &Digraph, x: usize, y: usize, direct: &CycleSearch, budget: &SolveBudget) -> MergeCheck {
    let m = merge_endpoints(g, x, y).expect("forced edge exists");
    let res = has_hamilton_cycle(&m.graph, budget);
    let lifted = res.witness().map(|w| m.lift_cycle(w));
    let lift_ok = lifted.as_ref().is_none_or(|c| c.len() == g.n() && c.is_valid_in(g));
    let agrees = lift_ok && res.verdict().is_some() && res.verdict() == direct.verdict();
    MergeCheck {
        x,
        y,
        merged_hamiltonian: res.verdict(),
        lifted,
        agrees,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KeevashSudakovReport {
    pub n: usize,
    #[serde(with = "serde_rational")]
    pub c: Rational,
    pub oriented: bool,
    pub min_semi_degree: usize,
    /// `⌈(1/2 − c)n⌉`, also the size of the sets searched.
    pub set_size: usize,
    /// `c < 10⁻⁴`; larger `c` is exploratory.
    pub c_in_range: bool,
    pub hypothesis_met: bool,
    pub min_found: usize,
    pub witness_s: Vec<usize>,
    pub witness_t: Vec<usize>,
    /// `n²/60`.
    pub threshold: f64,
    /// No pair below `n²/60` was found. Not a proof.
    pub no_violation_found: bool,
}

fn e_between(g: &Digraph, s: &FixedBitSet, t: &FixedBitSet) -> usize {
    s.ones().map(|v| g.out_set(v).intersection(t).count()).sum()
}

/// Local search: swap one vertex of `S` (or `T`) for one outside while that
/// lowers `e(S→T)`.
fn descend(g: &Digraph, s: &mut FixedBitSet, t: &mut FixedBitSet) {
    let n = g.n();
    loop {
        let mut improved = false;
        let contrib_s = |v: usize, t: &FixedBitSet| g.out_set(v).intersection(t).count();
        let worst = s.ones().max_by_key(|&v| (contrib_s(v, t), std::cmp::Reverse(v)));
        let best = (0..n).filter(|&v| !s.contains(v)).min_by_key(|&v| (contrib_s(v, t), v));
        if let (Some(a), Some(b)) = (worst, best) {
            if contrib_s(b, t) < contrib_s(a, t) {
                s.set(a, false);
                s.insert(b);
                improved = true;
            }
        }
        let contrib_t = |v: usize, s: &FixedBitSet| g.in_set(v).intersection(s).count();
        let worst = t.ones().max_by_key(|&v| (contrib_t(v, s), std::cmp::Reverse(v)));
        let best = (0..n).filter(|&v| !t.contains(v)).min_by_key(|&v| (contrib_t(v, s), v));
        if let (Some(a), Some(b)) = (worst, best) {
            if contrib_t(b, s) < contrib_t(a, s) {
                t.set(a, false);
                t.insert(b);
                improved = true;
            }
        }
        if !improved {
            return;
        }
    }
}

/// Minimises `e(S→T)` over sets of size `⌈(1/2 − c)n⌉` (the minimum over
/// larger sets is never smaller) from `trials` random starts, each followed
/// by greedy descent, and compares the best value with `n²/60`.
pub fn keevash_sudakov_check(g: &Digraph, c: Rational, trials: u64, seed: u64) -> Result<KeevashSudakovReport> {
    let n = g.n();
    let half = Rational::new(1, 2);
    if c <= Rational::from_integer(0) || c >= half {
        return Err(Error::InvalidParams(format!("c = {c} must lie in (0, 1/2)")));
    }
    if n == 0 {
        return Err(Error::InvalidParams("empty digraph".into()));
    }
    let m = ceil_usize(of_n(half - c, n)).max(1);
    let oriented = g.is_oriented();
    let min_semi_degree = g.min_semi_degree();
    let c_in_range = c < Rational::new(1, 10_000);
    let hypothesis_met = oriented && min_semi_degree >= m;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut verts: Vec<usize> = (0..n).collect();
    let mut best: Option<(usize, FixedBitSet, FixedBitSet)> = None;
    for _ in 0..trials.max(1) {
        let mut pick = |rng: &mut ChaCha8Rng| {
            let (chosen, _) = verts.partial_shuffle(rng, m);
            let mut set = FixedBitSet::with_capacity(n);
            chosen.iter().for_each(|&v| set.insert(v));
            set
        };
        let mut s = pick(&mut rng);
        let mut t = pick(&mut rng);
        descend(g, &mut s, &mut t);
        let e = e_between(g, &s, &t);
        if best.as_ref().is_none_or(|(b, _, _)| e < *b) {
            best = Some((e, s, t));
        }
    }
    let (min_found, s, t) = best.expect("at least one trial");
    Ok(KeevashSudakovReport {
        n,
        c,
        oriented,
        min_semi_degree,
        set_size: m,
        c_in_range,
        hypothesis_met,
        min_found,
        witness_s: s.ones().collect(),
        witness_t: t.ones().collect(),
        threshold: (n * n) as f64 / 60.0,
        no_violation_found: 60 * min_found >= n * n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::regular_tournament;

    #[test]
    fn trial_examples() {
        let b = SolveBudget::default();
        let t7 = regular_tournament(7).unwrap();
        let rep = thomassen_trial(&t7, 2, RemovalStrategy::OneVertexOut, 0, &b).unwrap();
        assert_eq!(rep.hamiltonian, Some(true));
        assert_eq!(rep.removed.len(), 2);
        let mc = rep.merge_check.unwrap();
        assert!(mc.agrees);
        let rep = thomassen_trial(&t7, 0, RemovalStrategy::Random, 0, &b).unwrap();
        assert_eq!(rep.hamiltonian, Some(true));
        let t11 = regular_tournament(11).unwrap();
        let rep = thomassen_trial(&t11, 4, RemovalStrategy::AdversarialGreedy, 3, &b).unwrap();
        assert_eq!(rep.hamiltonian, Some(true));
        assert!(thomassen_trial(&t7, 3, RemovalStrategy::Random, 0, &b).is_err());
        assert!(thomassen_trial(&Digraph::complete(7), 1, RemovalStrategy::Random, 0, &b).is_err());
    }

    #[test]
    fn removals_are_distinct_existing_edges() {
        let t = regular_tournament(13).unwrap();
        for strat in RemovalStrategy::ALL {
            for seed in 0..5 {
                let a = choose_removals(&t, 5, strat, seed).unwrap();
                assert_eq!(a.len(), 5);
                assert!(a.windows(2).all(|w| w[0] < w[1]));
                assert!(a.iter().all(|&(u, v)| t.has_edge(u, v)));
            }
        }
    }

    #[test]
    fn merge_examples() {
        let m = merge_endpoints(&Digraph::directed_cycle(4), 0, 1).unwrap();
        assert_eq!(m.graph.n(), 3);
        assert_eq!(m.graph.edge_count(), 3);
        assert!(m.graph.is_strongly_connected());
        let m = merge_endpoints(&Digraph::complete(5), 2, 3).unwrap();
        assert_eq!(m.z, 3);
        assert_eq!(m.graph.out_degree(3), 3);
        assert_eq!(m.graph.in_degree(3), 3);
        assert!(merge_endpoints(&Digraph::directed_cycle(4), 1, 0).is_err());
    }

    #[test]
    fn keevash_sudakov_examples() {
        let t = regular_tournament(101).unwrap();
        let rep = keevash_sudakov_check(&t, Rational::new(1, 100_000), 5, 1).unwrap();
        // δ⁰ ≤ (n−1)/2 < (1/2 − c)n for an oriented graph once cn < 1/2.
        assert!(rep.c_in_range && !rep.hypothesis_met);
        assert_eq!(rep.set_size, 51);
        assert!(rep.no_violation_found, "{}", rep.min_found);
        let rep = keevash_sudakov_check(&Digraph::directed_cycle(11), Rational::new(1, 100_000), 2, 1).unwrap();
        assert!(!rep.hypothesis_met);
    }
}
