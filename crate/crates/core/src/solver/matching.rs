//! 1-factors as perfect matchings between out-copies and in-copies.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::digraph::{CycleWitness, Digraph};

/// A set `S` of out-copies with `|N⁺(S)| < |S|`, which rules out a
/// 1-factor by Hall's theorem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallViolator {
    pub set: Vec<usize>,
    pub neighbourhood: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneFactor {
    pub has_factor: bool,
    /// Maximum matching as edges `u → v` (each vertex at most once per side).
    pub matching: Vec<(usize, usize)>,
    pub hall_violator: Option<HallViolator>,
}

impl OneFactor {
    /// The vertex-disjoint cycles of a perfect matching.
    pub fn cycles(&self, n: usize) -> Option<Vec<CycleWitness>> {
        if !self.has_factor {
            return None;
        }
        let mut succ = vec![usize::MAX; n];
        for &(u, v) in &self.matching {
            succ[u] = v;
        }
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut v = s;
            while !seen[v] {
                seen[v] = true;
                cyc.push(v);
                v = succ[v];
            }
            cycles.push(CycleWitness::new(cyc));
        }
        Some(cycles)
    }
}

const FREE: usize = usize::MAX;

/// Hopcroft–Karp on the bipartite graph with an edge (out-copy `u`,
/// in-copy `v`) per directed edge `u → v`. On failure the certificate is
/// the set of out-copies reachable by alternating paths from unmatched
/// out-copies.
pub fn has_one_factor(g: &Digraph) -> OneFactor {
    let n = g.n();
    let adj: Vec<Vec<usize>> = (0..n).map(|u| g.out_neighbours(u).collect()).collect();
    let mut mate_l = vec![FREE; n];
    let mut mate_r = vec![FREE; n];
    let mut dist = vec![0usize; n];

    loop {
        // BFS layering from free left vertices.
        let mut queue = VecDeque::new();
        for u in 0..n {
            if mate_l[u] == FREE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = mate_r[v];
                if w == FREE {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        let mut augmented = false;
        let mut iter = vec![0usize; n];
        for u in 0..n {
            if mate_l[u] == FREE && augment(u, &adj, &mut mate_l, &mut mate_r, &mut dist, &mut iter) {
                augmented = true;
            }
        }
        if !augmented {
            break;
        }
    }

    let matching: Vec<(usize, usize)> = (0..n).filter(|&u| mate_l[u] != FREE).map(|u| (u, mate_l[u])).collect();
    if matching.len() == n {
        return OneFactor {
            has_factor: true,
            matching,
            hall_violator: None,
        };
    }

    // Alternating reachability from the free out-copies.
    let mut in_set = vec![false; n];
    let mut nbhd = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&u| mate_l[u] == FREE).collect();
    for &u in &queue {
        in_set[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !nbhd[v] {
                nbhd[v] = true;
                let w = mate_r[v];
                if w != FREE && !in_set[w] {
                    in_set[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let set: Vec<usize> = (0..n).filter(|&u| in_set[u]).collect();
    let neighbourhood: Vec<usize> = (0..n).filter(|&v| nbhd[v]).collect();
    OneFactor {
        has_factor: false,
        matching,
        hall_violator: Some(HallViolator { set, neighbourhood }),
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    dist: &mut [usize],
    iter: &mut [usize],
) -> bool {
    while iter[u] < adj[u].len() {
        let v = adj[u][iter[u]];
        iter[u] += 1;
        let w = mate_r[v];
        let ok = if w == FREE {
            true
        } else if dist[w] == dist[u] + 1 {
            augment(w, adj, mate_l, mate_r, dist, iter)
        } else {
            false
        };
        if ok {
            mate_l[u] = v;
            mate_r[v] = u;
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}
