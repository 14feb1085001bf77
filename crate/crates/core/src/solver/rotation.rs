use serde::{Deserialize, Serialize};

use crate::digraph::{CycleWitness, Digraph};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HighDegreeVertex {
    pub vertex: usize,
    pub total_degree: usize,
    /// Smallest `j` with `d⁺_j + d⁻_{n−j} ≥ n`, when the degree sequences
    /// alone certify that such a vertex exists.
    pub witness_index: Option<usize>,
}

/// A vertex with `d⁺(x) + d⁻(x) ≥ n`: the one of largest total degree,
/// lowest index on ties. `None` when no vertex qualifies or `n < 2`.
pub fn high_total_degree_vertex(g: &Digraph) -> Option<HighDegreeVertex> {
    let n = g.n();
    if n < 2 {
        return None;
    }
    let seq = g.degree_sequences();
    let witness_index = (1..n).find(|&j| {
        let (a, b) = (seq.out_at(j).unwrap(), seq.in_at(n - j).unwrap());
        a + b >= n
    });
    let (vertex, total_degree) =
        (0..n)
            .map(|v| (v, g.out_degree(v) + g.in_degree(v)))
            .fold(None, |best: Option<(usize, usize)>, (v, d)| match best {
                Some((_, bd)) if bd >= d => best,
                _ => Some((v, d)),
            })?;
    debug_assert!(witness_index.is_none() || total_degree >= n);
    (total_degree >= n).then_some(HighDegreeVertex {
        vertex,
        total_degree,
        witness_index,
    })
}

/// Turns a Hamilton cycle `x_0 … x_{n−2}` of `G − x` into the cycle
/// `x, x_i, …, x_{i+t−2}` of length `t`, for the first `i` with
/// `x → x_i` and `x_{i+t−2} → x` (indices mod `n − 1`).
pub fn rotation_cycle_through(g: &Digraph, x: usize, t: usize, ham: &CycleWitness) -> Result<CycleWitness> {
    let n = g.n();
    g.check_vertex(x)?;
    if n < 3 {
        return Err(Error::Precondition(format!("need n >= 3, got {n}")));
    }
    if t < 2 || t > n {
        return Err(Error::Precondition(format!("cycle length {t} outside 2..={n}")));
    }
    let total = g.out_degree(x) + g.in_degree(x);
    if total < n {
        return Err(Error::Precondition(format!(
            "vertex {x} has total degree {total} < n = {n}"
        )));
    }
    if ham.len() != n - 1 || ham.contains(x) {
        return Err(Error::Precondition(format!(
            "cycle of length {} is not a Hamilton cycle of G - {x}",
            ham.len()
        )));
    }
    ham.validate(g)
        .map_err(|e| Error::Precondition(format!("invalid Hamilton cycle of G - {x}: {e}")))?;

    let h = &ham.vertices;
    let m = n - 1;
    let i = (0..m)
        .find(|&i| g.has_edge(x, h[i]) && g.has_edge(h[(i + t - 2) % m], x))
        .ok_or_else(|| {
            Error::Internal(format!(
                "no rotation index for t = {t} at vertex {x} despite total degree {total}"
            ))
        })?;
    let mut cycle = Vec::with_capacity(t);
    cycle.push(x);
    cycle.extend((0..t - 1).map(|k| h[(i + k) % m]));
    let w = CycleWitness::new(cycle);
    w.validate(g)?;
    Ok(w)
}
