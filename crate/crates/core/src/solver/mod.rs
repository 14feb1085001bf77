//! Exact decision procedures: Hamilton cycles, cycles of a given length,
//! (vertex-)pancyclicity, 1-factors, and the rotation step that turns a
//! Hamilton cycle of `G − x` into a cycle of any length through `x`.
//!
//! Up to [`SolveBudget::max_n_dp`] vertices the answers come from subset
//! dynamic programming and are always definitive. Above it a pruned
//! backtracking search runs under a node budget and reports
//! [`CycleSearch::Unknown`] when the budget runs out.

mod cycles;
mod hamilton;
mod matching;
mod rotation;

use serde::{Deserialize, Serialize};

use crate::digraph::CycleWitness;

pub use cycles::{
    cycle_lengths_dp, cycle_of_length, cycle_of_length_backtrack, is_pancyclic, is_vertex_pancyclic,
    shortest_cycle_through, PancyclicReport, VertexLengths, VertexPancyclicReport,
};
pub use hamilton::{hamilton_backtrack, hamilton_dp, has_hamilton_cycle};
pub use matching::{has_one_factor, HallViolator, OneFactor};
pub use rotation::{high_total_degree_vertex, rotation_cycle_through, HighDegreeVertex};

/// Hard limit for the subset DP; `2^(n−1)` words must fit in memory.
pub const DP_HARD_LIMIT: usize = 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveBudget {
    /// Largest `n` handled by the exponential DP (at most [`DP_HARD_LIMIT`]).
    pub max_n_dp: usize,
    /// Search-tree nodes the backtracking solver may expand per query.
    pub node_budget: u64,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget {
            max_n_dp: 22,
            node_budget: 20_000_000,
        }
    }
}

impl SolveBudget {
    pub fn new(max_n_dp: usize, node_budget: u64) -> Self {
        SolveBudget {
            max_n_dp: max_n_dp.clamp(1, DP_HARD_LIMIT),
            node_budget: node_budget.max(1),
        }
    }

    pub(crate) fn use_dp(&self, n: usize) -> bool {
        n <= self.max_n_dp.min(DP_HARD_LIMIT)
    }
}

/// Outcome of an exact cycle search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum CycleSearch {
    Found {
        witness: CycleWitness,
    },
    /// The search was exhaustive and found nothing.
    Absent,
    /// The node budget ran out first.
    Unknown,
}

impl CycleSearch {
    pub fn found(witness: CycleWitness) -> Self {
        CycleSearch::Found { witness }
    }

    pub fn witness(&self) -> Option<&CycleWitness> {
        match self {
            CycleSearch::Found { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, CycleSearch::Found { .. })
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, CycleSearch::Absent)
    }

    /// `Some(true)` found, `Some(false)` absent, `None` unknown.
    pub fn verdict(&self) -> Option<bool> {
        match self {
            CycleSearch::Found { .. } => Some(true),
            CycleSearch::Absent => Some(false),
            CycleSearch::Unknown => None,
        }
    }
}

impl From<Option<CycleWitness>> for CycleSearch {
    fn from(w: Option<CycleWitness>) -> Self {
        match w {
            Some(witness) => CycleSearch::Found { witness },
            None => CycleSearch::Absent,
        }
    }
}

/// Node counter shared by a backtracking run.
pub(crate) struct Nodes {
    left: u64,
}

impl Nodes {
    pub(crate) fn new(budget: u64) -> Self {
        Nodes { left: budget }
    }

    /// Spends one node; `false` once the budget is exhausted.
    #[inline]
    pub(crate) fn tick(&mut self) -> bool {
        if self.left == 0 {
            return false;
        }
        self.left -= 1;
        true
    }
}
