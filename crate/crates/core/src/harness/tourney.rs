use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::sampled::Exception;
use crate::constructions::regular_tournament;
use crate::error::Result;
use crate::solver::SolveBudget;
use crate::text::to_text;
use crate::tournament::{thomassen_trial, RemovalStrategy};

/// CSV row: `n, strategy, r, seed, hamiltonian, runtime_ms`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TourneyRow {
    pub n: usize,
    pub strategy: RemovalStrategy,
    pub r: usize,
    pub seed: u64,
    /// `true`, `false` or `unknown`.
    pub hamiltonian: String,
    pub runtime_ms: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TourneySummary {
    pub trials: u64,
    pub hamiltonian: u64,
    pub non_hamiltonian: u64,
    pub unknown: u64,
    /// Trials that also ran the forced-edge contraction.
    pub merge_checks: u64,
    pub merge_disagreements: u64,
    pub exceptions: Vec<Exception>,
    #[serde(skip)]
    pub rows: Vec<TourneyRow>,
}

/// Every odd `n` of `ns`, every strategy, every `r ≤ (n−3)/2` and seeds
/// `0..seeds`, in that nesting order.
pub fn thomassen_sweep(
    ns: &[usize],
    strategies: &[RemovalStrategy],
    seeds: u64,
    budget: &SolveBudget,
) -> Result<TourneySummary> {
    let mut cells = Vec::new();
    for &n in ns.iter().filter(|&&n| n % 2 == 1 && n >= 3) {
        for &st in strategies {
            for r in 0..=(n - 3) / 2 {
                for seed in 0..seeds {
                    cells.push((n, st, r, seed));
                }
            }
        }
    }
    let run = |&(n, st, r, seed): &(usize, RemovalStrategy, usize, u64)| -> Result<_> {
        let t = regular_tournament(n)?;
        let start = Instant::now();
        let rep = thomassen_trial(&t, r, st, seed, budget)?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        Ok((rep, t, ms))
    };
    #[cfg(feature = "parallel")]
    let results: Vec<_> = {
        use rayon::prelude::*;
        cells.par_iter().map(run).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<_> = cells.iter().map(run).collect::<Result<_>>()?;

    let mut s = TourneySummary::default();
    for (rep, t, ms) in results {
        s.trials += 1;
        let label = match rep.hamiltonian {
            Some(true) => {
                s.hamiltonian += 1;
                "true"
            }
            Some(false) => {
                s.non_hamiltonian += 1;
                "false"
            }
            None => {
                s.unknown += 1;
                "unknown"
            }
        };
        if let Some(mc) = &rep.merge_check {
            s.merge_checks += 1;
            s.merge_disagreements += u64::from(!mc.agrees);
        }
        let disagreement = rep.merge_check.as_ref().is_some_and(|m| !m.agrees);
        if rep.hamiltonian == Some(false) || disagreement {
            s.exceptions.push(Exception {
                trial: rep.seed,
                reason: format!(
                    "n = {}, {} with r = {}: hamiltonian = {:?}, removed {:?}, merge check {:?}",
                    rep.n, rep.strategy, rep.r, rep.hamiltonian, rep.removed, rep.merge_check
                ),
                digraph: to_text(&t.without_edges(&rep.removed)),
            });
        }
        s.rows.push(TourneyRow {
            n: rep.n,
            strategy: rep.strategy,
            r: rep.r,
            seed: rep.seed,
            hamiltonian: label.into(),
            runtime_ms: (ms * 1e3).round() / 1e3,
        });
    }
    Ok(s)
}
