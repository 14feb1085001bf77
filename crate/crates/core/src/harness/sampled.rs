//! Sampled sweeps: random instances are filtered by a hypothesis and the
//! survivors checked exactly. Instances that pass a filter but fail the
//! conclusion are archived as exceptions, never asserted away.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::config::SampleModel;
use crate::conditions::{approx_nw, ApproxParams};
use crate::digraph::{Builder, Digraph};
use crate::error::{Error, Result};
use crate::expansion::{is_robust_outexpander, verify_robust_g, ExpansionMode, RobustGOutcome, RobustParams, Verdict};
use crate::ratio::{at_least, of_n, to_f64, Rational};
use crate::solver::{has_hamilton_cycle, CycleSearch, SolveBudget};
use crate::text::to_text;

/// Generator for trial `index`: stream `index` of the ChaCha8 keyed by
/// `seed`, so results do not depend on scheduling.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Digraph {
    let mut b = Builder::new(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                b.edge(u, v);
            }
        }
    }
    b.build()
}

/// One digraph from `model` (see [`SampleModel`]).
pub fn sample_digraph(model: SampleModel, n: usize, density: Rational, rng: &mut ChaCha8Rng) -> Digraph {
    let d = to_f64(density).clamp(0.0, 1.0);
    match model {
        SampleModel::Gnp => gnp(n, d, rng),
        SampleModel::Mixed => match rng.gen_range(0..3) {
            0 => gnp(n, d, rng),
            1 => {
                let p = rng.gen_range(d..=1.0);
                gnp(n, p, rng)
            }
            _ => {
                let mut verts: Vec<usize> = (0..n).collect();
                verts.shuffle(rng);
                let cut = rng.gen_range(n / 3..=n - n / 3);
                let mut side = vec![false; n];
                verts[..cut].iter().for_each(|&v| side[v] = true);
                let mut b = Builder::new(n);
                for u in 0..n {
                    for v in 0..n {
                        let p = if side[u] == side[v] { 0.9 } else { d / 2.0 };
                        if u != v && rng.gen_bool(p) {
                            b.edge(u, v);
                        }
                    }
                }
                b.build()
            }
        },
    }
}

/// One line of the per-instance CSV.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRow {
    pub trial: u64,
    pub n: usize,
    pub edges: usize,
    pub kept: bool,
    /// `skipped`, `hamiltonian`, `non_hamiltonian`, `unknown`, `verified`
    /// or `small_n_exception`.
    pub outcome: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exception {
    pub trial: u64,
    pub reason: String,
    /// The instance in text format.
    pub digraph: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampledSummary {
    pub experiment: String,
    pub n: usize,
    pub trials: u64,
    pub kept: u64,
    pub hamiltonian: u64,
    pub non_hamiltonian: u64,
    pub unknown: u64,
    pub exceptions: Vec<Exception>,
    #[serde(skip)]
    pub rows: Vec<InstanceRow>,
}

struct Outcome {
    row: InstanceRow,
    exception: Option<Exception>,
}

fn map_trials<T, F>(trials: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..trials).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..trials).map(f).collect()
    }
}

/// Decides Hamiltonicity of a kept instance; a found cycle must validate.
fn hamilton_outcome(trial: u64, g: &Digraph, budget: &SolveBudget) -> Result<Outcome> {
    let res = has_hamilton_cycle(g, budget);
    if let Some(w) = res.witness() {
        w.validate(g)
            .map_err(|e| Error::Internal(format!("trial {trial}: witness failed validation: {e}")))?;
    }
    let (outcome, exception) = match res {
        CycleSearch::Found { .. } => ("hamiltonian", None),
        CycleSearch::Absent => (
            "non_hamiltonian",
            Some(Exception {
                trial,
                reason: "kept instance has no Hamilton cycle".into(),
                digraph: to_text(g),
            }),
        ),
        CycleSearch::Unknown => ("unknown", None),
    };
    Ok(Outcome {
        row: InstanceRow {
            trial,
            n: g.n(),
            edges: g.edge_count(),
            kept: true,
            outcome: outcome.into(),
        },
        exception,
    })
}

fn skipped(trial: u64, g: &Digraph) -> Outcome {
    Outcome {
        row: InstanceRow {
            trial,
            n: g.n(),
            edges: g.edge_count(),
            kept: false,
            outcome: "skipped".into(),
        },
        exception: None,
    }
}

fn summarise(experiment: &str, n: usize, trials: u64, outcomes: Vec<Outcome>) -> SampledSummary {
    let mut s = SampledSummary {
        experiment: experiment.into(),
        n,
        trials,
        ..Default::default()
    };
    for o in outcomes {
        if o.row.kept {
            s.kept += 1;
        }
        match o.row.outcome.as_str() {
            "hamiltonian" => s.hamiltonian += 1,
            "non_hamiltonian" => s.non_hamiltonian += 1,
            "unknown" => s.unknown += 1,
            _ => {}
        }
        s.exceptions.extend(o.exception);
        s.rows.push(o.row);
    }
    s
}

/// Keeps instances meeting the approximate Nash-Williams condition with
/// parameter `η` and decides Hamiltonicity for each.
pub fn verify_theorem2_sampled(
    n: usize,
    eta: Rational,
    trials: u64,
    seed: u64,
    model: SampleModel,
    density: Rational,
    budget: &SolveBudget,
) -> Result<SampledSummary> {
    let p = ApproxParams::new(eta)?;
    let outcomes = map_trials(trials, |trial| {
        let g = sample_digraph(model, n, density, &mut trial_rng(seed, trial));
        if approx_nw(&g, p)?.holds {
            hamilton_outcome(trial, &g, budget)
        } else {
            Ok(skipped(trial, &g))
        }
    })?;
    Ok(summarise("theorem2", n, trials, outcomes))
}

/// Keeps instances with `δ⁰ ≥ ηn` that are exhaustively verified robust
/// `(ν, τ)`-outexpanders and decides Hamiltonicity for each.
#[allow(clippy::too_many_arguments)]
pub fn verify_expanderthm_sampled(
    n: usize,
    eta: Rational,
    nu: Rational,
    tau: Rational,
    trials: u64,
    seed: u64,
    model: SampleModel,
    density: Rational,
    budget: &SolveBudget,
) -> Result<SampledSummary> {
    let rp = RobustParams::new(nu, tau)?;
    let outcomes = map_trials(trials, |trial| {
        let g = sample_digraph(model, n, density, &mut trial_rng(seed, trial));
        if expanderthm_keeps(&g, eta, rp)? {
            hamilton_outcome(trial, &g, budget)
        } else {
            Ok(skipped(trial, &g))
        }
    })?;
    Ok(summarise("expanderthm", n, trials, outcomes))
}

/// The filter of [`verify_expanderthm_sampled`].
pub fn expanderthm_keeps(g: &Digraph, eta: Rational, rp: RobustParams) -> Result<bool> {
    if !at_least(g.min_semi_degree(), of_n(eta, g.n())) {
        return Ok(false);
    }
    let v = is_robust_outexpander(g, rp, ExpansionMode::Exhaustive)?;
    Ok(v.verdict == Verdict::Expander)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobustGSummary {
    pub n_values: Vec<usize>,
    /// Instances drawn, including those failing the hypothesis.
    pub sampled: u64,
    pub hypothesis_held: u64,
    pub min_semi_degree_ok: u64,
    pub robust_expander: u64,
    pub exceptions: Vec<Exception>,
    #[serde(skip)]
    pub rows: Vec<InstanceRow>,
}

/// Draws instances round-robin over `n_values` until `target` of them
/// satisfy the degree hypothesis (or `max_draws` is reached), then checks
/// both conclusions on each.
#[allow(clippy::too_many_arguments)]
pub fn verify_robust_g_sampled(
    n_values: &[usize],
    eta: Rational,
    tau: Rational,
    target: u64,
    max_draws: u64,
    seed: u64,
    model: SampleModel,
    density: Rational,
) -> Result<RobustGSummary> {
    if n_values.is_empty() {
        return Err(Error::InvalidParams("no n values".into()));
    }
    let mut s = RobustGSummary {
        n_values: n_values.to_vec(),
        ..Default::default()
    };
    // Batches keep the draw order fixed while still running in parallel.
    let batch = 256u64;
    let mut next = 0u64;
    while s.hypothesis_held < target && next < max_draws {
        let end = (next + batch).min(max_draws);
        let results = map_trials(end - next, |k| {
            let trial = next + k;
            let n = n_values[(trial % n_values.len() as u64) as usize];
            let g = sample_digraph(model, n, density, &mut trial_rng(seed, trial));
            let rep = verify_robust_g(&g, eta, tau)?;
            let outcome = match rep.outcome {
                RobustGOutcome::HypothesisFalse => "skipped",
                RobustGOutcome::Verified => "verified",
                RobustGOutcome::SmallNException => "small_n_exception",
            };
            let exception = (rep.outcome == RobustGOutcome::SmallNException).then(|| Exception {
                trial,
                reason: format!(
                    "min semi-degree ok: {:?}, robust expander: {:?}",
                    rep.min_semi_degree_ok,
                    rep.expansion.as_ref().map(|e| e.verdict)
                ),
                digraph: to_text(&g),
            });
            let row = InstanceRow {
                trial,
                n,
                edges: g.edge_count(),
                kept: rep.hypothesis.holds,
                outcome: outcome.into(),
            };
            Ok((
                Outcome { row, exception },
                rep.min_semi_degree_ok == Some(true),
                rep.expansion.is_some_and(|e| e.verdict == Verdict::Expander),
            ))
        })?;
        for (o, deg_ok, exp_ok) in results {
            if s.hypothesis_held >= target {
                break;
            }
            s.sampled += 1;
            if o.row.kept {
                s.hypothesis_held += 1;
                s.min_semi_degree_ok += u64::from(deg_ok);
                s.robust_expander += u64::from(exp_ok);
            }
            s.exceptions.extend(o.exception);
            s.rows.push(o.row);
        }
        next = end;
    }
    Ok(s)
}
