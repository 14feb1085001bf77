//! Experiment orchestration: the exhaustive small-`n` check, sampled
//! sweeps, the tournament sweep, and JSON + CSV report emission.
//!
//! Every sweep is deterministic given its [`SweepConfig`]; per-trial
//! generators are independent ChaCha8 streams, so the thread count never
//! changes a result. Only the tournament CSV carries wall-clock timings.

mod config;
mod enumerate;
mod sampled;
mod tourney;

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use config::{parse_strategies, Experiment, NRange, SampleModel, SweepConfig};
pub use enumerate::{verify_conjecture1_exhaustive, Conjecture1Summary, MAX_ENUMERATION_N};
pub use sampled::{
    expanderthm_keeps, sample_digraph, trial_rng, verify_expanderthm_sampled, verify_robust_g_sampled,
    verify_theorem2_sampled, Exception, InstanceRow, RobustGSummary, SampledSummary,
};
pub use tourney::{thomassen_sweep, TourneyRow, TourneySummary};

/// Draws allowed per wanted instance when sampling for the degree
/// hypothesis.
const ROBUST_G_DRAW_FACTOR: u64 = 200;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "results", rename_all = "kebab-case")]
pub enum SweepOutput {
    Conjecture1(Vec<Conjecture1Summary>),
    Sampled(Vec<SampledSummary>),
    RobustG(RobustGSummary),
    Tourney(TourneySummary),
}

impl SweepOutput {
    /// Exceptions archived by the run, across all `n`.
    pub fn exception_count(&self) -> u64 {
        match self {
            SweepOutput::Conjecture1(v) => v.iter().map(|s| s.counterexample_count).sum(),
            SweepOutput::Sampled(v) => v.iter().map(|s| s.exceptions.len() as u64).sum(),
            SweepOutput::RobustG(s) => s.exceptions.len() as u64,
            SweepOutput::Tourney(s) => s.exceptions.len() as u64,
        }
    }
}

/// Runs the experiment named in `cfg` over every `n` of its range.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutput> {
    cfg.validate()?;
    let ns = cfg.n.values();
    Ok(match cfg.experiment {
        Experiment::Conjecture1 => SweepOutput::Conjecture1(
            ns.iter()
                .map(|&n| verify_conjecture1_exhaustive(n))
                .collect::<Result<_>>()?,
        ),
        Experiment::Theorem2 => SweepOutput::Sampled(
            ns.iter()
                .map(|&n| {
                    verify_theorem2_sampled(n, cfg.eta, cfg.trials, cfg.seed, cfg.model, cfg.density, &cfg.budget)
                })
                .collect::<Result<_>>()?,
        ),
        Experiment::Expanderthm => SweepOutput::Sampled(
            ns.iter()
                .map(|&n| {
                    verify_expanderthm_sampled(
                        n,
                        cfg.eta,
                        cfg.nu,
                        cfg.tau,
                        cfg.trials,
                        cfg.seed,
                        cfg.model,
                        cfg.density,
                        &cfg.budget,
                    )
                })
                .collect::<Result<_>>()?,
        ),
        Experiment::RobustG => SweepOutput::RobustG(verify_robust_g_sampled(
            &ns,
            cfg.eta,
            cfg.tau,
            cfg.trials,
            cfg.trials.saturating_mul(ROBUST_G_DRAW_FACTOR),
            cfg.seed,
            cfg.model,
            cfg.density,
        )?),
        Experiment::Thomassen => SweepOutput::Tourney(thomassen_sweep(&ns, &cfg.strategies, cfg.seeds, &cfg.budget)?),
    })
}

#[derive(Serialize)]
struct Conjecture1Row {
    n: usize,
    enumerated: u64,
    nash_williams: u64,
    filtered: u64,
    verified: u64,
    counterexamples: u64,
}

const INSTANCE_HEADER: [&str; 5] = ["trial", "n", "edges", "kept", "outcome"];
const TOURNEY_HEADER: [&str; 6] = ["n", "strategy", "r", "seed", "hamiltonian", "runtime_ms"];
const CONJECTURE1_HEADER: [&str; 6] = [
    "n",
    "enumerated",
    "nash_williams",
    "filtered",
    "verified",
    "counterexamples",
];

fn csv_string<R: Serialize>(header: &[&str], rows: &[R]) -> Result<String> {
    let err = |e: csv::Error| Error::Internal(format!("csv encoding failed: {e}"));
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).map_err(err)?;
    for r in rows {
        w.serialize(r).map_err(err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Internal(format!("csv flush failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

/// Per-instance CSV: one row per sampled instance or tournament trial,
/// or one row per `n` for the exhaustive check.
pub fn report_csv(out: &SweepOutput) -> Result<String> {
    match out {
        SweepOutput::Conjecture1(v) => {
            let rows: Vec<Conjecture1Row> = v
                .iter()
                .map(|s| Conjecture1Row {
                    n: s.n,
                    enumerated: s.enumerated,
                    nash_williams: s.nash_williams,
                    filtered: s.filtered,
                    verified: s.verified,
                    counterexamples: s.counterexample_count,
                })
                .collect();
            csv_string(&CONJECTURE1_HEADER, &rows)
        }
        SweepOutput::Sampled(v) => {
            let rows: Vec<&InstanceRow> = v.iter().flat_map(|s| &s.rows).collect();
            csv_string(&INSTANCE_HEADER, &rows)
        }
        SweepOutput::RobustG(s) => csv_string(&INSTANCE_HEADER, &s.rows),
        SweepOutput::Tourney(s) => csv_string(&TOURNEY_HEADER, &s.rows),
    }
}

/// JSON summary: config echo, counts, and exceptions with their digraphs
/// in text format.
pub fn report_json(cfg: &SweepConfig, out: &SweepOutput) -> serde_json::Value {
    serde_json::json!({
        "config": cfg,
        "exception_count": out.exception_count(),
        "output": out,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io {
            path: dir.display().to_string(),
            msg: e.to_string(),
        })?;
    }
    std::fs::write(path, contents).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

/// Writes the JSON summary and the CSV rows.
pub fn write_report(json_path: &Path, csv_path: &Path, cfg: &SweepConfig, out: &SweepOutput) -> Result<()> {
    let json = serde_json::to_string_pretty(&report_json(cfg, out))
        .map_err(|e| Error::Internal(format!("json encoding failed: {e}")))?;
    write_file(json_path, &(json + "\n"))?;
    write_file(csv_path, &report_csv(out)?)
}
