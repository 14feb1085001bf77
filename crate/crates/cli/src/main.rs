//! `dicycle`: degree conditions, extremal constructions, exact cycle search
//! and the experiment sweeps, from the command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use dicycle::conditions::{Condition, IndexRounding};
use dicycle::constructions::{generate, Family, FamilyParams};
use dicycle::expansion::{check_expansion, ExpansionKind, ExpansionMode, RobustParams};
use dicycle::harness::{
    parse_strategies, report_csv, report_json, run_sweep, thomassen_sweep, verify_conjecture1_exhaustive, write_report,
    Experiment, NRange, SweepConfig, SweepOutput,
};
use dicycle::solver::{
    cycle_of_length, has_hamilton_cycle, has_one_factor, is_pancyclic, is_vertex_pancyclic, rotation_cycle_through,
};
use dicycle::text::{parse_text, to_text};
use dicycle::tournament::{keevash_sudakov_check, thomassen_trial, RemovalStrategy};
use dicycle::{parse_rational, ApproxParams, CycleWitness, Digraph, Rational, SolveBudget};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "dicycle",
    version,
    about = "Hamilton cycles in digraphs: conditions, constructions, search"
)]
struct Cli {
    /// Seed for every randomised step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Output file (or prefix for `sweep` and `enumerate`); stdout if absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Rounding of the index n − i − ηn in the approximate conditions.
    #[arg(long, global = true, value_enum, default_value_t = Rounding::Ceil)]
    rounding: Rounding,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rounding {
    Ceil,
    Floor,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate degree conditions on a digraph file.
    Check {
        file: PathBuf,
        /// Condition name, or `all`.
        #[arg(long, default_value = "all")]
        condition: String,
        /// η for the approximate conditions, e.g. `1/5`.
        #[arg(long)]
        eta: Option<String>,
    },
    /// Write a family member in text format plus a JSON sidecar.
    Gen {
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Exact cycle search on a digraph file.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        what: SolveWhat,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check (robust) outexpansion.
    Expand {
        #[arg(value_enum)]
        kind: Kind,
        file: PathBuf,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        tau: String,
        /// Sample this many sets instead of enumerating all of them.
        #[arg(long)]
        sampled: Option<u64>,
    },
    /// Regular-tournament experiments.
    Tourney {
        #[command(subcommand)]
        cmd: TourneyCmd,
    },
    /// Run a sweep described by a key-value config file.
    Sweep { config: PathBuf },
    /// Exhaustive Nash-Williams check over every labelled digraph.
    Enumerate {
        /// `n` or `a:b`, within 3..=6.
        #[arg(long)]
        n: String,
    },
}

#[derive(Args)]
struct SolveWhat {
    /// A cycle of exactly this length.
    #[arg(long)]
    length: Option<usize>,
    #[arg(long)]
    pancyclic: bool,
    #[arg(long)]
    vertex_pancyclic: bool,
    #[arg(long)]
    one_factor: bool,
    /// A cycle of length `--t` through this vertex by rotating a Hamilton
    /// cycle of G minus the vertex.
    #[arg(long, requires = "t")]
    rotate: Option<usize>,
    #[arg(long, requires = "rotate")]
    t: Option<usize>,
}

impl SolveWhat {
    fn modes(&self) -> usize {
        [
            self.length.is_some(),
            self.pancyclic,
            self.vertex_pancyclic,
            self.one_factor,
            self.rotate.is_some(),
        ]
        .into_iter()
        .filter(|&b| b)
        .count()
    }
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = SolveBudget::default().max_n_dp)]
    max_n_dp: usize,
    #[arg(long, default_value_t = SolveBudget::default().node_budget)]
    node_budget: u64,
}

impl BudgetArgs {
    fn budget(&self) -> SolveBudget {
        SolveBudget::new(self.max_n_dp, self.node_budget)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Robust,
    Plain,
}

#[derive(Subcommand)]
enum TourneyCmd {
    /// Remove edges from regular tournaments and test Hamiltonicity.
    Sweep {
        #[arg(long, default_value = "7:15:2")]
        n_range: String,
        #[arg(long, default_value = "all")]
        strategies: String,
        #[arg(long, default_value_t = 200)]
        seeds: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// One removal trial on the regular tournament of order `n`.
    Trial {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "random")]
        strategy: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Minimise e(S, T) over equal-size disjoint sets of an oriented digraph.
    Density {
        file: PathBuf,
        #[arg(long)]
        c: String,
        #[arg(long, default_value_t = 200)]
        trials: u64,
    },
}

fn rational(s: &str) -> Result<Rational> {
    parse_rational(s).with_context(|| format!("bad rational {s:?}"))
}

fn read_digraph(path: &Path) -> Result<Digraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_text(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_out(out: Option<&Path>, contents: &str) -> Result<()> {
    match out {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            }
            fs::write(p, contents).with_context(|| format!("writing {}", p.display()))
        }
        None => {
            std::io::stdout().write_all(contents.as_bytes())?;
            Ok(())
        }
    }
}

fn emit(out: Option<&Path>, v: &Value) -> Result<()> {
    write_out(out, &(serde_json::to_string_pretty(v)? + "\n"))
}

fn with_suffix(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn check(cli: &Cli, file: &Path, condition: &str, eta: Option<&str>) -> Result<Value> {
    let g = read_digraph(file)?;
    let rounding = match cli.rounding {
        Rounding::Ceil => IndexRounding::Ceil,
        Rounding::Floor => IndexRounding::Floor,
    };
    let params = eta
        .map(|e| Ok::<_, anyhow::Error>(ApproxParams::new(rational(e)?)?.with_rounding(rounding)))
        .transpose()?;
    let conditions: Vec<Condition> = if condition == "all" {
        Condition::ALL
            .into_iter()
            .filter(|c| params.is_some() || !c.needs_eta())
            .filter(|&c| c != Condition::Chvatal || g.edges().all(|(u, v)| g.has_edge(v, u)))
            .collect()
    } else {
        let c = Condition::ALL
            .into_iter()
            .find(|c| c.name() == condition)
            .with_context(|| {
                let names: Vec<_> = Condition::ALL.iter().map(|c| c.name()).collect();
                format!("unknown condition {condition:?}; known: {}", names.join(", "))
            })?;
        vec![c]
    };
    let mut reports = serde_json::Map::new();
    for c in conditions {
        reports.insert(c.name().into(), serde_json::to_value(c.evaluate(&g, params)?)?);
    }
    Ok(json!({
        "n": g.n(),
        "edges": g.edge_count(),
        "degree_sequences": g.degree_sequences(),
        "strongly_connected": g.is_strongly_connected(),
        "conditions": reports,
    }))
}

fn gen(cli: &Cli, family: &str, n: usize, k: Option<usize>, alpha: Option<&str>) -> Result<()> {
    let family: Family = family.parse()?;
    let alpha = alpha.map(rational).transpose()?;
    let (g, spec, expected) = generate(family, FamilyParams { n, k, alpha })?;
    let sidecar = json!({"spec": spec, "edges": g.edge_count(), "expected": expected});
    match &cli.out {
        Some(p) => {
            write_out(Some(p), &to_text(&g))?;
            emit(Some(&with_suffix(p, "json")), &sidecar)
        }
        None => write_out(None, &to_text(&g)),
    }
}

fn solve(file: &Path, what: &SolveWhat, budget: SolveBudget) -> Result<Value> {
    if what.modes() > 1 {
        bail!("choose at most one of --length, --pancyclic, --vertex-pancyclic, --one-factor, --rotate");
    }
    let g = read_digraph(file)?;
    Ok(if let Some(t) = what.length {
        json!({"length": t, "search": cycle_of_length(&g, t, &budget)?})
    } else if what.pancyclic {
        serde_json::to_value(is_pancyclic(&g, &budget))?
    } else if what.vertex_pancyclic {
        serde_json::to_value(is_vertex_pancyclic(&g, &budget))?
    } else if what.one_factor {
        serde_json::to_value(has_one_factor(&g))?
    } else if let (Some(x), Some(t)) = (what.rotate, what.t) {
        let (rest, back) = g.remove_vertex(x)?;
        let Some(h) = has_hamilton_cycle(&rest, &budget).witness().cloned() else {
            bail!("G minus vertex {x} has no Hamilton cycle (or the search ran out of budget)");
        };
        let ham = CycleWitness::new(h.vertices.iter().map(|&v| back[v]).collect());
        json!({"vertex": x, "length": t, "cycle": rotation_cycle_through(&g, x, t, &ham)?})
    } else {
        json!({"hamilton": has_hamilton_cycle(&g, &budget)})
    })
}

fn set_threads(jobs: usize) -> Result<()> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .context("configuring the worker pool")
}

fn run(cli: &Cli) -> Result<()> {
    set_threads(cli.jobs)?;
    let out = cli.out.as_deref();
    match &cli.cmd {
        Cmd::Check { file, condition, eta } => emit(out, &check(cli, file, condition, eta.as_deref())?),
        Cmd::Gen { family, n, k, alpha } => gen(cli, family, *n, *k, alpha.as_deref()),
        Cmd::Solve { file, what, budget } => emit(out, &solve(file, what, budget.budget())?),
        Cmd::Expand {
            kind,
            file,
            nu,
            tau,
            sampled,
        } => {
            let g = read_digraph(file)?;
            let p = RobustParams::new(rational(nu)?, rational(tau)?)?;
            let mode = match sampled {
                Some(trials) => ExpansionMode::Sampled {
                    trials: *trials,
                    seed: cli.seed,
                },
                None => ExpansionMode::Exhaustive,
            };
            let kind = match kind {
                Kind::Robust => ExpansionKind::Robust,
                Kind::Plain => ExpansionKind::Plain,
            };
            emit(out, &serde_json::to_value(check_expansion(&g, p, mode, kind)?)?)
        }
        Cmd::Tourney { cmd } => tourney(cli, cmd),
        Cmd::Sweep { config } => {
            let text = fs::read_to_string(config).with_context(|| format!("reading {}", config.display()))?;
            let mut cfg = SweepConfig::parse(&text).with_context(|| format!("parsing {}", config.display()))?;
            if let Some(p) = out {
                cfg.out = Some(p.display().to_string());
            }
            let result = run_sweep(&cfg)?;
            finish_sweep(&cfg, &result)
        }
        Cmd::Enumerate { n } => {
            let range: NRange = n.parse()?;
            let cfg = SweepConfig {
                experiment: Experiment::Conjecture1,
                n: range,
                out: out.map(|p| p.display().to_string()),
                ..SweepConfig::default()
            };
            let summaries = range
                .values()
                .into_iter()
                .map(verify_conjecture1_exhaustive)
                .collect::<dicycle::Result<Vec<_>>>()?;
            finish_sweep(&cfg, &SweepOutput::Conjecture1(summaries))
        }
    }
}

/// Writes `<out>.json` and `<out>.csv` when a prefix is set, otherwise
/// prints the JSON summary.
fn finish_sweep(cfg: &SweepConfig, result: &SweepOutput) -> Result<()> {
    match &cfg.out {
        Some(prefix) => {
            let prefix = Path::new(prefix);
            let (jp, cp) = (with_suffix(prefix, "json"), with_suffix(prefix, "csv"));
            write_report(&jp, &cp, cfg, result)?;
            eprintln!(
                "wrote {} and {} ({} exceptions)",
                jp.display(),
                cp.display(),
                result.exception_count()
            );
            Ok(())
        }
        None => emit(None, &report_json(cfg, result)),
    }
}

fn tourney(cli: &Cli, cmd: &TourneyCmd) -> Result<()> {
    let out = cli.out.as_deref();
    match cmd {
        TourneyCmd::Sweep {
            n_range,
            strategies,
            seeds,
            budget,
        } => {
            let ns = n_range.parse::<NRange>()?.values();
            let strategies = parse_strategies(strategies)?;
            let s = thomassen_sweep(&ns, &strategies, *seeds, &budget.budget())?;
            write_out(out, &report_csv(&SweepOutput::Tourney(s.clone()))?)?;
            eprintln!(
                "{} trials: {} Hamiltonian, {} not, {} unknown; {} merge checks, {} disagreements",
                s.trials, s.hamiltonian, s.non_hamiltonian, s.unknown, s.merge_checks, s.merge_disagreements
            );
            for e in &s.exceptions {
                eprintln!("exception (seed {}): {}", e.trial, e.reason);
            }
            Ok(())
        }
        TourneyCmd::Trial { n, r, strategy, budget } => {
            let strategy: RemovalStrategy = strategy.parse()?;
            let t = dicycle::constructions::regular_tournament(*n)?;
            let rep = thomassen_trial(&t, *r, strategy, cli.seed, &budget.budget())?;
            emit(out, &serde_json::to_value(rep)?)
        }
        TourneyCmd::Density { file, c, trials } => {
            let g = read_digraph(file)?;
            let rep = keevash_sudakov_check(&g, rational(c)?, *trials, cli.seed)?;
            emit(out, &serde_json::to_value(rep)?)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
