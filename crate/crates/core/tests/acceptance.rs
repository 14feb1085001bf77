//! Acceptance suite: one PASS/FAIL line per criterion, each with its time
//! limit. Runs as a plain binary so every line is printed.
//!
//! Set `DICYCLE_ACCEPT_N6=1` to add the n = 6 exhaustive run to criterion 7.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dicycle::conditions::{
    approx_posa, bermond_thomassen_false, chvatal_undirected, nash_williams, nw3, ApproxParams, Clause, Failure,
};
use dicycle::constructions::{
    bermond_thomassen, chvatal_double_counterexample, chvatal_double_degrees, figure1_extremal, intro_extremal,
    oriented_posa_counterexample, oriented_posa_layout, two_cliques_disconnected, two_cliques_odd,
    vertex_pancyclic_counterexample,
};
use dicycle::expansion::{is_robust_outexpander, random_orientation, ExpansionMode, RobustParams, Verdict};
use dicycle::harness::{
    thomassen_sweep, trial_rng, verify_conjecture1_exhaustive, verify_expanderthm_sampled, verify_robust_g_sampled,
    Exception, SampleModel,
};
use dicycle::solver::{
    hamilton_backtrack, hamilton_dp, has_hamilton_cycle, has_one_factor, rotation_cycle_through, shortest_cycle_through,
};
use dicycle::tournament::RemovalStrategy;
use dicycle::{dominates, CycleSearch, CycleWitness, Digraph, Rational, SolveBudget};
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

fn artifacts_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance")
}

/// Writes archived exceptions for a criterion; returns the file written.
fn archive(name: &str, exceptions: &[Exception]) -> Option<PathBuf> {
    if exceptions.is_empty() {
        return None;
    }
    let dir = artifacts_dir();
    std::fs::create_dir_all(&dir).ok()?;
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, serde_json::to_string_pretty(exceptions).ok()?).ok()?;
    Some(path)
}

fn non_hamiltonian(g: &Digraph) -> bool {
    has_hamilton_cycle(g, &SolveBudget::default()).is_absent()
}

fn c1_figure1_goldens() -> Outcome {
    let g = figure1_extremal(9, 3).map_err(|e| e.to_string())?;
    let ds = g.degree_sequences();
    ensure!(ds.out_sorted == [2, 2, 3, 3, 8, 8, 8, 8, 8], "out {:?}", ds.out_sorted);
    ensure!(ds.in_sorted == [4, 4, 4, 4, 5, 5, 8, 8, 8], "in {:?}", ds.in_sorted);
    ensure!(g.is_strongly_connected(), "not strongly connected");
    ensure!(hamilton_dp(&g).unwrap().is_none(), "Hamiltonian");
    Ok("sequences match, strongly connected, no Hamilton cycle".into())
}

fn c2_intro_sweep() -> Outcome {
    let mut count = 0;
    for n in 5..=12 {
        for k in (1..).take_while(|&k| 2 * k < n) {
            let g = intro_extremal(n, k).map_err(|e| e.to_string())?;
            let want: Vec<usize> = std::iter::repeat_n(k, k)
                .chain(std::iter::repeat_n(n - 1 - k, n - 2 * k))
                .chain(std::iter::repeat_n(n - 1, k))
                .collect();
            let ds = g.degree_sequences();
            ensure!(ds.out_sorted == want && ds.in_sorted == want, "n={n} k={k}: {ds:?}");
            ensure!(g.is_strongly_connected(), "n={n} k={k}: not strongly connected");
            ensure!(hamilton_dp(&g).unwrap().is_none(), "n={n} k={k}: Hamiltonian");
            count += 1;
        }
    }
    Ok(format!("{count} (n, k) pairs"))
}

fn c3_bermond_thomassen() -> Outcome {
    for n in [6, 8, 10] {
        let g = bermond_thomassen(n).map_err(|e| e.to_string())?;
        let rep = bermond_thomassen_false(&g).unwrap();
        ensure!(rep.holds, "n={n}: condition fails at {:?}", rep.first_failure);
        ensure!(non_hamiltonian(&g), "n={n}: Hamiltonian");
    }
    Ok("n = 6, 8, 10 satisfy the condition and are non-Hamiltonian".into())
}

fn c4_conjecture8_ledger() -> Outcome {
    let g = two_cliques_disconnected(8).unwrap();
    ensure!(nash_williams(&g).unwrap().holds, "two cliques (8): (i)/(ii) fail");
    let rep = nw3(&g).unwrap();
    let iii = Failure {
        index: 4,
        clause: Clause::Iii,
    };
    ensure!(
        rep.fails_exactly(&[iii]),
        "two cliques (8): nw3 failures {:?}",
        rep.failures
    );
    let ds = g.degree_sequences();
    ensure!(
        ds.out_at(4) == Some(3) && ds.in_at(4) == Some(3),
        "d_4 = {:?}/{:?}",
        ds.out_at(4),
        ds.in_at(4)
    );

    let g = two_cliques_odd(9).unwrap();
    let rep = nash_williams(&g).unwrap();
    let only = Failure {
        index: 4,
        clause: Clause::I,
    };
    ensure!(rep.fails_exactly(&[only]), "two cliques odd (9): {:?}", rep.failures);

    let degrees = chvatal_double_degrees(8).unwrap();
    ensure!(
        chvatal_undirected(&degrees, 8).unwrap().holds,
        "Chvátal fails on {degrees:?}"
    );
    let d = chvatal_double_counterexample(8).unwrap();
    let rep = nw3(&d).unwrap();
    ensure!(
        rep.failures.iter().any(|f| f.clause == Clause::Iii),
        "double satisfies (iii): {:?}",
        rep.failures
    );
    Ok("(iii) separates all three examples".into())
}

fn c5_proposition5() -> Outcome {
    let g = vertex_pancyclic_counterexample(3, 200).unwrap();
    let p = ApproxParams::new(r(1, 81)).unwrap();
    let rep = approx_posa(&g, p).unwrap();
    ensure!(rep.holds, "approx_posa fails at {:?}", rep.first_failure);
    let (len3, _) = shortest_cycle_through(&g, 0)
        .unwrap()
        .ok_or("no cycle through x (k=3)")?;
    ensure!(len3 >= 3, "k=3: cycle of length {len3} through x");
    let g = vertex_pancyclic_counterexample(4, 1000).unwrap();
    let (len4, w) = shortest_cycle_through(&g, 0)
        .unwrap()
        .ok_or("no cycle through x (k=4)")?;
    ensure!(len4 == 4 && w.is_valid_in(&g), "k=4: shortest length {len4}");
    Ok(format!("shortest cycles through x: {len3} (k=3), {len4} (k=4)"))
}

fn c6_proposition6() -> Outcome {
    let alpha = r(3, 10);
    let g = oriented_posa_counterexample(alpha, 48).map_err(|e| e.to_string())?;
    let layout = oriented_posa_layout(alpha, 48).unwrap();
    ensure!(g.is_oriented(), "has a 2-cycle");
    let bound: Vec<Rational> = std::iter::repeat_n(r(72, 5), 8)
        .chain(std::iter::repeat_n(r(18, 1), 40))
        .collect();
    let ds = g.degree_sequences();
    let as_rat = |v: &[usize]| v.iter().map(|&d| Rational::from_integer(d as i64)).collect::<Vec<_>>();
    ensure!(
        dominates(&as_rat(&ds.out_sorted), &bound).unwrap(),
        "out {:?}",
        ds.out_sorted
    );
    ensure!(
        dominates(&as_rat(&ds.in_sorted), &bound).unwrap(),
        "in {:?}",
        ds.in_sorted
    );
    let f = has_one_factor(&g);
    ensure!(!f.has_factor, "has a 1-factor");
    let h = f.hall_violator.ok_or("no certificate")?;
    ensure!(h.neighbourhood.len() < h.set.len(), "certificate is not deficient");
    ensure!(
        g.out_neighbourhood(&h.set).unwrap() == h.neighbourhood,
        "certificate neighbourhood wrong"
    );
    ensure!(
        layout.e.clone().all(|v| h.set.contains(&v)),
        "violator misses part of E"
    );
    ensure!(non_hamiltonian(&g), "Hamilton search did not report absence");
    Ok(format!(
        "min degrees {}/{}, Hall violator |S| = {}, |N+(S)| = {}",
        ds.out_sorted[0],
        ds.in_sorted[0],
        h.set.len(),
        h.neighbourhood.len()
    ))
}

fn c7_conjecture1() -> Outcome {
    // (n, enumerated, nash_williams, filtered, verified, counterexamples)
    let goldens: [(usize, u64, u64, u64, u64, u64); 4] = [
        (3, 64, 7, 7, 7, 0),
        (4, 4096, 186, 180, 180, 0),
        (5, 1_048_576, 40_140, 40_140, 40_140, 0),
        (6, 1_073_741_824, 44_387_496, 44_385_856, 44_384_776, 1_080),
    ];
    let with_n6 = std::env::var_os("DICYCLE_ACCEPT_N6").is_some();
    let mut notes = Vec::new();
    for &(n, en, nw, fi, ve, ce) in &goldens {
        if n == 6 && !with_n6 {
            notes.push("n=6 skipped".to_string());
            continue;
        }
        let s = verify_conjecture1_exhaustive(n).unwrap();
        let got = (
            s.enumerated,
            s.nash_williams,
            s.filtered,
            s.verified,
            s.counterexample_count,
        );
        ensure!(got == (en, nw, fi, ve, ce), "n={n}: counts {got:?} differ from golden");
        if n <= 5 {
            ensure!(s.counterexample_count == 0, "n={n}: counterexample found");
        }
        notes.push(format!(
            "n={n}: {fi} filtered, {} counterexamples",
            s.counterexample_count
        ));
    }
    Ok(notes.join("; "))
}

/// Direct evaluation of the definition with integer cross-multiplication.
fn brute_force_robust(g: &Digraph, nu: (i64, i64), tau: (i64, i64)) -> bool {
    let n = g.n() as i64;
    for mask in 0u32..1 << n {
        let s: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
        let size = s.len() as i64;
        if !(size * tau.1 > tau.0 * n && size * tau.1 < (tau.1 - tau.0) * n) {
            continue;
        }
        let rn = (0..g.n())
            .filter(|&x| {
                let c = s.iter().filter(|&&y| g.has_edge(y, x)).count() as i64;
                c * nu.1 >= nu.0 * n
            })
            .count() as i64;
        if (rn - size) * nu.1 < nu.0 * n {
            return false;
        }
    }
    true
}

fn c8_expansion() -> Outcome {
    let params = [
        ((1, 20), (1, 5)),
        ((1, 10), (1, 4)),
        ((3, 20), (1, 5)),
        ((1, 8), (1, 3)),
    ];
    let mut expanders = 0;
    for trial in 0..200u64 {
        let mut rng = trial_rng(8, trial);
        let n = rng.gen_range(5..=14);
        let density = rng.gen_range(0.2..0.95);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.gen_bool(density) {
                    edges.push((u, v));
                }
            }
        }
        let g = Digraph::from_edges(n, edges).unwrap();
        let (nu, tau) = params[trial as usize % params.len()];
        let p = RobustParams::new(r(nu.0, nu.1), r(tau.0, tau.1)).unwrap();
        let v = is_robust_outexpander(&g, p, ExpansionMode::Exhaustive).unwrap();
        let oracle = brute_force_robust(&g, nu, tau);
        ensure!(
            v.is_expander() == Some(oracle),
            "trial {trial} (n={n}): {:?} vs oracle {oracle}",
            v.verdict
        );
        expanders += u32::from(oracle);
    }
    let c = RobustParams::new(r(3, 20), r(1, 5)).unwrap();
    let v = is_robust_outexpander(&Digraph::directed_cycle(10), c, ExpansionMode::Exhaustive).unwrap();
    ensure!(v.verdict == Verdict::NotExpander, "C10 passes");
    let p = RobustParams::new(r(1, 20), r(1, 5)).unwrap();
    let v = is_robust_outexpander(&two_cliques_disconnected(12).unwrap(), p, ExpansionMode::Exhaustive).unwrap();
    ensure!(v.verdict == Verdict::NotExpander, "two cliques (12) passes");
    let v = is_robust_outexpander(&Digraph::complete(10), p, ExpansionMode::Exhaustive).unwrap();
    ensure!(v.verdict == Verdict::Expander, "K10 fails");
    Ok(format!("200 instances agree with the oracle ({expanders} expanders)"))
}

fn c9_robust_g() -> Outcome {
    let s = verify_robust_g_sampled(
        &[12, 13, 14, 15, 16],
        r(3, 10),
        r(1, 4),
        500,
        100_000,
        9,
        SampleModel::Mixed,
        r(4, 5),
    )
    .unwrap();
    ensure!(
        s.hypothesis_held == 500,
        "only {} instances met the hypothesis",
        s.hypothesis_held
    );
    ensure!(
        s.min_semi_degree_ok == 500,
        "{} of 500 have min semi-degree >= eta n",
        s.min_semi_degree_ok
    );
    let archived = archive("robust_g_exceptions", &s.exceptions);
    Ok(format!(
        "500 of {} draws met the hypothesis; semi-degree 500/500; robust expanders {}/500; archived {}",
        s.sampled,
        s.robust_expander,
        archived.map_or("nothing".into(), |p| p.display().to_string())
    ))
}

fn c10_expanderthm() -> Outcome {
    let s = verify_expanderthm_sampled(
        14,
        r(1, 4),
        r(1, 20),
        r(1, 4),
        500,
        10,
        SampleModel::Mixed,
        r(1, 2),
        &SolveBudget::default(),
    )
    .unwrap();
    let archived = archive("expanderthm_exceptions", &s.exceptions);
    ensure!(s.kept > 0, "no instance kept");
    ensure!(
        s.hamiltonian == s.kept,
        "{} of {} kept instances Hamiltonian; exceptions archived at {archived:?}",
        s.hamiltonian,
        s.kept
    );
    Ok(format!("{} of 500 kept, all Hamiltonian", s.kept))
}

fn c11_thomassen() -> Outcome {
    let s = thomassen_sweep(&[7, 9, 11, 13], &RemovalStrategy::ALL, 200, &SolveBudget::default()).unwrap();
    let archived = archive("thomassen_exceptions", &s.exceptions);
    ensure!(
        s.non_hamiltonian == 0 && s.unknown == 0 && s.merge_disagreements == 0,
        "{} non-Hamiltonian, {} unknown, {} merge disagreements; archived at {archived:?}",
        s.non_hamiltonian,
        s.unknown,
        s.merge_disagreements
    );
    Ok(format!(
        "{} trials Hamiltonian, {} merge cross-checks agree",
        s.trials, s.merge_checks
    ))
}

fn c12_solver_equivalence() -> Outcome {
    let budget = SolveBudget::default();
    let mut found = 0;
    for trial in 0..1000u64 {
        let mut rng = trial_rng(12, trial);
        let n = rng.gen_range(2..=12);
        let density = [0.15, 0.3, 0.5, 0.7][trial as usize % 4];
        let mut edges = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.gen_bool(density) {
                    edges.push((u, v));
                }
            }
        }
        let g = Digraph::from_edges(n, edges).unwrap();
        let dp = hamilton_dp(&g).unwrap();
        let bt = hamilton_backtrack(&g, &budget);
        ensure!(
            bt != CycleSearch::Unknown,
            "trial {trial}: backtracking ran out of budget"
        );
        ensure!(
            dp.is_some() == bt.is_found(),
            "trial {trial}: DP {} vs backtracking {bt:?}",
            dp.is_some()
        );
        for w in dp.iter().chain(bt.witness()) {
            ensure!(
                w.len() == n && w.is_valid_in(&g),
                "trial {trial}: invalid witness {w:?}"
            );
        }
        found += u32::from(dp.is_some());
    }
    Ok(format!("1000 digraphs agree ({found} Hamiltonian)"))
}

fn c13_rotation() -> Outcome {
    let mut checked = 0;
    for n in 3..=12 {
        let g = Digraph::complete(n);
        let ham = CycleWitness::new((1..n).collect());
        for t in 2..=n {
            let c = rotation_cycle_through(&g, 0, t, &ham).map_err(|e| format!("n={n} t={t}: {e}"))?;
            ensure!(c.len() == t && c.contains(0) && c.is_valid_in(&g), "n={n} t={t}: {c:?}");
            checked += 1;
        }
    }
    Ok(format!("{checked} (n, t) pairs"))
}

fn c14_orientation() -> Outcome {
    let k10 = Digraph::complete(10);
    let mut forward = std::collections::BTreeMap::<(usize, usize), u32>::new();
    let seeds = 2000;
    for seed in 0..seeds {
        let t = random_orientation(&k10, seed);
        ensure!(t.is_oriented() && t.edge_count() == 45, "seed {seed}: not a tournament");
        for (u, v) in t.edges() {
            if u < v {
                *forward.entry((u, v)).or_default() += 1;
            }
        }
    }
    let mut worst: f64 = 0.5;
    for (u, v) in (0..10).flat_map(|u| (u + 1..10).map(move |v| (u, v))) {
        let f = f64::from(forward.get(&(u, v)).copied().unwrap_or(0)) / seeds as f64;
        ensure!((0.45..=0.55).contains(&f), "pair ({u},{v}): frequency {f}");
        if (f - 0.5).abs() > (worst - 0.5).abs() {
            worst = f;
        }
    }
    Ok(format!(
        "all 45 pair frequencies in [0.45, 0.55], most extreme {worst:.4}"
    ))
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 14] = [
        (1, "construction goldens", secs(1), c1_figure1_goldens),
        (2, "intro_extremal sweep", secs(30), c2_intro_sweep),
        (3, "Bermond-Thomassen counterexample", secs(5), c3_bermond_thomassen),
        (4, "clause (iii) ledger", secs(1), c4_conjecture8_ledger),
        (5, "vertex-pancyclicity counterexample", secs(10), c5_proposition5),
        (6, "oriented Posa counterexample", secs(30), c6_proposition6),
        (
            7,
            "exhaustive Nash-Williams check",
            secs(if std::env::var_os("DICYCLE_ACCEPT_N6").is_some() {
                3600
            } else {
                60
            }),
            c7_conjecture1,
        ),
        (8, "expansion suite", secs(60), c8_expansion),
        (9, "robust expansion from degrees", secs(300), c9_robust_g),
        (10, "expander Hamiltonicity sweep", secs(300), c10_expanderthm),
        (11, "tournament removal sweep", secs(600), c11_thomassen),
        (12, "solver oracle equivalence", secs(120), c12_solver_equivalence),
        (13, "rotation trick", secs(10), c13_rotation),
        (14, "random orientation statistics", secs(30), c14_orientation),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        let res = match res {
            Ok(_) if took > limit => Err(format!("took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match res {
            Ok(detail) => println!("criterion {id:>2} PASS  {name} ({took:.2?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name} ({took:.2?}): {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 14 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
