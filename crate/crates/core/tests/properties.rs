use dicycle::conditions::{
    approx_nw, approx_posa, bermond_thomassen_false, capped_approx_nw, chvatal_undirected, nash_williams, nw3,
    pancyclic_2conn_condition, posa_digraph, ApproxParams,
};
use dicycle::expansion::{random_orientation, robust_out_neighbourhood};
use dicycle::solver::{has_hamilton_cycle, has_one_factor, is_pancyclic};
use dicycle::text::{parse_text, to_text};
use dicycle::tournament::{choose_removals, merge_endpoints, RemovalStrategy};
use dicycle::{dominates, ConditionReport, Digraph, Rational, SolveBudget};
use proptest::prelude::*;

fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    digraph_in(1, max_n)
}

fn digraph_in(min_n: usize, max_n: usize) -> impl Strategy<Value = Digraph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let edges = (0..n * n)
                .filter(|&i| bits[i] && i / n != i % n)
                .map(|i| (i / n, i % n));
            Digraph::from_edges(n, edges).unwrap()
        })
    })
}

/// A digraph together with an edge superset on the same vertices.
fn digraph_and_superset(max_n: usize) -> impl Strategy<Value = (Digraph, Digraph)> {
    digraph_in(3, max_n).prop_flat_map(|g| {
        let n = g.n();
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |extra| {
            let add = (0..n * n)
                .filter(|&i| extra[i] && i / n != i % n && !g.has_edge(i / n, i % n))
                .map(|i| (i / n, i % n));
            let sup = g.with_edges(add).unwrap();
            (g.clone(), sup)
        })
    })
}

fn eta() -> impl Strategy<Value = Rational> {
    (1i64..10).prop_map(|p| Rational::new(p, 20))
}

type Check = fn(&Digraph, ApproxParams) -> dicycle::Result<ConditionReport>;

fn all_conditions() -> Vec<(&'static str, Check)> {
    vec![
        ("nash_williams", |g, _| nash_williams(g)),
        ("approx_nw", approx_nw),
        ("posa_digraph", |g, _| posa_digraph(g)),
        ("approx_posa", approx_posa),
        ("nw3", |g, _| nw3(g)),
        ("capped_approx_nw", capped_approx_nw),
        ("bermond_thomassen_false", |g, _| bermond_thomassen_false(g)),
        ("pancyclic_2conn_condition", |g, _| pancyclic_2conn_condition(g)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 256,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn reverse_is_an_involution_swapping_sequences(g in digraph(10)) {
        let r = g.reverse();
        prop_assert_eq!(&r.reverse(), &g);
        prop_assert_eq!(r.degree_sequences(), g.degree_sequences().swapped());
        prop_assert_eq!(r.is_strongly_connected(), g.is_strongly_connected());
    }

    #[test]
    fn min_semi_degree_is_the_first_sorted_entry(g in digraph(10)) {
        let ds = g.degree_sequences();
        let want = ds.out_at(1).unwrap().min(ds.in_at(1).unwrap());
        prop_assert_eq!(g.min_semi_degree(), want);
    }

    #[test]
    fn text_format_round_trips(g in digraph(12)) {
        let text = to_text(&g);
        prop_assert!(text.ends_with('\n'));
        prop_assert_eq!(parse_text(&text).unwrap(), g);
    }

    #[test]
    fn domination_is_a_partial_order(
        mut a in proptest::collection::vec(0u8..6, 5),
        mut b in proptest::collection::vec(0u8..6, 5),
        mut c in proptest::collection::vec(0u8..6, 5),
    ) {
        a.sort_unstable();
        b.sort_unstable();
        c.sort_unstable();
        prop_assert!(dominates(&a, &a).unwrap());
        if dominates(&a, &b).unwrap() && dominates(&b, &a).unwrap() {
            prop_assert_eq!(&a, &b);
        }
        if dominates(&a, &b).unwrap() && dominates(&b, &c).unwrap() {
            prop_assert!(dominates(&a, &c).unwrap());
        }
    }

    #[test]
    fn conditions_are_monotone_under_adding_edges((g, sup) in digraph_and_superset(9), e in eta()) {
        let p = ApproxParams::new(e).unwrap();
        for (name, check) in all_conditions() {
            if check(&g, p).unwrap().holds {
                prop_assert!(check(&sup, p).unwrap().holds, "{} lost by adding edges", name);
            }
        }
    }

    #[test]
    fn conditions_are_reversal_symmetric(g in digraph_in(3, 10), e in eta()) {
        let p = ApproxParams::new(e).unwrap();
        let r = g.reverse();
        prop_assert_eq!(nash_williams(&g).unwrap().holds, nash_williams(&r).unwrap().holds);
        prop_assert_eq!(approx_nw(&g, p).unwrap().holds, approx_nw(&r, p).unwrap().holds);
        prop_assert_eq!(posa_digraph(&g).unwrap().holds, posa_digraph(&r).unwrap().holds);
        prop_assert_eq!(nw3(&g).unwrap().holds, nw3(&r).unwrap().holds);
    }

    #[test]
    fn smaller_eta_is_weaker(g in digraph_in(3, 10), a in eta(), b in eta()) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if approx_nw(&g, ApproxParams::new(hi).unwrap()).unwrap().holds {
            prop_assert!(approx_nw(&g, ApproxParams::new(lo).unwrap()).unwrap().holds);
        }
    }

    #[test]
    fn report_fields_are_consistent(g in digraph_in(3, 10), e in eta()) {
        let p = ApproxParams::new(e).unwrap();
        for (_, check) in all_conditions() {
            let rep = check(&g, p).unwrap();
            prop_assert_eq!(rep.holds, rep.first_failure.is_none());
            prop_assert_eq!(rep.first_failure, rep.failures.first().copied());
            prop_assert!(rep.failures.iter().all(|f| f.index >= 1 && f.index <= g.n()));
        }
    }

    #[test]
    fn chvatal_graphs_double_to_nash_williams(
        n in 3usize..10,
        bits in proptest::collection::vec(prop::bool::weighted(0.7), 45),
    ) {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .enumerate()
            .filter(|&(i, _)| bits[i])
            .map(|(_, e)| e)
            .collect();
        let g = Digraph::from_undirected(n, pairs).unwrap();
        if chvatal_undirected(&g.out_degrees(), n).unwrap().holds {
            prop_assert!(nash_williams(&g).unwrap().holds);
        }
    }

    #[test]
    fn nw3_implies_strong_connectivity(g in digraph_in(3, 10)) {
        if nw3(&g).unwrap().holds {
            prop_assert!(g.is_strongly_connected());
        }
    }

    #[test]
    fn hamiltonicity_is_reversal_invariant(g in digraph(9)) {
        let budget = SolveBudget::default();
        let a = has_hamilton_cycle(&g, &budget);
        let b = has_hamilton_cycle(&g.reverse(), &budget);
        prop_assert_eq!(a.verdict(), b.verdict());
        if let Some(w) = a.witness() {
            prop_assert!(w.reversed().is_valid_in(&g.reverse()));
        }
    }

    #[test]
    fn hamiltonian_implies_one_factor_and_pancyclic_implies_hamiltonian(g in digraph_in(2, 8)) {
        let budget = SolveBudget::default();
        let ham = has_hamilton_cycle(&g, &budget);
        if let Some(w) = ham.witness() {
            prop_assert!(w.is_valid_in(&g) && w.len() == g.n());
            prop_assert!(has_one_factor(&g).has_factor);
        }
        if is_pancyclic(&g, &budget).pancyclic == Some(true) {
            prop_assert!(ham.is_found());
        }
    }

    #[test]
    fn one_factor_certificates_check_out(g in digraph(10)) {
        let f = has_one_factor(&g);
        match (f.has_factor, &f.hall_violator) {
            (true, None) => {
                let cycles = f.cycles(g.n()).unwrap();
                prop_assert_eq!(cycles.iter().map(|c| c.len()).sum::<usize>(), g.n());
                prop_assert!(cycles.iter().all(|c| c.is_valid_in(&g)));
            }
            (false, Some(h)) => {
                prop_assert!(h.neighbourhood.len() < h.set.len());
                prop_assert_eq!(&g.out_neighbourhood(&h.set).unwrap(), &h.neighbourhood);
            }
            other => prop_assert!(false, "inconsistent result {:?}", other),
        }
    }

    #[test]
    fn robust_neighbourhood_shrinks_as_nu_grows(
        g in digraph(12),
        mask in any::<u16>(),
        a in 1i64..=20,
        b in 1i64..=20,
    ) {
        let s: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
        let (lo, hi) = (a.min(b), a.max(b));
        let small = robust_out_neighbourhood(&g, &s, Rational::new(hi, 20)).unwrap();
        let large = robust_out_neighbourhood(&g, &s, Rational::new(lo, 20)).unwrap();
        prop_assert!(small.iter().all(|v| large.contains(v)));
        // ν > 0 makes every threshold at least 1.
        for &x in &large {
            prop_assert!(s.iter().any(|&y| g.has_edge(y, x)));
        }
    }

    #[test]
    fn random_orientation_breaks_exactly_the_two_cycles(g in digraph(10), seed in any::<u64>()) {
        let o = random_orientation(&g, seed);
        prop_assert!(o.is_oriented());
        prop_assert!(o.edges().all(|(u, v)| g.has_edge(u, v)));
        prop_assert_eq!(o.edge_count(), g.edge_count() - g.two_cycle_count());
        prop_assert_eq!(random_orientation(&g, seed), o);
    }

    #[test]
    fn removals_are_distinct_existing_edges(
        half in 2usize..7,
        strategy in prop::sample::select(RemovalStrategy::ALL.to_vec()),
        r_frac in 0.0f64..1.0,
        seed in any::<u64>(),
    ) {
        let n = 2 * half + 1;
        let t = dicycle::constructions::regular_tournament(n).unwrap();
        let r = ((n - 3) / 2) as f64 * r_frac;
        let r = r.round() as usize;
        let a = choose_removals(&t, r, strategy, seed).unwrap();
        prop_assert_eq!(a.len(), r);
        prop_assert!(a.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(a.iter().all(|&(u, v)| t.has_edge(u, v)));
        prop_assert_eq!(choose_removals(&t, r, strategy, seed).unwrap(), a);
    }

    #[test]
    fn merged_cycles_lift_to_hamilton_cycles(g in digraph(9), pick in any::<prop::sample::Index>()) {
        let edges: Vec<_> = g.edges().collect();
        prop_assume!(!edges.is_empty() && g.n() >= 3);
        let (x, y) = edges[pick.index(edges.len())];
        let m = merge_endpoints(&g, x, y).unwrap();
        prop_assert_eq!(m.graph.n(), g.n() - 1);
        let res = has_hamilton_cycle(&m.graph, &SolveBudget::default());
        if let Some(c) = res.witness() {
            let lifted = m.lift_cycle(c);
            prop_assert!(lifted.is_valid_in(&g) && lifted.len() == g.n());
            prop_assert!(lifted.edges().any(|e| e == (x, y)));
        }
    }
}
