//! Degree-sequence conditions for Hamiltonicity of digraphs.
//!
//! Every check works on the sorted out- and indegree sequences and uses
//! 1-based indices, so `d⁺ᵢ` is `ds.out_at(i)`. A disjunct that refers to an
//! index outside `1..=n` is false. Ranges written "i < n/2" run over
//! `i = 1..=⌈n/2⌉−1`, and "i < (n−1)/2" over `i = 1..=⌈(n−1)/2⌉−1`.
//!
//! Thresholds involving `ηn` are compared exactly with rational `η`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::digraph::{DegreeSequences, Digraph};
use crate::error::{Error, Result};
use crate::ratio::{at_least, ceil_usize, floor_usize, in_open_unit, of_n, serde_rational, Rational};

/// Which part of a condition failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// Out-degree-first pair: `d⁺ᵢ ≥ … or d⁻_{…} ≥ …` (or the single pair of
    /// an undirected check).
    I,
    /// In-degree-first pair.
    Ii,
    /// The `i = n/2` clause for even `n`.
    Iii,
    /// `d⁺_{⌈n/2⌉} ≥ ⌈n/2⌉` for odd `n`.
    MedianOut,
    /// `d⁻_{⌈n/2⌉} ≥ ⌈n/2⌉` for odd `n`.
    MedianIn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    /// 1-based index `i` at which the clause failed.
    pub index: usize,
    pub clause: Clause,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: String,
    pub n: usize,
    pub holds: bool,
    /// Smallest failing index; ties broken (i) before (ii) before (iii).
    pub first_failure: Option<Failure>,
    /// Every failing (index, clause), in the same order.
    pub failures: Vec<Failure>,
    pub checked_range: String,
}

impl ConditionReport {
    fn new(condition: &str, n: usize, checked_range: String, mut failures: Vec<Failure>) -> Self {
        failures.sort_by_key(|f| (f.index, f.clause));
        ConditionReport {
            condition: condition.to_string(),
            n,
            holds: failures.is_empty(),
            first_failure: failures.first().copied(),
            failures,
            checked_range,
        }
    }

    /// `true` iff the only failures are the listed ones.
    pub fn fails_exactly(&self, expected: &[Failure]) -> bool {
        self.failures == expected
    }
}

/// How the non-integral index `n − i − ηn` is rounded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexRounding {
    /// `n − i − ⌈ηn⌉`: never weakens the hypothesis.
    #[default]
    Ceil,
    /// `n − i − ⌊ηn⌋`: the permissive reading.
    Floor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxParams {
    #[serde(with = "serde_rational")]
    pub eta: Rational,
    #[serde(default)]
    pub rounding: IndexRounding,
}

impl ApproxParams {
    pub fn new(eta: Rational) -> Result<Self> {
        if !in_open_unit(eta) {
            return Err(Error::InvalidParams(format!("eta = {eta} must lie in (0, 1)")));
        }
        Ok(ApproxParams {
            eta,
            rounding: IndexRounding::Ceil,
        })
    }

    pub fn with_rounding(mut self, rounding: IndexRounding) -> Self {
        self.rounding = rounding;
        self
    }

    /// ηn exactly.
    pub fn eta_n(&self, n: usize) -> Rational {
        of_n(self.eta, n)
    }

    /// The integer subtracted in the index `n − i − ηn`.
    pub fn index_shift(&self, n: usize) -> usize {
        match self.rounding {
            IndexRounding::Ceil => ceil_usize(self.eta_n(n)),
            IndexRounding::Floor => floor_usize(self.eta_n(n)),
        }
    }
}

/// Last `i` with `i < n/2`.
pub fn below_half(n: usize) -> usize {
    n.saturating_sub(1) / 2
}

/// Last `i` with `i < (n−1)/2`.
pub fn below_half_minus_one(n: usize) -> usize {
    n.saturating_sub(2) / 2
}

fn require_n(n: usize) -> Result<()> {
    if n < 3 {
        Err(Error::InvalidParams(format!("degree conditions need n >= 3, got {n}")))
    } else {
        Ok(())
    }
}

fn ge(value: Option<usize>, threshold: usize) -> bool {
    value.is_some_and(|d| d >= threshold)
}

fn ge_rat(value: Option<usize>, threshold: Rational) -> bool {
    value.is_some_and(|d| at_least(d, threshold))
}

fn range_text(last: usize, note: &str) -> String {
    if last == 0 {
        format!("no i ({note})")
    } else {
        format!("1 <= i <= {last} ({note})")
    }
}

/// Chvátal's condition for an undirected degree sequence `d₁ ≤ … ≤ dₙ`:
/// `dᵢ ≥ i+1 or d_{n−i} ≥ n−i` for all `i < n/2`.
pub fn chvatal_undirected(seq: &[usize], n: usize) -> Result<ConditionReport> {
    require_n(n)?;
    if seq.len() != n {
        return Err(Error::LengthMismatch(seq.len(), n));
    }
    let mut sorted = seq.to_vec();
    sorted.sort_unstable();
    let at = |i: usize| i.checked_sub(1).and_then(|j| sorted.get(j).copied());
    let last = below_half(n);
    let failures = (1..=last)
        .filter(|&i| !(ge(at(i), i + 1) || ge(at(n - i), n - i)))
        .map(|index| Failure {
            index,
            clause: Clause::I,
        })
        .collect();
    Ok(ConditionReport::new(
        "chvatal",
        n,
        range_text(last, "i < n/2"),
        failures,
    ))
}

/// Clauses (i)/(ii) for all `i < n/2` where each clause is supplied as a
/// predicate on `(ds, i)`.
fn paired<FI, FII>(ds: &DegreeSequences, clause_i: FI, clause_ii: FII) -> Vec<Failure>
where
    FI: Fn(&DegreeSequences, usize) -> bool,
    FII: Fn(&DegreeSequences, usize) -> bool,
{
    let mut failures = Vec::new();
    for i in 1..=below_half(ds.n()) {
        if !clause_i(ds, i) {
            failures.push(Failure {
                index: i,
                clause: Clause::I,
            });
        }
        if !clause_ii(ds, i) {
            failures.push(Failure {
                index: i,
                clause: Clause::Ii,
            });
        }
    }
    failures
}

fn nw_pair(ds: &DegreeSequences) -> Vec<Failure> {
    let n = ds.n();
    paired(
        ds,
        |d, i| ge(d.out_at(i), i + 1) || ge(d.in_at(n - i), n - i),
        |d, i| ge(d.in_at(i), i + 1) || ge(d.out_at(n - i), n - i),
    )
}

/// Degree condition of Nash-Williams' conjecture:
/// (i) `d⁺ᵢ ≥ i+1 or d⁻_{n−i} ≥ n−i`, (ii) `d⁻ᵢ ≥ i+1 or d⁺_{n−i} ≥ n−i`,
/// for all `i < n/2`. Strong connectivity is not part of this check.
pub fn nash_williams(g: &Digraph) -> Result<ConditionReport> {
    nash_williams_seq(&g.degree_sequences())
}

pub fn nash_williams_seq(ds: &DegreeSequences) -> Result<ConditionReport> {
    let n = ds.n();
    require_n(n)?;
    Ok(ConditionReport::new(
        "nash_williams",
        n,
        range_text(below_half(n), "i < n/2"),
        nw_pair(ds),
    ))
}

/// The approximate condition: (i) `d⁺ᵢ ≥ i+ηn or d⁻_{n−i−ηn} ≥ n−i`, (ii)
/// symmetric, for all `i < n/2`.
pub fn approx_nw(g: &Digraph, p: ApproxParams) -> Result<ConditionReport> {
    approx_nw_seq(&g.degree_sequences(), p)
}

pub fn approx_nw_seq(ds: &DegreeSequences, p: ApproxParams) -> Result<ConditionReport> {
    let n = ds.n();
    require_n(n)?;
    let eta_n = p.eta_n(n);
    let shift = p.index_shift(n);
    let idx = |i: usize| (n - i).checked_sub(shift).filter(|&j| j >= 1);
    let first = |i: usize| Rational::from_integer(i as i64) + eta_n;
    let failures = paired(
        ds,
        |d, i| ge_rat(d.out_at(i), first(i)) || ge(idx(i).and_then(|j| d.in_at(j)), n - i),
        |d, i| ge_rat(d.in_at(i), first(i)) || ge(idx(i).and_then(|j| d.out_at(j)), n - i),
    );
    Ok(ConditionReport::new(
        "approx_nw",
        n,
        range_text(below_half(n), "i < n/2"),
        failures,
    ))
}

/// As [`approx_nw`] with the first disjuncts capped: `d⁺ᵢ ≥ min{i+ηn, n/2}`.
pub fn capped_approx_nw(g: &Digraph, p: ApproxParams) -> Result<ConditionReport> {
    let ds = g.degree_sequences();
    let n = ds.n();
    require_n(n)?;
    let eta_n = p.eta_n(n);
    let shift = p.index_shift(n);
    let half = Rational::new(n as i64, 2);
    let idx = |i: usize| (n - i).checked_sub(shift).filter(|&j| j >= 1);
    let first = |i: usize| (Rational::from_integer(i as i64) + eta_n).min(half);
    let failures = paired(
        &ds,
        |d, i| ge_rat(d.out_at(i), first(i)) || ge(idx(i).and_then(|j| d.in_at(j)), n - i),
        |d, i| ge_rat(d.in_at(i), first(i)) || ge(idx(i).and_then(|j| d.out_at(j)), n - i),
    );
    Ok(ConditionReport::new(
        "capped_approx_nw",
        n,
        range_text(below_half(n), "i < n/2"),
        failures,
    ))
}

/// Pósa-type condition: `d⁺ᵢ, d⁻ᵢ ≥ i+1` for all `i < (n−1)/2`, and for odd
/// `n` additionally `d⁺_{⌈n/2⌉}, d⁻_{⌈n/2⌉} ≥ ⌈n/2⌉`.
pub fn posa_digraph(g: &Digraph) -> Result<ConditionReport> {
    posa_digraph_seq(&g.degree_sequences())
}

pub fn posa_digraph_seq(ds: &DegreeSequences) -> Result<ConditionReport> {
    let n = ds.n();
    require_n(n)?;
    let last = below_half_minus_one(n);
    let mut failures = Vec::new();
    for i in 1..=last {
        if !ge(ds.out_at(i), i + 1) {
            failures.push(Failure {
                index: i,
                clause: Clause::I,
            });
        }
        if !ge(ds.in_at(i), i + 1) {
            failures.push(Failure {
                index: i,
                clause: Clause::Ii,
            });
        }
    }
    let mut range = range_text(last, "i < (n-1)/2");
    if n % 2 == 1 {
        let m = n.div_ceil(2);
        range.push_str(&format!(", median index {m}"));
        if !ge(ds.out_at(m), m) {
            failures.push(Failure {
                index: m,
                clause: Clause::MedianOut,
            });
        }
        if !ge(ds.in_at(m), m) {
            failures.push(Failure {
                index: m,
                clause: Clause::MedianIn,
            });
        }
    }
    Ok(ConditionReport::new("posa", n, range, failures))
}

/// `d⁺ᵢ, d⁻ᵢ ≥ i+ηn` for all `i < n/2`.
pub fn approx_posa(g: &Digraph, p: ApproxParams) -> Result<ConditionReport> {
    approx_posa_seq(&g.degree_sequences(), p)
}

pub fn approx_posa_seq(ds: &DegreeSequences, p: ApproxParams) -> Result<ConditionReport> {
    let n = ds.n();
    require_n(n)?;
    let eta_n = p.eta_n(n);
    let first = |i: usize| Rational::from_integer(i as i64) + eta_n;
    let failures = paired(
        ds,
        |d, i| ge_rat(d.out_at(i), first(i)),
        |d, i| ge_rat(d.in_at(i), first(i)),
    );
    Ok(ConditionReport::new(
        "approx_posa",
        n,
        range_text(below_half(n), "i < n/2"),
        failures,
    ))
}

/// Clauses (i), (ii) of [`nash_williams`] plus, for even `n`,
/// (iii) `d⁺_{n/2} ≥ n/2 or d⁻_{n/2} ≥ n/2`.
pub fn nw3(g: &Digraph) -> Result<ConditionReport> {
    nw3_seq(&g.degree_sequences())
}

pub fn nw3_seq(ds: &DegreeSequences) -> Result<ConditionReport> {
    let n = ds.n();
    require_n(n)?;
    let mut failures = nw_pair(ds);
    let mut range = range_text(below_half(n), "i < n/2");
    if n.is_multiple_of(2) {
        let h = n / 2;
        range.push_str(&format!(", clause (iii) at {h}"));
        if !(ge(ds.out_at(h), h) || ge(ds.in_at(h), h)) {
            failures.push(Failure {
                index: h,
                clause: Clause::Iii,
            });
        }
    }
    Ok(ConditionReport::new("nw3", n, range, failures))
}

/// The same-sign variant, which does not force a Hamilton cycle:
/// `d⁺ᵢ ≥ i+1 or d⁺_{n−i} ≥ n−i` and `d⁻ᵢ ≥ i+1 or d⁻_{n−i} ≥ n−i`.
pub fn bermond_thomassen_false(g: &Digraph) -> Result<ConditionReport> {
    let ds = g.degree_sequences();
    let n = ds.n();
    require_n(n)?;
    let failures = paired(
        &ds,
        |d, i| ge(d.out_at(i), i + 1) || ge(d.out_at(n - i), n - i),
        |d, i| ge(d.in_at(i), i + 1) || ge(d.in_at(n - i), n - i),
    );
    Ok(ConditionReport::new(
        "bermond_thomassen",
        n,
        range_text(below_half(n), "i < n/2"),
        failures,
    ))
}

/// `d⁺ᵢ ≥ i+2 or d⁻_{n−i−1} ≥ n−i` and `d⁻ᵢ ≥ i+2 or d⁺_{n−i−1} ≥ n−i`,
/// for all `i < n/2` (pancyclicity for strongly 2-connected digraphs).
pub fn pancyclic_2conn_condition(g: &Digraph) -> Result<ConditionReport> {
    let ds = g.degree_sequences();
    let n = ds.n();
    require_n(n)?;
    let failures = paired(
        &ds,
        |d, i| ge(d.out_at(i), i + 2) || ge(d.in_at(n - i - 1), n - i),
        |d, i| ge(d.in_at(i), i + 2) || ge(d.out_at(n - i - 1), n - i),
    );
    Ok(ConditionReport::new(
        "pancyclic_2conn",
        n,
        range_text(below_half(n), "i < n/2"),
        failures,
    ))
}

/// Named conditions, for dispatch from the CLI and the sweep harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    Chvatal,
    NashWilliams,
    ApproxNw,
    Posa,
    ApproxPosa,
    Nw3,
    CappedApproxNw,
    BermondThomassen,
    Pancyclic2Conn,
}

impl Condition {
    pub const ALL: [Condition; 9] = [
        Condition::Chvatal,
        Condition::NashWilliams,
        Condition::ApproxNw,
        Condition::Posa,
        Condition::ApproxPosa,
        Condition::Nw3,
        Condition::CappedApproxNw,
        Condition::BermondThomassen,
        Condition::Pancyclic2Conn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::Chvatal => "chvatal",
            Condition::NashWilliams => "nash-williams",
            Condition::ApproxNw => "approx-nw",
            Condition::Posa => "posa",
            Condition::ApproxPosa => "approx-posa",
            Condition::Nw3 => "nw3",
            Condition::CappedApproxNw => "capped-approx-nw",
            Condition::BermondThomassen => "bermond-thomassen",
            Condition::Pancyclic2Conn => "pancyclic-2conn",
        }
    }

    pub fn needs_eta(self) -> bool {
        matches!(
            self,
            Condition::ApproxNw | Condition::ApproxPosa | Condition::CappedApproxNw
        )
    }

    /// Evaluates the condition. `chvatal` requires a symmetric digraph (the
    /// double of an undirected graph) and reads the undirected degrees.
    pub fn evaluate(self, g: &Digraph, eta: Option<ApproxParams>) -> Result<ConditionReport> {
        let need = || eta.ok_or_else(|| Error::InvalidParams(format!("{} needs --eta", self.name())));
        match self {
            Condition::Chvatal => {
                if g.edges().any(|(u, v)| !g.has_edge(v, u)) {
                    return Err(Error::InvalidParams(
                        "chvatal expects a symmetric digraph (every edge doubled)".into(),
                    ));
                }
                chvatal_undirected(&g.out_degrees(), g.n())
            }
            Condition::NashWilliams => nash_williams(g),
            Condition::ApproxNw => approx_nw(g, need()?),
            Condition::Posa => posa_digraph(g),
            Condition::ApproxPosa => approx_posa(g, need()?),
            Condition::Nw3 => nw3(g),
            Condition::CappedApproxNw => capped_approx_nw(g, need()?),
            Condition::BermondThomassen => bermond_thomassen_false(g),
            Condition::Pancyclic2Conn => pancyclic_2conn_condition(g),
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Condition::ALL
            .into_iter()
            .find(|c| c.name() == key)
            .ok_or_else(|| Error::InvalidParams(format!("unknown condition {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn eta(p: i64, q: i64) -> ApproxParams {
        ApproxParams::new(Rational::new(p, q)).unwrap()
    }

    fn fail(index: usize, clause: Clause) -> Failure {
        Failure { index, clause }
    }

    fn bipartite_double(half: usize) -> Digraph {
        let n = 2 * half;
        let edges = (0..half).flat_map(|a| (half..n).map(move |b| (a, b)));
        Digraph::from_undirected(n, edges).unwrap()
    }

    #[test]
    fn chvatal_examples() {
        assert!(chvatal_undirected(&[2, 2, 2], 3).unwrap().holds);
        let p3 = chvatal_undirected(&[1, 1, 2], 3).unwrap();
        assert_eq!(p3.first_failure, Some(fail(1, Clause::I)));
        assert!(chvatal_undirected(&[3, 3, 3, 3, 5, 5, 5, 5], 8).unwrap().holds);
        assert!(chvatal_undirected(&[1, 1], 2).is_err());
        assert!(chvatal_undirected(&[1, 1, 1], 4).is_err());
    }

    #[test]
    fn nash_williams_complete_and_cycle() {
        assert!(nash_williams(&Digraph::complete(6)).unwrap().holds);
        let c = nash_williams(&Digraph::directed_cycle(6)).unwrap();
        assert_eq!(c.first_failure, Some(fail(1, Clause::I)));
        assert!(nash_williams(&Digraph::complete(2)).is_err());
    }

    #[test]
    fn approx_nw_examples() {
        assert!(approx_nw(&Digraph::complete(20), eta(1, 10)).unwrap().holds);
        let c = approx_nw(&Digraph::directed_cycle(20), eta(1, 10)).unwrap();
        assert_eq!(c.first_failure, Some(fail(1, Clause::I)));
        assert!(ApproxParams::new(Rational::from_integer(1)).is_err());
        assert!(ApproxParams::new(Rational::zero()).is_err());
    }

    #[test]
    fn index_rounding_readings_differ() {
        let p = eta(1, 7);
        assert_eq!(p.index_shift(10), 2);
        assert_eq!(p.with_rounding(IndexRounding::Floor).index_shift(10), 1);
    }

    #[test]
    fn posa_examples() {
        assert!(posa_digraph(&Digraph::complete(5)).unwrap().holds);
        let c5 = posa_digraph(&Digraph::directed_cycle(5)).unwrap();
        assert_eq!(c5.first_failure, Some(fail(1, Clause::I)));
        assert!(approx_posa(&Digraph::complete(30), eta(1, 5)).unwrap().holds);
        let c30 = approx_posa(&Digraph::directed_cycle(30), eta(1, 5)).unwrap();
        assert_eq!(c30.first_failure, Some(fail(1, Clause::I)));
    }

    #[test]
    fn posa_median_clause_for_odd_n() {
        // Out/in sequences where only the median clause fails at n = 5:
        // d_1 >= 2 and d_3 = 2 < 3.
        let ds = DegreeSequences {
            out_sorted: vec![2, 2, 2, 4, 4],
            in_sorted: vec![3, 3, 3, 3, 3],
        };
        let r = posa_digraph_seq(&ds).unwrap();
        assert_eq!(r.failures, vec![fail(3, Clause::MedianOut)]);
    }

    #[test]
    fn nw3_complete_holds() {
        assert!(nw3(&Digraph::complete(6)).unwrap().holds);
    }

    #[test]
    fn capped_examples() {
        assert!(capped_approx_nw(&Digraph::complete(20), eta(1, 10)).unwrap().holds);
        let c = capped_approx_nw(&Digraph::directed_cycle(20), eta(1, 10)).unwrap();
        assert_eq!(c.first_failure, Some(fail(1, Clause::I)));
        // δ⁰ ≥ n/2 makes every capped first disjunct true.
        assert!(capped_approx_nw(&bipartite_double(5), eta(9, 10)).unwrap().holds);
    }

    #[test]
    fn bermond_thomassen_small() {
        assert!(bermond_thomassen_false(&Digraph::complete(5)).unwrap().holds);
        let c = bermond_thomassen_false(&Digraph::directed_cycle(5)).unwrap();
        assert_eq!(c.first_failure, Some(fail(1, Clause::I)));
    }

    #[test]
    fn pancyclic_condition_examples() {
        assert!(pancyclic_2conn_condition(&Digraph::complete(8)).unwrap().holds);
        // Complete bipartite digraph with classes of size 4: d⁺₃ = 4 < 5 and
        // d⁻₄ = 4 < 5, the first failure is at i = n/2 − 1 = 3.
        let r = pancyclic_2conn_condition(&bipartite_double(4)).unwrap();
        assert_eq!(r.first_failure, Some(fail(3, Clause::I)));
        let c6 = pancyclic_2conn_condition(&Digraph::directed_cycle(6)).unwrap();
        assert_eq!(c6.first_failure, Some(fail(1, Clause::I)));
    }

    #[test]
    fn condition_names_round_trip() {
        for c in Condition::ALL {
            assert_eq!(c.name().parse::<Condition>().unwrap(), c);
        }
        assert!("nope".parse::<Condition>().is_err());
        assert!(Condition::ApproxNw.evaluate(&Digraph::complete(4), None).is_err());
        assert!(Condition::Chvatal.evaluate(&Digraph::directed_cycle(4), None).is_err());
        assert!(Condition::Chvatal.evaluate(&Digraph::complete(4), None).unwrap().holds);
    }
}
