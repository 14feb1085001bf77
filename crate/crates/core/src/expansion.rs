//! Robust out-neighbourhoods, (robust) outexpander checks, the degree
//! hypothesis that implies robust outexpansion, and random orientations.
//!
//! All thresholds are exact: `|N⁻(x) ∩ S| ≥ νn` is decided as
//! `|N⁻(x) ∩ S| ≥ ⌈νn⌉` and the window `τn < |S| < (1−τ)n` is strict.

use std::ops::RangeInclusive;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::conditions::{approx_nw, ApproxParams, ConditionReport};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::ratio::{ceil_usize, floor_usize, of_n, serde_rational, Rational};

/// Largest `n` accepted by [`ExpansionMode::Exhaustive`].
pub const EXHAUSTIVE_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobustParams {
    #[serde(with = "serde_rational")]
    pub nu: Rational,
    #[serde(with = "serde_rational")]
    pub tau: Rational,
}

impl RobustParams {
    /// Requires `0 < ν ≤ τ < 1`.
    pub fn new(nu: Rational, tau: Rational) -> Result<Self> {
        let zero = Rational::from_integer(0);
        let one = Rational::from_integer(1);
        if !(zero < nu && nu <= tau && tau < one) {
            return Err(Error::InvalidParams(format!(
                "need 0 < nu <= tau < 1, got nu = {nu}, tau = {tau}"
            )));
        }
        Ok(RobustParams { nu, tau })
    }

    /// Set sizes `s` with `τn < s < (1−τ)n`; may be empty.
    pub fn window(&self, n: usize) -> RangeInclusive<usize> {
        let lo = floor_usize(of_n(self.tau, n)) + 1;
        let upper = of_n(Rational::from_integer(1) - self.tau, n);
        let hi = ceil_usize(upper).saturating_sub(1);
        lo..=hi
    }

    /// `⌈νn⌉`: the integer form of every `≥ νn` comparison.
    pub fn nu_n(&self, n: usize) -> usize {
        ceil_usize(of_n(self.nu, n))
    }
}

fn check_nu(nu: Rational) -> Result<()> {
    if nu <= Rational::from_integer(0) || nu > Rational::from_integer(1) {
        return Err(Error::InvalidParams(format!("nu = {nu} must lie in (0, 1]")));
    }
    Ok(())
}

/// `RN⁺_ν(S) = {x : |N⁻(x) ∩ S| ≥ νn}`, sorted.
pub fn robust_out_neighbourhood(g: &Digraph, s: &[usize], nu: Rational) -> Result<Vec<usize>> {
    check_nu(nu)?;
    let n = g.n();
    let mut set = FixedBitSet::with_capacity(n);
    for &v in s {
        g.check_vertex(v)?;
        set.insert(v);
    }
    let k = ceil_usize(of_n(nu, n));
    Ok(rn_set(g, &set, k).ones().collect())
}

fn rn_set(g: &Digraph, s: &FixedBitSet, k: usize) -> FixedBitSet {
    let n = g.n();
    let mut out = FixedBitSet::with_capacity(n);
    for x in 0..n {
        if g.in_set(x).intersection(s).count() >= k {
            out.insert(x);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpansionKind {
    /// `|RN⁺_ν(S)| ≥ |S| + νn`.
    Robust,
    /// `|N⁺(S)| ≥ |S| + νn`.
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ExpansionMode {
    Exhaustive,
    Sampled { trials: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Expander,
    NotExpander,
    /// Sampled mode only: nothing found, which certifies nothing.
    NoViolationFound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violator {
    pub set: Vec<usize>,
    /// `|RN⁺_ν(S)|` or `|N⁺(S)|`, matching the verdict's kind.
    pub nbhd_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionVerdict {
    pub kind: ExpansionKind,
    pub n: usize,
    pub params: RobustParams,
    pub mode: ExpansionMode,
    pub verdict: Verdict,
    pub violator: Option<Violator>,
    pub sets_checked: u64,
}

impl ExpansionVerdict {
    /// `Some(true)` expander, `Some(false)` violator found, `None` sampled
    /// without a violation.
    pub fn is_expander(&self) -> Option<bool> {
        match self.verdict {
            Verdict::Expander => Some(true),
            Verdict::NotExpander => Some(false),
            Verdict::NoViolationFound => None,
        }
    }
}

pub fn is_robust_outexpander(g: &Digraph, p: RobustParams, mode: ExpansionMode) -> Result<ExpansionVerdict> {
    check_expansion(g, p, mode, ExpansionKind::Robust)
}

pub fn is_outexpander(g: &Digraph, p: RobustParams, mode: ExpansionMode) -> Result<ExpansionVerdict> {
    check_expansion(g, p, mode, ExpansionKind::Plain)
}

pub fn check_expansion(
    g: &Digraph,
    p: RobustParams,
    mode: ExpansionMode,
    kind: ExpansionKind,
) -> Result<ExpansionVerdict> {
    let (violator, sets_checked, exhaustive) = match mode {
        ExpansionMode::Exhaustive => {
            if g.n() > EXHAUSTIVE_CAP {
                return Err(Error::TooLarge(format!(
                    "exhaustive expansion check is capped at n = {EXHAUSTIVE_CAP}, got {}; use sampled mode",
                    g.n()
                )));
            }
            let (v, c) = exhaustive(g, p, kind);
            (v, c, true)
        }
        ExpansionMode::Sampled { trials, seed } => {
            let (v, c) = sampled(g, p, kind, trials, seed);
            (v, c, false)
        }
    };
    let verdict = match (&violator, exhaustive) {
        (Some(_), _) => Verdict::NotExpander,
        (None, true) => Verdict::Expander,
        (None, false) => Verdict::NoViolationFound,
    };
    Ok(ExpansionVerdict {
        kind,
        n: g.n(),
        params: p,
        mode,
        verdict,
        violator,
        sets_checked,
    })
}

/// Mask-based evaluator for `n ≤ 32`.
struct MaskEval {
    out: Vec<u32>,
    inn: Vec<u32>,
    kind: ExpansionKind,
    k: usize,
}

impl MaskEval {
    fn new(g: &Digraph, kind: ExpansionKind, k: usize) -> Self {
        let mask = |s: &FixedBitSet| s.ones().fold(0u32, |a, v| a | 1 << v);
        MaskEval {
            out: (0..g.n()).map(|v| mask(g.out_set(v))).collect(),
            inn: (0..g.n()).map(|v| mask(g.in_set(v))).collect(),
            kind,
            k,
        }
    }

    fn nbhd_size(&self, s: u32) -> usize {
        match self.kind {
            ExpansionKind::Plain => {
                let mut acc = 0u32;
                let mut rest = s;
                while rest != 0 {
                    acc |= self.out[rest.trailing_zeros() as usize];
                    rest &= rest - 1;
                }
                acc.count_ones() as usize
            }
            ExpansionKind::Robust => self
                .inn
                .iter()
                .filter(|&&m| (m & s).count_ones() as usize >= self.k)
                .count(),
        }
    }
}

/// First violator of size `size` in increasing-mask order, and the number
/// of sets examined up to and including it.
fn scan_size(e: &MaskEval, n: usize, size: usize) -> (Option<Violator>, u64) {
    if size == 0 || size > n {
        return (None, 0);
    }
    let limit: u64 = 1 << n;
    let mut s: u64 = (1 << size) - 1;
    let mut count = 0;
    while s < limit {
        count += 1;
        let nb = e.nbhd_size(s as u32);
        if nb < size + e.k {
            let set = (0..n).filter(|&v| s >> v & 1 == 1).collect();
            return (Some(Violator { set, nbhd_size: nb }), count);
        }
        // Gosper's hack: next mask with the same popcount.
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    (None, count)
}

/// Sizes in ascending order; the violator of the smallest size with one
/// wins, so the result does not depend on scheduling.
fn exhaustive(g: &Digraph, p: RobustParams, kind: ExpansionKind) -> (Option<Violator>, u64) {
    let n = g.n();
    let e = MaskEval::new(g, kind, p.nu_n(n));
    let sizes: Vec<usize> = p.window(n).collect();
    #[cfg(feature = "parallel")]
    let per_size: Vec<(Option<Violator>, u64)> = {
        use rayon::prelude::*;
        sizes.par_iter().map(|&s| scan_size(&e, n, s)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let per_size: Vec<(Option<Violator>, u64)> = sizes.iter().map(|&s| scan_size(&e, n, s)).collect();
    let mut checked = 0;
    for (v, c) in per_size {
        checked += c;
        if v.is_some() {
            return (v, checked);
        }
    }
    (None, checked)
}

struct SetEval<'a> {
    g: &'a Digraph,
    kind: ExpansionKind,
    k: usize,
}

impl SetEval<'_> {
    fn nbhd_size(&self, s: &FixedBitSet) -> usize {
        match self.kind {
            ExpansionKind::Plain => self.g.out_neighbourhood_set(s).count_ones(..),
            ExpansionKind::Robust => rn_set(self.g, s, self.k).count_ones(..),
        }
    }

    /// `|N(S)| − |S|`, negative when the set shrinks.
    fn surplus(&self, s: &FixedBitSet) -> i64 {
        self.nbhd_size(s) as i64 - s.count_ones(..) as i64
    }

    fn violator(&self, s: &FixedBitSet) -> Option<Violator> {
        let size = s.count_ones(..);
        let nb = self.nbhd_size(s);
        (nb < size + self.k).then(|| Violator {
            set: s.ones().collect(),
            nbhd_size: nb,
        })
    }
}

/// Targeted candidates first (forward closures, then a greedy shrink from
/// `V` that drops the vertex leaving the smallest surplus), then `trials`
/// uniform samples: `|S|` uniform in the window, then `S` uniform.
fn sampled(g: &Digraph, p: RobustParams, kind: ExpansionKind, trials: u64, seed: u64) -> (Option<Violator>, u64) {
    let n = g.n();
    let window = p.window(n);
    if window.is_empty() {
        return (None, 0);
    }
    let e = SetEval { g, kind, k: p.nu_n(n) };
    let mut checked = 0;
    let test = |s: &FixedBitSet, checked: &mut u64| -> Option<Violator> {
        if !window.contains(&s.count_ones(..)) {
            return None;
        }
        *checked += 1;
        e.violator(s)
    };

    let mut seen_closures = Vec::new();
    for v in 0..n {
        let closure = g.reachable_from(v);
        if seen_closures.contains(&closure) {
            continue;
        }
        if let Some(vi) = test(&closure, &mut checked) {
            return (Some(vi), checked);
        }
        seen_closures.push(closure);
    }

    let mut s = FixedBitSet::with_capacity(n);
    s.insert_range(..);
    while s.count_ones(..) > *window.start() {
        let best = s
            .ones()
            .map(|x| {
                let mut t = s.clone();
                t.set(x, false);
                (e.surplus(&t), x)
            })
            .min()
            .map(|(_, x)| x)
            .expect("set is non-empty");
        s.set(best, false);
        if let Some(vi) = test(&s, &mut checked) {
            return (Some(vi), checked);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut verts: Vec<usize> = (0..n).collect();
    for _ in 0..trials {
        let size = rng.gen_range(window.clone());
        let (chosen, _) = verts.partial_shuffle(&mut rng, size);
        let mut s = FixedBitSet::with_capacity(n);
        for &v in chosen.iter() {
            s.insert(v);
        }
        if let Some(vi) = test(&s, &mut checked) {
            return (Some(vi), checked);
        }
    }
    (None, checked)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RobustGOutcome {
    HypothesisFalse,
    Verified,
    /// The hypothesis holds but a conclusion fails. The implication is only
    /// claimed for large `n`, so this is recorded rather than raised.
    SmallNException,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobustGReport {
    pub n: usize,
    pub hypothesis: ConditionReport,
    pub min_semi_degree: usize,
    /// `δ⁰(G) ≥ ηn`, checked only when the hypothesis holds.
    pub min_semi_degree_ok: Option<bool>,
    /// Exhaustive robust `(τ², τ)` check, run only when the hypothesis holds.
    pub expansion: Option<ExpansionVerdict>,
    pub outcome: RobustGOutcome,
}

/// Evaluates the approximate Nash-Williams hypothesis with parameter `η` and,
/// when it holds, checks `δ⁰(G) ≥ ηn` and robust `(τ², τ)`-outexpansion
/// exhaustively.
pub fn verify_robust_g(g: &Digraph, eta: Rational, tau: Rational) -> Result<RobustGReport> {
    let n = g.n();
    if n > EXHAUSTIVE_CAP {
        return Err(Error::TooLarge(format!(
            "verify_robust_g runs an exhaustive check capped at n = {EXHAUSTIVE_CAP}, got {n}"
        )));
    }
    let ap = ApproxParams::new(eta)?;
    let rp = RobustParams::new(tau * tau, tau)?;
    let hypothesis = approx_nw(g, ap)?;
    let min_semi_degree = g.min_semi_degree();
    if !hypothesis.holds {
        return Ok(RobustGReport {
            n,
            hypothesis,
            min_semi_degree,
            min_semi_degree_ok: None,
            expansion: None,
            outcome: RobustGOutcome::HypothesisFalse,
        });
    }
    let deg_ok = crate::ratio::at_least(min_semi_degree, ap.eta_n(n));
    let exp = is_robust_outexpander(g, rp, ExpansionMode::Exhaustive)?;
    let outcome = if deg_ok && exp.verdict == Verdict::Expander {
        RobustGOutcome::Verified
    } else {
        RobustGOutcome::SmallNException
    };
    Ok(RobustGReport {
        n,
        hypothesis,
        min_semi_degree,
        min_semi_degree_ok: Some(deg_ok),
        expansion: Some(exp),
        outcome,
    })
}

/// Keeps one direction of each 2-cycle, each with probability 1/2, drawing
/// once per pair `u < v` in lexicographic order. Single edges are kept.
pub fn random_orientation(g: &Digraph, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut removed = Vec::new();
    for (u, v) in g.edges() {
        if u < v && g.has_edge(v, u) {
            if rng.gen::<bool>() {
                removed.push((v, u));
            } else {
                removed.push((u, v));
            }
        }
    }
    g.without_edges(&removed)
}
