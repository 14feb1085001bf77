//! Generators for the extremal and counterexample digraph families.
//!
//! Each generator fixes a vertex layout so tests can name vertices. The
//! layout is also returned as text in [`FamilySpec`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::digraph::{Builder, Digraph};
use crate::error::{Error, Result};
use crate::ratio::{ceil_usize, of_n, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: String,
    pub params: BTreeMap<String, String>,
    pub layout: String,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

/// Adds a tournament on `vs` that is as regular as possible. For odd order
/// it is the circulant one (each vertex beats the next `(m−1)/2`); for even
/// order `m` vertex `i` beats the next `m/2 − 1` and also `i + m/2` when
/// `i < m/2`. Positions refer to the order of `vs`.
pub fn add_near_regular_tournament(b: &mut Builder, vs: &[usize]) {
    let m = vs.len();
    if m < 2 {
        return;
    }
    let reach = if m % 2 == 1 { (m - 1) / 2 } else { m / 2 - 1 };
    for i in 0..m {
        for d in 1..=reach {
            b.edge(vs[i], vs[(i + d) % m]);
        }
        if m.is_multiple_of(2) && i < m / 2 {
            b.edge(vs[i], vs[i + m / 2]);
        }
    }
}

/// Independent set `I` of size `k` and a complete digraph `K` on `n − k`
/// vertices, with all edges in both directions between `I` and a fixed
/// `X ⊆ K` of size `k`.
///
/// Layout: `I = 0..k`, `K = k..n`, `X = k..2k`.
pub fn intro_extremal(n: usize, k: usize) -> Result<Digraph> {
    if n < 3 || k == 0 || 2 * k >= n {
        return Err(invalid(format!(
            "intro_extremal needs n >= 3 and 1 <= k < n/2, got n={n}, k={k}"
        )));
    }
    let mut b = Builder::new(n);
    b.complete_on(k..n);
    b.all_edges(0..k, k..2 * k).all_edges(k..2 * k, 0..k);
    Ok(b.build())
}

/// Complete digraph `K` on `n − 2` vertices plus `v`, `w` sending edges to
/// all of `K` and receiving one edge each, from `u ∈ K`.
///
/// Layout: `K = 0..n−2`, `u = 0`, `v = n−2`, `w = n−1`.
pub fn bermond_thomassen(n: usize) -> Result<Digraph> {
    if n < 6 {
        return Err(invalid(format!("bermond_thomassen needs n >= 6, got {n}")));
    }
    let (v, w) = (n - 2, n - 1);
    let mut b = Builder::new(n);
    b.complete_on(0..n - 2);
    b.all_edges([v, w], 0..n - 2);
    b.edge(0, v).edge(0, w);
    Ok(b.build())
}

/// Layout of [`figure1_extremal`]: `K = 0..k−1`, `K′ = k−1..n−3`,
/// `u = n−3`, `v = n−2`, `w = n−1`.
pub fn figure1_layout(n: usize, k: usize) -> (Range<usize>, Range<usize>, usize, usize, usize) {
    (0..k - 1, k - 1..n - 3, n - 3, n - 2, n - 1)
}

/// `K` complete on `k − 1`, `K′` complete on `n − k − 2`, all edges
/// `K′ → K`, `K′ → {u, v} → K`, and `w` joined both ways to everything.
///
/// For odd `n` and `k = ⌊n/2⌋` both (i) and (ii) fail at `i = k`; the
/// generator still builds it.
pub fn figure1_extremal(n: usize, k: usize) -> Result<Digraph> {
    if n < 5 || k == 0 || 2 * k >= n {
        return Err(invalid(format!(
            "figure1_extremal needs n >= 5 and 1 <= k < n/2, got n={n}, k={k}"
        )));
    }
    let (kk, kp, u, v, w) = figure1_layout(n, k);
    let mut b = Builder::new(n);
    b.complete_on(kk.clone()).complete_on(kp.clone());
    b.all_edges(kp.clone(), kk.clone());
    b.all_edges(kp, [u, v]).all_edges([u, v], kk);
    b.all_edges([w], 0..n).all_edges(0..n, [w]);
    Ok(b.build())
}

/// Two complete digraphs on `n/2` vertices with every edge from the first
/// to the second. Layout: `K = 0..n/2`, `K′ = n/2..n`.
pub fn two_cliques_disconnected(n: usize) -> Result<Digraph> {
    if n < 4 || n % 2 == 1 {
        return Err(invalid(format!("two_cliques_disconnected needs even n >= 4, got {n}")));
    }
    let h = n / 2;
    let mut b = Builder::new(n);
    b.complete_on(0..h).complete_on(h..n).all_edges(0..h, h..n);
    Ok(b.build())
}

/// Cliques of orders `⌈n/2⌉` and `⌊n/2⌋` with every edge from the larger to
/// the smaller. Layout: `K = 0..⌈n/2⌉`, `K′ = ⌈n/2⌉..n`.
pub fn two_cliques_odd(n: usize) -> Result<Digraph> {
    if n < 5 || n.is_multiple_of(2) {
        return Err(invalid(format!("two_cliques_odd needs odd n >= 5, got {n}")));
    }
    let h = n.div_ceil(2);
    let mut b = Builder::new(n);
    b.complete_on(0..h).complete_on(h..n).all_edges(0..h, h..n);
    Ok(b.build())
}

/// The undirected graph: `K_{n/2,n/2}` minus the matching `aᵢbᵢ`, plus the
/// cycle `a₀a₁…a_{n/2−1}`. Layout: `A = 0..n/2`, `B = n/2..n` with
/// `bᵢ = n/2 + i`. Returns undirected edges `(u, v)` with `u < v`.
pub fn chvatal_double_underlying(n: usize) -> Result<Vec<(usize, usize)>> {
    if n < 8 || n % 2 == 1 {
        return Err(invalid(format!(
            "chvatal_double_counterexample needs even n >= 8, got {n}"
        )));
    }
    let h = n / 2;
    let mut edges = Vec::new();
    for i in 0..h {
        for j in 0..h {
            if i != j {
                edges.push((i, h + j));
            }
        }
        let (a, b) = (i, (i + 1) % h);
        edges.push((a.min(b), a.max(b)));
    }
    edges.sort_unstable();
    Ok(edges)
}

/// Degrees of [`chvatal_double_underlying`], in vertex order.
pub fn chvatal_double_degrees(n: usize) -> Result<Vec<usize>> {
    let mut deg = vec![0; n];
    for (u, v) in chvatal_double_underlying(n)? {
        deg[u] += 1;
        deg[v] += 1;
    }
    Ok(deg)
}

/// The undirected graph of [`chvatal_double_underlying`] with every edge
/// doubled into a 2-cycle.
pub fn chvatal_double_counterexample(n: usize) -> Result<Digraph> {
    Digraph::from_undirected(n, chvatal_double_underlying(n)?)
}

/// Vertex ranges of [`vertex_pancyclic_counterexample`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexPancyclicLayout {
    pub k: usize,
    /// `η = 1/(k·3^k)`.
    #[serde(with = "crate::ratio::serde_rational")]
    pub eta: Rational,
    /// `⌈ηn⌉`.
    pub unit: usize,
    pub x: usize,
    /// `V₁, …, V_{k−2}`, `|Vᵢ| = 3^i⌈ηn⌉`.
    pub levels: Vec<Range<usize>>,
    pub clique: Range<usize>,
}

pub fn vertex_pancyclic_layout(k: usize, n: usize) -> Result<VertexPancyclicLayout> {
    if k < 3 {
        return Err(invalid(format!(
            "vertex_pancyclic_counterexample needs k >= 3, got {k}"
        )));
    }
    let pow = 3i64
        .checked_pow(k as u32)
        .and_then(|p| p.checked_mul(k as i64))
        .ok_or_else(|| invalid(format!("k = {k} is too large")))?;
    let eta = Rational::new(1, pow);
    let unit = ceil_usize(of_n(eta, n));
    let mut levels = Vec::with_capacity(k - 2);
    let mut next = 1;
    let mut sizes = Vec::new();
    for i in 1..=k - 2 {
        let size = 3usize.pow(i as u32) * unit;
        sizes.push(size);
        levels.push(next..next + size);
        next += size;
    }
    if next >= n {
        return Err(invalid(format!(
            "n = {n} too small for k = {k}: level sizes {sizes:?} plus x leave no room for K"
        )));
    }
    Ok(VertexPancyclicLayout {
        k,
        eta,
        unit,
        x: 0,
        levels,
        clique: next..n,
    })
}

/// A digraph meeting `d⁺ᵢ, d⁻ᵢ ≥ i + ηn` (`η = 1/(k·3^k)`) in which vertex
/// `x = 0` lies on no cycle shorter than `k`.
///
/// Edges: `x → V₁`, `Vᵢ → Vᵢ₊₁` (`i ≤ k−3`), `V_{k−2} → K`, `K` complete,
/// and `K` sends to every other vertex (including `x`).
pub fn vertex_pancyclic_counterexample(k: usize, n: usize) -> Result<Digraph> {
    let l = vertex_pancyclic_layout(k, n)?;
    let mut b = Builder::new(n);
    b.all_edges([l.x], l.levels[0].clone());
    for w in l.levels.windows(2) {
        b.all_edges(w[0].clone(), w[1].clone());
    }
    b.all_edges(l.levels[k - 3].clone(), l.clique.clone());
    b.all_edges(l.clique.clone(), 0..n);
    Ok(b.build())
}

/// Vertex classes of [`oriented_posa_counterexample`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrientedPosaLayout {
    pub t: usize,
    pub c: usize,
    pub s: usize,
    pub a: Range<usize>,
    pub b: Range<usize>,
    pub c_set: Range<usize>,
    pub d: Range<usize>,
    pub e: Range<usize>,
    /// `A′ = {x₁…, y₁…}` then `A″ = {z₁…z₂ₜ, w₁…w₂ₜ}` inside `a`.
    pub a_single: Range<usize>,
    pub a_double: Range<usize>,
    pub d_single: Range<usize>,
    pub d_double: Range<usize>,
}

/// Smallest `t ∈ ℕ` with `3 − 1/t > 8α`.
pub fn oriented_posa_t(alpha: Rational) -> Result<usize> {
    if alpha <= Rational::from_integer(0) || alpha >= Rational::new(3, 8) {
        return Err(invalid(format!("alpha = {alpha} must lie in (0, 3/8)")));
    }
    let gap = Rational::from_integer(3) - alpha * 8;
    Ok((gap.recip().floor().to_integer() + 1) as usize)
}

pub fn oriented_posa_layout(alpha: Rational, n: usize) -> Result<OrientedPosaLayout> {
    let t = oriented_posa_t(alpha)?;
    let c = 4 * t;
    let mut violated = Vec::new();
    if n == 0 || !n.is_multiple_of(8 * t) {
        violated.push(format!("8t = {} must divide n = {n}", 8 * t));
    }
    let s = (n / (2 * c)) as i64 - 2;
    if s < 1 {
        violated.push(format!("s = n/(2c) - 2 = {s} must be >= 1"));
    }
    if !violated.is_empty() {
        return Err(invalid(format!(
            "oriented_posa_counterexample(alpha={alpha}, n={n}) with t={t}, c={c}: {}",
            violated.join("; ")
        )));
    }
    let s = s as usize;
    let q = n / 4;
    let a = 0..q;
    let b = q..q + n / 8;
    let c_set = b.end..b.end + n / 8 - 1;
    let d = c_set.end..c_set.end + q + 1;
    let e = d.end..n;
    debug_assert_eq!(e.len(), q);
    let singles = 2 * (n / 8 - c / 2);
    Ok(OrientedPosaLayout {
        t,
        c,
        s,
        a_single: a.start..a.start + singles,
        a_double: a.start + singles..a.end,
        d_single: d.start..d.start + singles + 1,
        d_double: d.start + singles + 1..d.end,
        a,
        b,
        c_set,
        d,
        e,
    })
}

/// Edges inside `A` (as pairs of positions, `A′` first then `A″`), shared
/// by the `A` side and, reversed, the `D` side.
fn a_internal_edges(l: &OrientedPosaLayout) -> Vec<(usize, usize)> {
    let m = l.a_single.len() / 2;
    let (t, s) = (l.t, l.s);
    let x = |i: usize| i;
    let y = |i: usize| m + i;
    let z = |j: usize| 2 * m + j;
    let w = |j: usize| 2 * m + 2 * t + j;
    let mut b = Builder::new(2 * m + 4 * t);
    let singles: Vec<usize> = (0..2 * m).collect();
    let doubles: Vec<usize> = (2 * m..2 * m + 4 * t).collect();
    add_near_regular_tournament(&mut b, &singles);
    add_near_regular_tournament(&mut b, &doubles);
    for i in 0..m {
        for j in 0..2 * t {
            b.edge(x(i), z(j));
            b.edge(y(i), w(j));
        }
    }
    for blk in 0..t {
        for i in s * blk..s * (blk + 1) {
            for j in [2 * blk, 2 * blk + 1] {
                b.edge(x(i), w(j));
                b.edge(y(i), z(j));
            }
        }
    }
    for &a1 in &singles {
        for &a2 in &doubles {
            if !b.has_edge(a1, a2) {
                b.edge(a2, a1);
            }
        }
    }
    b.build().edges().collect()
}

/// An oriented graph whose in- and outdegree sequences both dominate
/// `(αn)^c, (3n/8)^{n−c}` but which has no 1-factor (so no Hamilton cycle).
///
/// Classes `A, B, C, D, E` of sizes `n/4, n/8, n/8−1, n/4+1, n/4` in that
/// index order; full edge classes `A→B, B→C, C→D, A→C, B→D, D→A, E→A, E→B,
/// C→E, D→E`; near-regular tournaments inside `B`, `C`, `A′`, `A″`. Inside
/// `A` the `x`/`y`/`z`/`w` wiring makes `A′` vertices reach out-degree
/// `3n/8`; `D` carries the reversed wiring so that `D′` vertices reach
/// in-degree `3n/8`, and the extra `D′` vertex receives from all of `D″`.
/// `E` is independent.
pub fn oriented_posa_counterexample(alpha: Rational, n: usize) -> Result<Digraph> {
    let l = oriented_posa_layout(alpha, n)?;
    let mut b = Builder::new(n);
    for (from, to) in [
        (&l.a, &l.b),
        (&l.b, &l.c_set),
        (&l.c_set, &l.d),
        (&l.a, &l.c_set),
        (&l.b, &l.d),
        (&l.d, &l.a),
        (&l.e, &l.a),
        (&l.e, &l.b),
        (&l.c_set, &l.e),
        (&l.d, &l.e),
    ] {
        b.all_edges(from.clone(), to.clone());
    }
    add_near_regular_tournament(&mut b, &l.b.clone().collect::<Vec<_>>());
    add_near_regular_tournament(&mut b, &l.c_set.clone().collect::<Vec<_>>());

    let internal = a_internal_edges(&l);
    let singles = l.a_single.len();
    for &(u, v) in &internal {
        b.edge(l.a.start + u, l.a.start + v);
    }
    // D: positions < singles are D′ minus its extra vertex, the rest shift
    // by one past it into D″; edges reversed.
    let extra = l.d.start + singles;
    let d_pos = |p: usize| {
        if p < singles {
            l.d.start + p
        } else {
            l.d.start + p + 1
        }
    };
    for &(u, v) in &internal {
        b.edge(d_pos(v), d_pos(u));
    }
    // The extra vertex joins the D′ tournament, alternating directions.
    let others: Vec<usize> = l.d_single.clone().filter(|&v| v != extra).collect();
    for (idx, &v) in others.iter().enumerate() {
        if idx % 2 == 0 {
            b.edge(v, extra);
        } else {
            b.edge(extra, v);
        }
    }
    b.all_edges(l.d_double.clone(), [extra]);
    Ok(b.build())
}

/// The circulant regular tournament: `i → i+1, …, i+(n−1)/2 (mod n)`.
pub fn regular_tournament(n: usize) -> Result<Digraph> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(invalid(format!("regular_tournament needs odd n >= 3, got {n}")));
    }
    let mut b = Builder::new(n);
    add_near_regular_tournament(&mut b, &(0..n).collect::<Vec<_>>());
    Ok(b.build())
}

/// Family identifiers, for the CLI and the demo.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    IntroExtremal,
    BermondThomassen,
    Figure1Extremal,
    TwoCliquesDisconnected,
    TwoCliquesOdd,
    ChvatalDouble,
    VertexPancyclic,
    OrientedPosa,
    RegularTournament,
    Complete,
    Cycle,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::IntroExtremal,
        Family::BermondThomassen,
        Family::Figure1Extremal,
        Family::TwoCliquesDisconnected,
        Family::TwoCliquesOdd,
        Family::ChvatalDouble,
        Family::VertexPancyclic,
        Family::OrientedPosa,
        Family::RegularTournament,
        Family::Complete,
        Family::Cycle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::IntroExtremal => "intro-extremal",
            Family::BermondThomassen => "bermond-thomassen",
            Family::Figure1Extremal => "figure1-extremal",
            Family::TwoCliquesDisconnected => "two-cliques-disconnected",
            Family::TwoCliquesOdd => "two-cliques-odd",
            Family::ChvatalDouble => "chvatal-double",
            Family::VertexPancyclic => "vertex-pancyclic",
            Family::OrientedPosa => "oriented-posa",
            Family::RegularTournament => "regular-tournament",
            Family::Complete => "complete",
            Family::Cycle => "cycle",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| invalid(format!("unknown family {s:?}")))
    }
}

/// Parameters accepted by [`generate`]; unused ones are ignored.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FamilyParams {
    pub n: usize,
    pub k: Option<usize>,
    pub alpha: Option<Rational>,
}

/// Builds a family member together with its spec and the properties the
/// construction is documented to have (as JSON, for the sidecar file).
pub fn generate(family: Family, p: FamilyParams) -> Result<(Digraph, FamilySpec, serde_json::Value)> {
    use serde_json::json;
    let n = p.n;
    let need_k = || p.k.ok_or_else(|| invalid(format!("{family} needs k")));
    let mut params = BTreeMap::from([("n".to_string(), n.to_string())]);
    let (g, layout, expected) = match family {
        Family::IntroExtremal => {
            let k = need_k()?;
            params.insert("k".into(), k.to_string());
            let g = intro_extremal(n, k)?;
            let seq: Vec<usize> = std::iter::repeat_n(k, k)
                .chain(std::iter::repeat_n(n - 1 - k, n - 2 * k))
                .chain(std::iter::repeat_n(n - 1, k))
                .collect();
            (
                g,
                format!("I = 0..{k}, K = {k}..{n}, X = {k}..{}", 2 * k),
                json!({"strongly_connected": true, "hamiltonian": false,
                       "out_sequence": seq, "in_sequence": seq}),
            )
        }
        Family::BermondThomassen => (
            bermond_thomassen(n)?,
            format!("K = 0..{}, u = 0, v = {}, w = {}", n - 2, n - 2, n - 1),
            json!({"bermond_thomassen_condition": true, "hamiltonian": false}),
        ),
        Family::Figure1Extremal => {
            let k = need_k()?;
            params.insert("k".into(), k.to_string());
            let g = figure1_extremal(n, k)?;
            let (kk, kp, u, v, w) = figure1_layout(n, k);
            let out: Vec<usize> = std::iter::repeat_n(k - 1, k - 1)
                .chain([k, k])
                .chain(std::iter::repeat_n(n - 1, n - k - 1))
                .collect();
            let inn: Vec<usize> = std::iter::repeat_n(n - k - 2, n - k - 2)
                .chain([n - k - 1, n - k - 1])
                .chain(std::iter::repeat_n(n - 1, k))
                .collect();
            let only_i = n.is_multiple_of(2) || k < n / 2;
            (
                g,
                format!("K = {kk:?}, K' = {kp:?}, u = {u}, v = {v}, w = {w}"),
                json!({"strongly_connected": true, "hamiltonian": false,
                       "out_sequence": out, "in_sequence": inn,
                       "nash_williams_fails_only_clause_i_at": if only_i { Some(k) } else { None }}),
            )
        }
        Family::TwoCliquesDisconnected => (
            two_cliques_disconnected(n)?,
            format!("K = 0..{}, K' = {}..{n}, all edges K -> K'", n / 2, n / 2),
            json!({"strongly_connected": false, "hamiltonian": false,
                   "nash_williams": true, "nw3_fails_clause_iii": true}),
        ),
        Family::TwoCliquesOdd => {
            let h = n.div_ceil(2);
            (
                two_cliques_odd(n)?,
                format!("K = 0..{h}, K' = {h}..{n}, all edges K -> K'"),
                json!({"hamiltonian": false, "nash_williams_fails_only_clause_i_at": n / 2}),
            )
        }
        Family::ChvatalDouble => (
            chvatal_double_counterexample(n)?,
            format!("A = 0..{h}, B = {h}..{n}, b_i = {h}+i, cycle on A", h = n / 2),
            json!({"underlying_degrees": chvatal_double_degrees(n)?,
                   "chvatal_undirected": true, "nw3_fails_clause_iii": true, "hamiltonian": true}),
        ),
        Family::VertexPancyclic => {
            let k = need_k()?;
            params.insert("k".into(), k.to_string());
            let l = vertex_pancyclic_layout(k, n)?;
            (
                vertex_pancyclic_counterexample(k, n)?,
                format!("x = 0, levels = {:?}, K = {:?}", l.levels, l.clique),
                json!({"eta": format!("{}", l.eta), "approx_posa": true,
                       "shortest_cycle_through_x": k}),
            )
        }
        Family::OrientedPosa => {
            let alpha = p.alpha.ok_or_else(|| invalid("oriented-posa needs alpha"))?;
            params.insert("alpha".into(), alpha.to_string());
            let l = oriented_posa_layout(alpha, n)?;
            (
                oriented_posa_counterexample(alpha, n)?,
                format!(
                    "A = {:?} (A' = {:?}, A'' = {:?}), B = {:?}, C = {:?}, D = {:?} (D' = {:?}, D'' = {:?}), E = {:?}",
                    l.a, l.a_single, l.a_double, l.b, l.c_set, l.d, l.d_single, l.d_double, l.e
                ),
                json!({"oriented": true, "one_factor": false, "hamiltonian": false,
                       "t": l.t, "c": l.c, "s": l.s}),
            )
        }
        Family::RegularTournament => (
            regular_tournament(n)?,
            format!("circulant: i -> i+1..i+{} (mod {n})", n.saturating_sub(1) / 2),
            json!({"oriented": true, "hamiltonian": true}),
        ),
        Family::Complete => (
            Digraph::complete(n),
            "complete digraph".into(),
            json!({"hamiltonian": n >= 2}),
        ),
        Family::Cycle => (
            Digraph::directed_cycle(n),
            "0 -> 1 -> ... -> n-1 -> 0".into(),
            json!({"hamiltonian": n >= 2}),
        ),
    };
    Ok((
        g,
        FamilySpec {
            family: family.name().into(),
            params,
            layout,
        },
        expected,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn near_regular_tournament_degrees() {
        for m in 2..12 {
            let mut b = Builder::new(m);
            add_near_regular_tournament(&mut b, &(0..m).collect::<Vec<_>>());
            let g = b.build();
            assert!(g.is_oriented());
            assert_eq!(g.edge_count(), m * (m - 1) / 2, "m = {m}");
            for v in 0..m {
                let d = g.out_degree(v) as f64;
                assert!((d - (m as f64 - 1.0) / 2.0).abs() <= 0.5, "m = {m}, v = {v}");
            }
        }
    }

    #[test]
    fn edge_counts_match_closed_forms() {
        for n in 5usize..=12 {
            for k in 1..n.div_ceil(2) {
                let g = intro_extremal(n, k).unwrap();
                assert_eq!(g.edge_count(), (n - k) * (n - k - 1) + 2 * k * k);
                let g = figure1_extremal(n, k).unwrap();
                let expected = (k - 1) * k.saturating_sub(2)
                    + (n - k - 2) * (n - k - 3)
                    + (n - k - 2) * (k - 1)
                    + 2 * (n - k - 2)
                    + 2 * (k - 1)
                    + 2 * (n - 1);
                assert_eq!(g.edge_count(), expected, "figure1 n={n} k={k}");
            }
        }
        for n in [6, 8, 10] {
            assert_eq!(
                bermond_thomassen(n).unwrap().edge_count(),
                (n - 2) * (n - 3) + 2 * (n - 2) + 2
            );
            let h = n / 2;
            assert_eq!(
                two_cliques_disconnected(n).unwrap().edge_count(),
                2 * h * (h - 1) + h * h
            );
        }
        for n in [5usize, 7, 9] {
            let (a, b) = (n.div_ceil(2), n / 2);
            assert_eq!(
                two_cliques_odd(n).unwrap().edge_count(),
                a * (a - 1) + b * (b - 1) + a * b
            );
            assert_eq!(regular_tournament(n).unwrap().edge_count(), n * (n - 1) / 2);
        }
        for n in [8, 10, 12] {
            let h = n / 2;
            assert_eq!(
                chvatal_double_counterexample(n).unwrap().edge_count(),
                2 * (h * (h - 1) + h)
            );
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(intro_extremal(9, 5).is_err());
        assert!(intro_extremal(9, 0).is_err());
        assert!(bermond_thomassen(5).is_err());
        assert!(figure1_extremal(4, 1).is_err());
        assert!(two_cliques_disconnected(7).is_err());
        assert!(two_cliques_odd(8).is_err());
        assert!(chvatal_double_counterexample(6).is_err());
        assert!(chvatal_double_counterexample(9).is_err());
        assert!(regular_tournament(8).is_err());
        assert!(vertex_pancyclic_counterexample(2, 100).is_err());
        assert!(vertex_pancyclic_counterexample(4, 13).is_err());
        assert!(vertex_pancyclic_counterexample(4, 14).is_ok());
        let err = oriented_posa_counterexample(Rational::new(3, 10), 40).unwrap_err();
        assert!(err.to_string().contains("must divide"), "{err}");
        assert!(oriented_posa_counterexample(Rational::new(3, 10), 16).is_err());
        assert!(oriented_posa_counterexample(Rational::new(3, 8), 48).is_err());
    }

    #[test]
    fn bermond_thomassen_named_vertices() {
        let g = bermond_thomassen(6).unwrap();
        assert_eq!(g.in_degree(4), 1);
        assert_eq!(g.in_degree(5), 1);
        assert!(g.has_edge(0, 4) && g.has_edge(0, 5));
    }

    #[test]
    fn oriented_posa_parameters() {
        let alpha = Rational::new(3, 10);
        assert_eq!(oriented_posa_t(alpha).unwrap(), 2);
        let l = oriented_posa_layout(alpha, 48).unwrap();
        assert_eq!((l.t, l.c, l.s), (2, 8, 1));
        assert_eq!(l.a_double.len(), l.c);
        assert_eq!(l.d_double.len(), l.c);
        assert_eq!(l.e.len(), 12);
        assert_eq!(oriented_posa_t(Rational::new(1, 5)).unwrap(), 1);
    }

    #[test]
    fn vertex_pancyclic_sizes() {
        let l = vertex_pancyclic_layout(3, 200).unwrap();
        assert_eq!(l.unit, 3);
        assert_eq!(l.levels, vec![1..10]);
        assert_eq!(l.clique, 10..200);
        let l = vertex_pancyclic_layout(4, 1000).unwrap();
        assert_eq!(l.unit, 4);
        assert_eq!(l.levels, vec![1..13, 13..49]);
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
    }
}
