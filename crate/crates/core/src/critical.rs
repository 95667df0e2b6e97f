//! Good colorings of the critical complete graph `K_r`, `r = R(P_k, P_l) - 1`.
//!
//! Every good coloring splits the vertices into `A` and `B` with fixed sizes;
//! `E(B)` is (almost) monochromatic and `E(A, B)` takes the other color.
//! The tables below list the allowed shapes per `(k, l)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::engine::{enumerate_good_colorings, SearchConfig};
use crate::error::{Error, Result};
use crate::graph::{canonical, complete_bipartite, complete_graph, complete_minus_edge, Color, Edge, EdgeColoring, Graph};
use crate::paths::{is_good_coloring, longest_path_from, strict_endpoint_length};

pub fn ramsey_path(k: usize, l: usize) -> Result<usize> {
    if k < 2 || k > l {
        return Err(Error::InvalidArgument(format!("ramsey_path needs 2 <= k <= l, got ({k}, {l})")));
    }
    Ok(l + k / 2 - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HookType {
    T1,
    T2,
    T3,
    T1a,
    T1b,
    T2a,
    T2b,
}

impl HookType {
    pub const ALL: [HookType; 7] =
        [HookType::T1, HookType::T2, HookType::T3, HookType::T1a, HookType::T1b, HookType::T2a, HookType::T2b];

    /// Color of `E(B)` apart from the special edge.
    fn inner_color(self) -> Color {
        match self {
            HookType::T3 | HookType::T1b | HookType::T2b => Color::Red,
            _ => Color::Blue,
        }
    }

    fn has_special_edge(self) -> bool {
        matches!(self, HookType::T2 | HookType::T2a | HookType::T2b)
    }

    fn symmetric(self) -> bool {
        matches!(self, HookType::T1a | HookType::T1b | HookType::T2a | HookType::T2b)
    }
}

impl fmt::Display for HookType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for HookType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HookType::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown coloring type `{s}`")))
    }
}

fn check_regime(k: usize, l: usize) -> Result<()> {
    if k < 4 || k > l {
        return Err(Error::InvalidArgument(format!("critical colorings need 4 <= k <= l, got ({k}, {l})")));
    }
    Ok(())
}

/// Types that can occur for `(k, l)`.
pub fn legal_types(k: usize, l: usize) -> Result<Vec<HookType>> {
    check_regime(k, l)?;
    use HookType::*;
    Ok(match (k == l, k % 2 == 0) {
        (true, true) => vec![T1a, T1b],
        (true, false) => vec![T1a, T1b, T2a, T2b],
        (false, true) => vec![T1],
        (false, false) if l > k + 1 => vec![T1, T2],
        (false, false) => vec![T1, T2, T3],
    })
}

/// Every type of the `(k, l)` regime, legal for this parity or not.
fn regime_types(k: usize, l: usize) -> Vec<HookType> {
    HookType::ALL.into_iter().filter(|t| t.symmetric() == (k == l)).collect()
}

/// `(|A|, |B|)` for type `t`.
pub fn part_sizes(k: usize, l: usize, t: HookType) -> (usize, usize) {
    match t {
        HookType::T3 => (l / 2 - 1, k - 1),
        _ => (k / 2 - 1, l - 1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalColoring {
    pub graph: Graph,
    pub coloring: EdgeColoring,
    pub a_set: Vec<usize>,
    pub b_set: Vec<usize>,
    pub special_edge: Option<Edge>,
    pub hook_type: HookType,
}

/// Builds a type-`t` coloring of `K_r` with `A = 0..|A|` and `B` the rest.
///
/// `a_coloring` colors `E(A)` in edge order; `None` gives those edges the
/// color of `E(A, B)`. `special` picks the odd edge of `E(B)` for the
/// two-color types and defaults to the least edge of `B`.
pub fn construct_critical(
    k: usize,
    l: usize,
    t: HookType,
    a_coloring: Option<&[Color]>,
    special: Option<Edge>,
) -> Result<CriticalColoring> {
    if !legal_types(k, l)?.contains(&t) {
        return Err(Error::InvalidArgument(format!("type {t} cannot occur for ({k}, {l})")));
    }
    if special.is_some() && !t.has_special_edge() {
        return Err(Error::InvalidArgument(format!("type {t} has no special edge")));
    }
    let r = ramsey_path(k, l)? - 1;
    let (na, nb) = part_sizes(k, l, t);
    debug_assert_eq!(na + nb, r);
    let graph = complete_graph(r)?;
    let a_set: Vec<usize> = (0..na).collect();
    let b_set: Vec<usize> = (na..r).collect();
    let inner = t.inner_color();
    let cross = inner.flip();

    let special_edge = if t.has_special_edge() {
        let e = special.map_or((na, na + 1), |(u, v)| canonical(u, v));
        if e.0 < na || e.1 >= r || e.0 == e.1 {
            return Err(Error::InvalidArgument(format!("special edge {e:?} is not inside B")));
        }
        Some(e)
    } else {
        None
    };

    let a_edges = na * na.saturating_sub(1) / 2;
    if let Some(ac) = a_coloring {
        if ac.len() != a_edges {
            return Err(Error::InvalidArgument(format!("E(A) has {a_edges} edges, got {} colors", ac.len())));
        }
    }
    let mut next_a = 0;
    let colors = graph
        .edges()
        .iter()
        .map(|&(u, v)| {
            if v < na {
                let c = a_coloring.map_or(cross, |ac| ac[next_a]);
                next_a += 1;
                c
            } else if u < na || Some((u, v)) == special_edge {
                cross
            } else {
                inner
            }
        })
        .collect();
    let coloring = EdgeColoring::new(colors);
    if !is_good_coloring(&graph, &coloring, k, l)? {
        return Err(Error::Internal(format!("constructed type {t} coloring for ({k}, {l}) is not good")));
    }
    Ok(CriticalColoring { graph, coloring, a_set, b_set, special_edge, hook_type: t })
}

/// Lexicographic `size`-subsets of `0..n`.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// The special edge if `c` has shape `t` with this `A`, `Some(None)` for
/// a match without one, `None` for no match.
fn matches_type(g: &Graph, c: &EdgeColoring, t: HookType, in_a: &[bool]) -> Option<Option<Edge>> {
    let inner = t.inner_color();
    let mut odd = Vec::new();
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        let color = c.get(id);
        match (in_a[u], in_a[v]) {
            (true, true) => {}
            (false, false) if color != inner => odd.push((u, v)),
            (false, false) => {}
            _ if color != inner.flip() => return None,
            _ => {}
        }
    }
    match (t.has_special_edge(), odd.as_slice()) {
        (false, []) => Some(None),
        (true, [e]) => Some(Some(*e)),
        _ => None,
    }
}

/// The type and partition of a coloring of `K_r`, or `None` if `c` is not
/// good. A good coloring that fits no type, or fits several, is reported
/// as a taxonomy violation.
pub fn classify_critical(k: usize, l: usize, c: &EdgeColoring) -> Result<Option<CriticalColoring>> {
    check_regime(k, l)?;
    let r = ramsey_path(k, l)? - 1;
    let g = complete_graph(r)?;
    if !c.is_for(&g) {
        return Err(Error::InvalidArgument(format!("coloring has {} entries, K_{r} has {} edges", c.len(), g.edge_count())));
    }
    if !is_good_coloring(&g, c, k, l)? {
        return Ok(None);
    }
    let mut found: Vec<CriticalColoring> = Vec::new();
    for t in regime_types(k, l) {
        let (na, nb) = part_sizes(k, l, t);
        if na + nb != r {
            continue;
        }
        for a_set in subsets(r, na) {
            let mut in_a = vec![false; r];
            for &a in &a_set {
                in_a[a] = true;
            }
            if let Some(special_edge) = matches_type(&g, c, t, &in_a) {
                let b_set = (0..r).filter(|&v| !in_a[v]).collect();
                found.push(CriticalColoring {
                    graph: g.clone(),
                    coloring: c.clone(),
                    a_set,
                    b_set,
                    special_edge,
                    hook_type: t,
                });
                break;
            }
        }
    }
    match found.len() {
        1 => Ok(found.pop()),
        0 => Err(Error::TaxonomyViolation(format!("good coloring {} fits no type", c.assignment_string()))),
        _ => Err(Error::TaxonomyViolation(format!(
            "good coloring {} fits several types: {:?}",
            c.assignment_string(),
            found.iter().map(|f| f.hook_type).collect::<Vec<_>>()
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    A,
    B,
}

/// "Every vertex of `side` is a strict endpoint of a `color` path on
/// `length` vertices."
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EndpointClaim {
    pub side: Side,
    pub color: Color,
    pub length: usize,
}

/// The strict-endpoint claims attached to type `t`.
pub fn endpoint_claims(k: usize, l: usize, t: HookType) -> Vec<EndpointClaim> {
    let claim = |side, color, length| EndpointClaim { side, color, length };
    let even = k % 2 == 0;
    let (main, other) = match t {
        HookType::T1b | HookType::T2b => (Color::Red, Color::Blue),
        _ => (Color::Blue, Color::Red),
    };
    match t {
        HookType::T1 | HookType::T1a | HookType::T1b => vec![
            claim(Side::B, main, l - 1),
            claim(Side::B, other, if even { k - 1 } else { k - 2 }),
            claim(Side::A, other, if even { k - 2 } else { k - 3 }),
        ],
        HookType::T2 | HookType::T2a | HookType::T2b => vec![
            claim(Side::B, main, l - 1),
            claim(Side::B, other, k - 1),
            claim(Side::A, other, k - 2),
        ],
        HookType::T3 => vec![
            claim(Side::B, Color::Red, k - 1),
            claim(Side::B, Color::Blue, l - 1),
            claim(Side::A, Color::Blue, l - 2),
        ],
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClaimTally {
    pub checked: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ObservationReport {
    pub k: usize,
    pub l: usize,
    pub total: u64,
    pub by_type: BTreeMap<HookType, u64>,
    pub claims: BTreeMap<(HookType, EndpointClaim), ClaimTally>,
    /// Types that occurred although the parity rules exclude them.
    pub illegal_types: Vec<HookType>,
}

impl ObservationReport {
    pub fn passed(&self) -> bool {
        self.illegal_types.is_empty() && self.claims.values().all(|t| t.failed == 0)
    }

    /// One line per type and per claim, in a stable order.
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![format!("census k={} l={} colorings={}", self.k, self.l, self.total)];
        for (t, n) in &self.by_type {
            out.push(format!("type {t} count={n}"));
        }
        for ((t, c), tally) in &self.claims {
            out.push(format!(
                "claim {t} {:?} {} strict={} checked={} failed={} {}",
                c.side,
                c.color,
                c.length,
                tally.checked,
                tally.failed,
                if tally.failed == 0 { "PASS" } else { "FAIL" }
            ));
        }
        for t in &self.illegal_types {
            out.push(format!("parity FAIL type {t} occurred"));
        }
        out
    }
}

/// Enumerates every good coloring of `K_r`, classifies each one and checks
/// its strict-endpoint claims.
pub fn verify_observations(k: usize, l: usize, cfg: &SearchConfig) -> Result<ObservationReport> {
    check_regime(k, l)?;
    let r = ramsey_path(k, l)? - 1;
    let g = complete_graph(r)?;
    let fixed = crate::graph::PartialColoring::empty(&g);
    let all = enumerate_good_colorings(&g, k, l, &fixed, u64::MAX, true, cfg)?;
    let legal = legal_types(k, l)?;
    let mut report = ObservationReport { k, l, total: all.count, ..Default::default() };
    for c in &all.colorings {
        let cc = classify_critical(k, l, c)?
            .ok_or_else(|| Error::Internal("enumerated coloring is not good".into()))?;
        let t = cc.hook_type;
        *report.by_type.entry(t).or_default() += 1;
        if !legal.contains(&t) && !report.illegal_types.contains(&t) {
            report.illegal_types.push(t);
        }
        for claim in endpoint_claims(k, l, t) {
            let side = if claim.side == Side::A { &cc.a_set } else { &cc.b_set };
            let tally = report.claims.entry((t, claim)).or_default();
            for &v in side {
                tally.checked += 1;
                if strict_endpoint_length(&g, c, claim.color, v)? != claim.length {
                    tally.failed += 1;
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCheck {
    pub graph: String,
    pub vertices: &'static str,
    pub expected: usize,
    /// Distinct longest-path-from values seen over the checked vertices.
    pub observed: Vec<usize>,
}

impl SplitCheck {
    pub fn passed(&self) -> bool {
        self.observed == [self.expected]
    }

    pub fn line(&self) -> String {
        format!(
            "{} {} expected={} observed={:?} {}",
            self.graph,
            self.vertices,
            self.expected,
            self.observed,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

fn observed(g: &Graph, verts: impl Iterator<Item = usize>) -> Result<Vec<usize>> {
    let mut seen = verts.map(|v| longest_path_from(g, v, g.n())).collect::<Result<Vec<_>>>()?;
    seen.sort_unstable();
    seen.dedup();
    Ok(seen)
}

/// Longest paths ending in split graphs (`M` complete to an independent
/// `N`) and in `K_k`, `K_k - e`, for every `k <= max_k`.
pub fn verify_split_lemmas(max_k: usize) -> Result<Vec<SplitCheck>> {
    if max_k > 7 {
        return Err(Error::InvalidArgument(format!("max_k is limited to 7, got {max_k}")));
    }
    let mut out = Vec::new();
    for k in 1..=max_k {
        for nn in [k, k + 1, k + 2] {
            // M = 0..k, N = k..k+nn.
            let bare = complete_bipartite(k, nn);
            let mut edges = bare.edges().to_vec();
            edges.extend((0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))));
            let full = Graph::new(k + nn, edges)?;
            for (name, g) in [("split", &bare), ("split+E(M)", &full)] {
                let label = format!("{name} |M|={k} |N|={nn}");
                if nn > k {
                    out.push(SplitCheck {
                        graph: label.clone(),
                        vertices: "N",
                        expected: 2 * k + 1,
                        observed: observed(g, k..k + nn)?,
                    });
                }
                out.push(SplitCheck { graph: label, vertices: "M", expected: 2 * k, observed: observed(g, 0..k)? });
            }
        }
        let kk = complete_graph(k)?;
        out.push(SplitCheck { graph: format!("K_{k}"), vertices: "all", expected: k, observed: observed(&kk, 0..k)? });
        if k >= 4 {
            let ke = complete_minus_edge(k)?;
            out.push(SplitCheck {
                graph: format!("K_{k}-e"),
                vertices: "all",
                expected: k,
                observed: observed(&ke, 0..k)?,
            });
        }
    }
    Ok(out)
}
