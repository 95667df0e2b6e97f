//! Transmitters: good graphs whose port vertex is, in every good coloring,
//! the strict endpoint of a monochromatic path of forced length with no
//! incident edge of the other color.
//!
//! Labeling: thread-based constructions inherit the layout of
//! [`thread`](crate::graph::thread) (copy `i` at offset `i * |V(H)|`,
//! thread-end last). Leaves are appended after the vertices they hang from.

use std::fmt;
use std::str::FromStr;

use crate::critical::{classify_critical, ramsey_path, HookType};
use crate::engine::{enumerate_good_colorings, SearchConfig};
use crate::error::{Error, Result};
use crate::graph::{attach_leaf, complete_graph, contract_vertices, disjoint_union, thread, Color, EdgeColoring, Graph, PartialColoring};
use crate::paths::strict_endpoint_length;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransmitterSpec {
    /// Port is a strict endpoint of a red `P_x`, `3 <= k < l`, `2 <= x <= k - 1`.
    RedUneq { k: usize, l: usize, x: usize },
    /// Port is a strict endpoint of a blue `P_x`, `3 <= k < l`, `2 <= x <= l - 1`.
    BlueUneq { k: usize, l: usize, x: usize },
    /// Port is a strict endpoint of a red or a blue `P_x` for `(P_k, P_k)`.
    Symmetric { k: usize, x: usize },
}

impl TransmitterSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            TransmitterSpec::RedUneq { k, l, x } => 3 <= k && k < l && (2..k).contains(&x),
            TransmitterSpec::BlueUneq { k, l, x } => 3 <= k && k < l && (2..l).contains(&x),
            TransmitterSpec::Symmetric { k, x } => k >= 3 && (2..k).contains(&x),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("invalid transmitter parameters {self}")))
        }
    }

    /// `(k, l)` of the arrowing problem this transmitter belongs to.
    pub fn problem(&self) -> (usize, usize) {
        match *self {
            TransmitterSpec::RedUneq { k, l, .. } | TransmitterSpec::BlueUneq { k, l, .. } => (k, l),
            TransmitterSpec::Symmetric { k, .. } => (k, k),
        }
    }

    pub fn length(&self) -> usize {
        match *self {
            TransmitterSpec::RedUneq { x, .. } | TransmitterSpec::BlueUneq { x, .. } | TransmitterSpec::Symmetric { x, .. } => x,
        }
    }

    /// The forced color, `None` for symmetric transmitters.
    pub fn color(&self) -> Option<Color> {
        match self {
            TransmitterSpec::RedUneq { .. } => Some(Color::Red),
            TransmitterSpec::BlueUneq { .. } => Some(Color::Blue),
            TransmitterSpec::Symmetric { .. } => None,
        }
    }

    pub fn build(&self) -> Result<Transmitter> {
        self.validate()?;
        match *self {
            TransmitterSpec::RedUneq { k, l, x } if x == k - 1 => red_transmitter(k, l),
            TransmitterSpec::RedUneq { k, l, x } => red_transmitter_general(k, l, x),
            TransmitterSpec::BlueUneq { k, l, x } => blue_transmitter(k, l, x),
            TransmitterSpec::Symmetric { k, x } => symmetric_transmitter(k, x),
        }
    }
}

impl fmt::Display for TransmitterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TransmitterSpec::RedUneq { k, l, x } => write!(f, "red:{k}:{l}:{x}"),
            TransmitterSpec::BlueUneq { k, l, x } => write!(f, "blue:{k}:{l}:{x}"),
            TransmitterSpec::Symmetric { k, x } => write!(f, "sym:{k}:{k}:{x}"),
        }
    }
}

impl FromStr for TransmitterSpec {
    type Err = Error;

    /// `red:k:l:x`, `blue:k:l:x` or `sym:k:k:x`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad transmitter `{s}`, expected kind:k:l:x"));
        let parts: Vec<&str> = s.split(':').collect();
        let [kind, k, l, x] = parts.as_slice() else { return Err(bad()) };
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let (k, l, x) = (num(k)?, num(l)?, num(x)?);
        let spec = match *kind {
            "red" => TransmitterSpec::RedUneq { k, l, x },
            "blue" => TransmitterSpec::BlueUneq { k, l, x },
            "sym" if k == l => TransmitterSpec::Symmetric { k, x },
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transmitter {
    pub graph: Graph,
    pub port: usize,
}

/// `K_r` with a leaf on each of the vertices `1..=count`.
fn clique_with_leaves(r: usize, count: usize) -> Result<Graph> {
    let mut g = complete_graph(r)?;
    for v in 1..=count {
        g = attach_leaf(&g, v)?.0;
    }
    Ok(g)
}

/// Two `K_r` sharing vertex 0: the second clique is `{0} ∪ r..2r-1`.
fn cliques_sharing_vertex(r: usize) -> Result<Graph> {
    let k = complete_graph(r)?;
    let two = disjoint_union(&k, &k);
    Ok(contract_vertices(&two, 0, r)?.0)
}

/// The `(k, l, k-1)` red transmitter.
pub fn red_transmitter(k: usize, l: usize) -> Result<Transmitter> {
    if k < 3 || k >= l {
        return Err(Error::InvalidArgument(format!("red transmitters need 3 <= k < l, got ({k}, {l})")));
    }
    if k == 3 {
        let (graph, port) = attach_leaf(&complete_graph(l - 1)?, 0)?;
        return Ok(Transmitter { graph, port });
    }
    let r = ramsey_path(k, l)? - 1;
    if k % 2 == 0 {
        let t = thread(&complete_graph(r)?, 0, l - 1)?;
        return Ok(Transmitter { graph: t.graph, port: t.end });
    }
    if l > k + 1 {
        let h = clique_with_leaves(r, k / 2 - 1)?;
        let t = thread(&h, 0, l - 1)?;
        return Ok(Transmitter { graph: t.graph, port: t.end });
    }
    if k < 7 {
        return Err(Error::NotReconstructed(format!(
            "the ({k}, {l}, {}) red transmitter needs a bespoke construction that is not available",
            k - 1
        )));
    }
    // Two cliques sharing p = 0 with a leaf q on p; two copies glued at q,
    // then a leaf on the glued vertex.
    let (h, q) = attach_leaf(&cliques_sharing_vertex(r)?, 0)?;
    let two = disjoint_union(&h, &h);
    let (g, merged) = contract_vertices(&two, q, h.n() + q)?;
    let (graph, port) = attach_leaf(&g, merged)?;
    Ok(Transmitter { graph, port })
}

/// The `(k, l, x)` blue transmitter: `x - 1` red transmitters threaded
/// through their ports.
pub fn blue_transmitter(k: usize, l: usize, x: usize) -> Result<Transmitter> {
    TransmitterSpec::BlueUneq { k, l, x }.validate()?;
    let h = red_transmitter(k, l)?;
    let t = thread(&h.graph, h.port, x - 1)?;
    Ok(Transmitter { graph: t.graph, port: t.end })
}

/// The `(k, l, x)` red transmitter for any valid `x`: `x - 1` copies of the
/// `(k, l, l-1)` blue transmitter threaded through their ports.
pub fn red_transmitter_general(k: usize, l: usize, x: usize) -> Result<Transmitter> {
    TransmitterSpec::RedUneq { k, l, x }.validate()?;
    let h = blue_transmitter(k, l, l - 1)?;
    let t = thread(&h.graph, h.port, x - 1)?;
    Ok(Transmitter { graph: t.graph, port: t.end })
}

/// The `(k, x)` transmitter for `(P_k, P_k)`.
///
/// For `k = 4` the graph is built as for other even `k` but is not a
/// transmitter; `verify_transmitter` rejects it.
pub fn symmetric_transmitter(k: usize, x: usize) -> Result<Transmitter> {
    TransmitterSpec::Symmetric { k, x }.validate()?;
    if k == 3 {
        return Ok(Transmitter { graph: complete_graph(2)?, port: 1 });
    }
    let r = ramsey_path(k, k)? - 1;
    let base = if k % 2 == 0 {
        cliques_sharing_vertex(r)?
    } else {
        let h = clique_with_leaves(r, k / 2 - 1)?;
        let two = disjoint_union(&h, &h);
        contract_vertices(&two, 0, h.n())?.0
    };
    let (graph, port) = attach_leaf(&base, 0)?;
    if x == k - 1 {
        return Ok(Transmitter { graph, port });
    }
    let t = thread(&graph, port, x - 1)?;
    Ok(Transmitter { graph: t.graph, port: t.end })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransmitterReport {
    pub spec: TransmitterSpec,
    pub good_colorings: u64,
    pub violations: u64,
    pub first_violation: Option<EdgeColoring>,
}

impl TransmitterReport {
    pub fn passed(&self) -> bool {
        self.good_colorings > 0 && self.violations == 0
    }

    pub fn line(&self) -> String {
        format!(
            "transmitter {} good_colorings={} violations={} {}",
            self.spec,
            self.good_colorings,
            self.violations,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// Whether `v` carries a clean `color` signal of length `x` in `c`.
pub fn port_signal_holds(g: &Graph, c: &EdgeColoring, v: usize, color: Color, x: usize) -> Result<bool> {
    let clean = g.incident(v).iter().all(|&(_, e)| c.get(e) == color);
    Ok(clean && strict_endpoint_length(g, c, color, v)? == x)
}

/// Checks the transmitter property over every good coloring of `g`.
pub fn verify_transmitter(g: &Graph, v: usize, spec: TransmitterSpec, cfg: &SearchConfig) -> Result<TransmitterReport> {
    spec.validate()?;
    g.check_vertex(v)?;
    let (k, l) = spec.problem();
    let x = spec.length();
    let all = enumerate_good_colorings(g, k, l, &PartialColoring::empty(g), u64::MAX, true, cfg)?;
    let mut report = TransmitterReport { spec, good_colorings: all.count, violations: 0, first_violation: None };
    for c in all.colorings {
        let ok = match spec.color() {
            Some(color) => port_signal_holds(g, &c, v, color, x)?,
            None => port_signal_holds(g, &c, v, Color::Red, x)? || port_signal_holds(g, &c, v, Color::Blue, x)?,
        };
        if !ok {
            report.violations += 1;
            report.first_violation.get_or_insert(c);
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkReport {
    pub k: usize,
    pub l: usize,
    pub good_colorings: u64,
    pub link_blue: u64,
    pub ends_in_a: u64,
}

impl LinkReport {
    pub fn passed(&self) -> bool {
        self.good_colorings > 0 && self.link_blue == self.good_colorings && self.ends_in_a == self.good_colorings
    }

    pub fn line(&self) -> String {
        format!(
            "link k={} l={} good_colorings={} link_blue={} ends_in_A={} {}",
            self.k,
            self.l,
            self.good_colorings,
            self.link_blue,
            self.ends_in_a,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// Two critical cliques joined by the edge `(0, r)`: in every good coloring
/// the joining edge is blue and both of its ends lie in the `A` part.
pub fn verify_link(k: usize, l: usize, cfg: &SearchConfig) -> Result<LinkReport> {
    let r = ramsey_path(k, l)? - 1;
    let kr = complete_graph(r)?;
    let two = disjoint_union(&kr, &kr);
    let mut edges = two.edges().to_vec();
    edges.push((0, r));
    let g = Graph::new(2 * r, edges)?;
    let all = enumerate_good_colorings(&g, k, l, &PartialColoring::empty(&g), u64::MAX, true, cfg)?;
    let link = g.edge_id(0, r).ok_or(Error::MissingEdge((0, r)))?;
    let mut report = LinkReport { k, l, good_colorings: all.count, link_blue: 0, ends_in_a: 0 };
    for c in &all.colorings {
        if c.get(link) == Color::Blue {
            report.link_blue += 1;
        }
        let mut in_a = true;
        for offset in [0, r] {
            let colors = kr.edges().iter().map(|&(u, v)| c.color_of(&g, u + offset, v + offset).expect("clique edge")).collect();
            let cc = classify_critical(k, l, &EdgeColoring::new(colors))?
                .ok_or_else(|| Error::Internal("clique restriction of a good coloring is not good".into()))?;
            in_a &= cc.a_set.contains(&0) && cc.hook_type != HookType::T3;
        }
        if in_a {
            report.ends_in_a += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::is_good_coloring;

    #[test]
    fn shapes() {
        let t = red_transmitter(3, 5).unwrap();
        assert_eq!((t.graph.n(), t.graph.edge_count(), t.port), (5, 7, 4));
        let t = red_transmitter(4, 5).unwrap();
        assert_eq!(t.graph.n(), 21);
        assert_eq!(t.graph.degree(t.port), 1);
        let t = red_transmitter(5, 7).unwrap();
        // K_7 plus one leaf per copy, six copies, plus the thread-end.
        assert_eq!(t.graph.n(), 8 * 6 + 1);
        assert!(matches!(red_transmitter(5, 6), Err(Error::NotReconstructed(_))));
        let t = red_transmitter(7, 8).unwrap();
        // r = 9: two cliques sharing a vertex plus q is 18 vertices; two copies
        // glued at q, plus the port leaf.
        assert_eq!(t.graph.n(), 2 * 18 - 1 + 1);

        let t = blue_transmitter(4, 5, 3).unwrap();
        assert_eq!(t.graph.n(), 2 * 21 + 1);
        let t = blue_transmitter(3, 5, 2).unwrap();
        assert_eq!(t.graph.n(), 6);
        let t = red_transmitter_general(4, 6, 2).unwrap();
        assert_eq!(t.graph.degree(t.port), 1);

        assert_eq!(symmetric_transmitter(3, 2).unwrap().graph, complete_graph(2).unwrap());
        let t = symmetric_transmitter(4, 3).unwrap();
        assert_eq!((t.graph.n(), t.graph.edge_count()), (8, 13));
        let t = symmetric_transmitter(5, 4).unwrap();
        assert_eq!((t.graph.n(), t.graph.edge_count()), (12, 23));
        assert!(symmetric_transmitter(4, 4).is_err());
    }

    #[test]
    fn spec_text_round_trip() {
        for s in ["red:4:5:3", "blue:3:6:5", "sym:5:5:2"] {
            assert_eq!(s.parse::<TransmitterSpec>().unwrap().to_string(), s);
        }
        assert!("red:4:5:4".parse::<TransmitterSpec>().is_err());
        assert!("sym:4:5:2".parse::<TransmitterSpec>().is_err());
        assert!("red:4:5".parse::<TransmitterSpec>().is_err());
    }

    #[test]
    fn small_transmitters_verify() {
        let cfg = SearchConfig::default();
        for l in [5, 6] {
            let t = red_transmitter(3, l).unwrap();
            let r = verify_transmitter(&t.graph, t.port, TransmitterSpec::RedUneq { k: 3, l, x: 2 }, &cfg).unwrap();
            assert!(r.passed(), "{}", r.line());
        }
        let t = symmetric_transmitter(5, 4).unwrap();
        let r = verify_transmitter(&t.graph, t.port, TransmitterSpec::Symmetric { k: 5, x: 4 }, &cfg).unwrap();
        assert!(r.passed(), "{}", r.line());
        // Wrong claims are caught.
        let t = red_transmitter(3, 5).unwrap();
        let r = verify_transmitter(&t.graph, t.port, TransmitterSpec::BlueUneq { k: 3, l: 5, x: 2 }, &cfg).unwrap();
        assert!(!r.passed());
        assert!(!is_good_coloring(&t.graph, r.first_violation.as_ref().unwrap(), 3, 5).unwrap() || r.violations > 0);
    }

    // At k = 4 both cliques may take the same type at the shared vertex: the
    // red star through it has only 3 vertices, so the leaf can be blue and
    // the port ends a blue P_2.
    #[test]
    fn k4_base_admits_a_short_signal() {
        let t = symmetric_transmitter(4, 3).unwrap();
        let r = verify_transmitter(&t.graph, t.port, TransmitterSpec::Symmetric { k: 4, x: 3 }, &SearchConfig::default())
            .unwrap();
        assert_eq!((r.good_colorings, r.violations), (8, 2));
        let bad = r.first_violation.unwrap();
        assert!(is_good_coloring(&t.graph, &bad, 4, 4).unwrap());
    }

    #[test]
    fn link_edge_is_blue() {
        let r = verify_link(4, 5, &SearchConfig::default()).unwrap();
        assert!(r.passed(), "{}", r.line());
    }
}
