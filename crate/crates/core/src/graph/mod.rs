//! Simple undirected graphs and red/blue edge colorings.
//!
//! Vertices are dense `0..n` indices. Edges are stored canonically as
//! `(u, v)` with `u < v`, sorted lexicographically; an edge's position in
//! that order is its id, and colorings are vectors indexed by edge id.

mod io;

pub use io::{parse_coloring, parse_graph, serialize_coloring, serialize_graph};

use std::fmt;

use crate::error::{Error, Result};

pub type Edge = (usize, usize);

#[inline]
pub fn canonical(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Color::Red => 0,
            Color::Blue => 1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Red => f.write_str("red"),
            Color::Blue => f.write_str("blue"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    /// `adj[v]` holds `(neighbor, edge id)` pairs sorted by neighbor.
    adj: Vec<Vec<(usize, usize)>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range
    /// endpoints. Edge orientation in the input does not matter.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n {
                return Err(Error::InvalidVertex { vertex: u, n });
            }
            if v >= n {
                return Err(Error::InvalidVertex { vertex: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push(canonical(u, v));
        }
        list.sort_unstable();
        for w in list.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge(w[0]));
            }
        }
        Ok(Self::from_sorted(n, list))
    }

    /// Like [`Graph::new`] but silently drops duplicate edges.
    pub(crate) fn from_edges_dedup(n: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut list: Vec<Edge> = edges
            .into_iter()
            .map(|(u, v)| canonical(u, v))
            .collect();
        list.sort_unstable();
        list.dedup();
        debug_assert!(list.iter().all(|&(u, v)| u < v && v < n));
        Self::from_sorted(n, list)
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&canonical(u, v)).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edge_id(u, v).is_some()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    /// `(neighbor, edge id)` pairs incident to `v`.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n })
        }
    }

    /// Re-checks the structural invariants. Constructors uphold them, so this
    /// only ever fails on a bug.
    pub fn validate(&self) -> Result<()> {
        for w in self.edges.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::DuplicateEdge(w[1]));
            }
        }
        for &(u, v) in &self.edges {
            if u >= v {
                return Err(Error::SelfLoop(u));
            }
            self.check_vertex(v)?;
        }
        let degree_sum: usize = self.adj.iter().map(Vec::len).sum();
        if degree_sum != 2 * self.edges.len() {
            return Err(Error::Internal("adjacency out of sync with edge list".into()));
        }
        Ok(())
    }

    /// Same vertex set, keeping only the edges whose ids satisfy `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize) -> bool) -> Graph {
        let edges = (0..self.edges.len())
            .filter(|&id| keep(id))
            .map(|id| self.edges[id])
            .collect();
        Self::from_sorted(self.n, edges)
    }

    /// Deletes every edge incident to `v`; the vertex itself stays (isolated).
    pub fn isolate(&self, v: usize) -> Graph {
        self.filter_edges(|id| {
            let (a, b) = self.edges[id];
            a != v && b != v
        })
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut comp = vec![root];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }
}

/// A total red/blue coloring, indexed by edge id of its graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeColoring {
    colors: Vec<Color>,
}

impl EdgeColoring {
    pub fn new(colors: Vec<Color>) -> Self {
        EdgeColoring { colors }
    }

    pub fn uniform(g: &Graph, color: Color) -> Self {
        EdgeColoring { colors: vec![color; g.edge_count()] }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, id: usize) -> Color {
        self.colors[id]
    }

    pub fn set(&mut self, id: usize, color: Color) {
        self.colors[id] = color;
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Color of edge `(u, v)` in `g`, if that edge exists.
    pub fn color_of(&self, g: &Graph, u: usize, v: usize) -> Option<Color> {
        g.edge_id(u, v).map(|id| self.colors[id])
    }

    /// The subgraph formed by edges of one color.
    pub fn class(&self, g: &Graph, color: Color) -> Graph {
        g.filter_edges(|id| self.colors[id] == color)
    }

    /// `R`/`B` letters in edge-id order.
    pub fn assignment_string(&self) -> String {
        self.colors.iter().map(|c| c.letter()).collect()
    }

    pub fn is_for(&self, g: &Graph) -> bool {
        self.colors.len() == g.edge_count()
    }
}

/// A coloring of some subset of the edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialColoring {
    colors: Vec<Option<Color>>,
}

impl PartialColoring {
    pub fn empty(g: &Graph) -> Self {
        PartialColoring { colors: vec![None; g.edge_count()] }
    }

    pub fn from_options(colors: Vec<Option<Color>>) -> Self {
        PartialColoring { colors }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.iter().all(Option::is_none)
    }

    pub fn get(&self, id: usize) -> Option<Color> {
        self.colors[id]
    }

    pub fn set(&mut self, id: usize, color: Option<Color>) {
        self.colors[id] = color;
    }

    pub fn options(&self) -> &[Option<Color>] {
        &self.colors
    }

    pub fn assigned_count(&self) -> usize {
        self.colors.iter().filter(|c| c.is_some()).count()
    }

    pub fn free_count(&self) -> usize {
        self.colors.len() - self.assigned_count()
    }

    pub fn to_total(&self, g: &Graph) -> Result<EdgeColoring> {
        self.colors
            .iter()
            .enumerate()
            .map(|(id, c)| c.ok_or(Error::PartialColoring(g.edge(id))))
            .collect::<Result<Vec<_>>>()
            .map(EdgeColoring::new)
    }
}

impl From<&EdgeColoring> for PartialColoring {
    fn from(c: &EdgeColoring) -> Self {
        PartialColoring { colors: c.colors.iter().copied().map(Some).collect() }
    }
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

/// `P_n`: vertices `0..n` in order.
pub fn path_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("path graph needs at least one vertex".into()));
    }
    Ok(Graph::from_sorted(n, (1..n).map(|i| (i - 1, i)).collect()))
}

/// `C_n`: vertices `0..n` in cyclic order.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("complete graph needs at least one vertex".into()));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Ok(Graph::from_sorted(n, edges))
}

/// `K_n - e` with the missing edge fixed at `(0, 1)`.
pub fn complete_minus_edge(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("K_n - e needs n >= 2, got {n}")));
    }
    let k = complete_graph(n)?;
    Ok(k.filter_edges(|id| id != 0))
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::with_capacity(a * b);
    for u in 0..a {
        for v in a..a + b {
            edges.push((u, v));
        }
    }
    Graph::from_sorted(a + b, edges)
}

/// Vertices of `g2` are shifted by `g1.n()`.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Graph {
    let shift = g1.n;
    let edges = g1
        .edges
        .iter()
        .copied()
        .chain(g2.edges.iter().map(|&(u, v)| (u + shift, v + shift)))
        .collect();
    Graph::from_sorted(g1.n + g2.n, edges)
}

/// Merges `u` and `v` into one vertex adjacent to `N(u) ∪ N(v) \ {u, v}`.
///
/// The merged vertex takes label `min(u, v)`. To keep labels dense, the
/// vertex with the largest label is moved into the slot freed by `max(u, v)`.
/// Returns the new graph and the merged vertex.
pub fn contract_vertices(g: &Graph, u: usize, v: usize) -> Result<(Graph, usize)> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::InvalidArgument(format!("cannot contract vertex {u} with itself")));
    }
    let (keep, drop) = (u.min(v), u.max(v));
    let last = g.n - 1;
    let relabel = |x: usize| -> usize {
        if x == drop {
            keep
        } else if x == last {
            drop
        } else {
            x
        }
    };
    let edges: Vec<Edge> = g
        .edges
        .iter()
        .map(|&(a, b)| (relabel(a), relabel(b)))
        .filter(|&(a, b)| a != b)
        .collect();
    Ok((Graph::from_edges_dedup(g.n - 1, edges), keep))
}

/// Adds a new vertex (label `g.n()`) adjacent only to `u`.
pub fn attach_leaf(g: &Graph, u: usize) -> Result<(Graph, usize)> {
    g.check_vertex(u)?;
    let leaf = g.n;
    let mut edges = g.edges.clone();
    edges.push((u, leaf));
    edges.sort_unstable();
    Ok((Graph::from_sorted(g.n + 1, edges), leaf))
}

/// The result of [`thread`].
#[derive(Debug, Clone)]
pub struct Thread {
    pub graph: Graph,
    /// The pendant vertex attached to the last copy; always the last label.
    pub end: usize,
    /// The copies of the threaded vertex, in chain order.
    pub links: Vec<usize>,
}

/// `m` copies of `h` chained through their copies of `u`, plus a pendant
/// thread-end on the last copy.
///
/// Copy `i` occupies labels `i*|V(h)| .. (i+1)*|V(h)|`; the thread-end is
/// labelled `m*|V(h)|`.
pub fn thread(h: &Graph, u: usize, m: usize) -> Result<Thread> {
    h.check_vertex(u)?;
    if m == 0 {
        return Err(Error::InvalidArgument("thread needs at least one copy".into()));
    }
    let size = h.n;
    let links: Vec<usize> = (0..m).map(|i| i * size + u).collect();
    let end = m * size;
    let mut edges = Vec::with_capacity(m * (h.edge_count() + 1));
    for i in 0..m {
        let off = i * size;
        edges.extend(h.edges.iter().map(|&(a, b)| (a + off, b + off)));
    }
    for w in links.windows(2) {
        edges.push((w[0], w[1]));
    }
    edges.push((links[m - 1], end));
    let graph = Graph::new(end + 1, edges)?;
    Ok(Thread { graph, end, links })
}
