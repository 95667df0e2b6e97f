//! Fixed-length path detection and longest-path-from-a-vertex queries.
//!
//! Every query is an exact depth-bounded DFS. When the graph has at most
//! 128 vertices the search memoizes `(visited set, current vertex)` states:
//! the remainder of a search depends on nothing else, so a repeated state
//! can be skipped.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{Color, EdgeColoring, Graph};

/// Default vertex cap for longest-path queries.
pub const DEFAULT_PATH_CAP: usize = 12;

/// Anything that can list the neighbors of a vertex.
pub trait Adjacency {
    fn vertex_count(&self) -> usize;
    fn for_each_neighbor(&self, v: usize, f: impl FnMut(usize) -> bool) -> bool;
}

impl Adjacency for Graph {
    fn vertex_count(&self) -> usize {
        self.n()
    }

    #[inline]
    fn for_each_neighbor(&self, v: usize, mut f: impl FnMut(usize) -> bool) -> bool {
        self.neighbors(v).any(&mut f)
    }
}

impl Adjacency for [Vec<usize>] {
    fn vertex_count(&self) -> usize {
        self.len()
    }

    #[inline]
    fn for_each_neighbor(&self, v: usize, mut f: impl FnMut(usize) -> bool) -> bool {
        self[v].iter().any(|&w| f(w))
    }
}

/// One color class of a coloring, viewed as a graph.
#[derive(Debug, Clone)]
pub struct ColorSubgraph {
    pub color: Color,
    graph: Graph,
}

impl ColorSubgraph {
    pub fn new(base: &Graph, coloring: &EdgeColoring, color: Color) -> Result<Self> {
        check_total(base, coloring)?;
        Ok(ColorSubgraph { color, graph: coloring.class(base, color) })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }
}

fn check_total(g: &Graph, c: &EdgeColoring) -> Result<()> {
    if c.is_for(g) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "coloring covers {} edges but the graph has {}",
            c.len(),
            g.edge_count()
        )))
    }
}

/// Searches for a path with `limit` vertices starting at `start`; returns the
/// largest vertex count seen, stopping early once `limit` is reached.
struct Search<'a, A: Adjacency + ?Sized> {
    adj: &'a A,
    limit: usize,
    best: usize,
    seen: HashSet<(u128, u32)>,
    visited: Vec<bool>,
}

impl<'a, A: Adjacency + ?Sized> Search<'a, A> {
    fn new(adj: &'a A, limit: usize) -> Self {
        Search {
            adj,
            limit,
            best: 0,
            seen: HashSet::new(),
            visited: vec![false; adj.vertex_count()],
        }
    }

    fn memoized(&self) -> bool {
        self.adj.vertex_count() <= 128
    }

    fn run(&mut self, start: usize) -> usize {
        self.best = self.best.max(1);
        if self.best >= self.limit {
            return self.best;
        }
        if self.memoized() {
            self.go_masked(start, 1u128 << start, 1);
        } else {
            self.visited[start] = true;
            self.go_plain(start, 1);
            self.visited[start] = false;
        }
        self.best
    }

    fn go_masked(&mut self, cur: usize, mask: u128, len: usize) -> bool {
        if len > self.best {
            self.best = len;
            if len >= self.limit {
                return true;
            }
        }
        let adj = self.adj;
        adj.for_each_neighbor(cur, |w| {
            let bit = 1u128 << w;
            if mask & bit != 0 {
                return false;
            }
            let next = mask | bit;
            self.seen.insert((next, w as u32)) && self.go_masked(w, next, len + 1)
        })
    }

    fn go_plain(&mut self, cur: usize, len: usize) -> bool {
        if len > self.best {
            self.best = len;
            if len >= self.limit {
                return true;
            }
        }
        let adj = self.adj;
        adj.for_each_neighbor(cur, |w| {
            if self.visited[w] {
                return false;
            }
            self.visited[w] = true;
            let done = self.go_plain(w, len + 1);
            self.visited[w] = false;
            done
        })
    }
}

/// Whether `g` contains `P_n` (a simple path on `n` vertices).
pub fn contains_path<A: Adjacency + ?Sized>(g: &A, n: usize) -> bool {
    if n == 0 {
        return true;
    }
    // Memo states are start-independent for a fixed target, so one search
    // object is shared by all roots.
    let mut search = Search::new(g, n);
    (0..g.vertex_count()).any(|v| search.run(v) >= n)
}

/// Vertex count of the longest path with endpoint `v`.
///
/// Fails with [`Error::CapExceeded`] if some path from `v` has more than
/// `cap` vertices, rather than truncating.
pub fn longest_path_from<A: Adjacency + ?Sized>(g: &A, v: usize, cap: usize) -> Result<usize> {
    if v >= g.vertex_count() {
        return Err(Error::InvalidVertex { vertex: v, n: g.vertex_count() });
    }
    let found = Search::new(g, cap + 1).run(v);
    if found > cap {
        Err(Error::CapExceeded { vertex: v, cap })
    } else {
        Ok(found)
    }
}

/// No red `P_k` and no blue `P_l`.
pub fn is_good_coloring(g: &Graph, c: &EdgeColoring, k: usize, l: usize) -> Result<bool> {
    check_total(g, c)?;
    Ok(!contains_path(&c.class(g, Color::Red), k) && !contains_path(&c.class(g, Color::Blue), l))
}

/// Longest path of `color` edges ending at `v`, in vertices (1 if `v` has
/// no incident edge of that color).
pub fn strict_endpoint_length(g: &Graph, c: &EdgeColoring, color: Color, v: usize) -> Result<usize> {
    check_total(g, c)?;
    let class = c.class(g, color);
    longest_path_from(&class, v, class.n().max(1))
}

/// Whether the graph, which already contains edge `(u, v)`, has a simple
/// path on at least `target` vertices that uses that edge.
///
/// This is the engine's incremental check after coloring a single edge.
pub fn has_path_through_edge<A: Adjacency + ?Sized>(
    adj: &A,
    u: usize,
    v: usize,
    target: usize,
    visited: &mut [bool],
) -> bool {
    if target <= 2 {
        return true;
    }
    visited[u] = true;
    visited[v] = true;
    let found = extend_u_side(adj, u, v, 1, target, visited);
    visited[u] = false;
    visited[v] = false;
    found
}

// A path through (u, v) with >= target vertices can be trimmed to exactly
// target vertices while keeping the edge, so searching for exact lengths is
// enough.
fn extend_u_side<A: Adjacency + ?Sized>(
    adj: &A,
    tip: usize,
    v: usize,
    u_len: usize,
    target: usize,
    visited: &mut [bool],
) -> bool {
    if reach_v_side(adj, v, target - u_len - 1, visited) {
        return true;
    }
    if u_len + 1 >= target {
        return false;
    }
    adj.for_each_neighbor(tip, |w| {
        if visited[w] {
            return false;
        }
        visited[w] = true;
        let found = extend_u_side(adj, w, v, u_len + 1, target, visited);
        visited[w] = false;
        found
    })
}

/// Can the path be extended from `tip` by `more` further vertices?
fn reach_v_side<A: Adjacency + ?Sized>(adj: &A, tip: usize, more: usize, visited: &mut [bool]) -> bool {
    if more == 0 {
        return true;
    }
    adj.for_each_neighbor(tip, |w| {
        if visited[w] {
            return false;
        }
        visited[w] = true;
        let found = reach_v_side(adj, w, more - 1, visited);
        visited[w] = false;
        found
    })
}
