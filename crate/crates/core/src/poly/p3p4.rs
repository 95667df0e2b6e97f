//! `(P_3, P_4)`: degree-based preprocessing followed by 2SAT.

use std::collections::BTreeSet;

use super::twosat::{solve_2sat, Lit, TwoSatFormula};
use crate::engine::Verdict;
use crate::error::{Error, Result};
use crate::graph::{Color, EdgeColoring, Graph};
use crate::paths::is_good_coloring;

/// One vertex removal performed by preprocessing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Removal {
    /// `v` had degree 1; its neighbor `u` had degree 1 (`w = None`) or
    /// degree 2 with other neighbor `w`.
    Leaf { v: usize, u: usize, w: Option<usize> },
    /// `v2` was the second vertex of a path `v1 v2 v3 v4` of degree-2
    /// vertices; `v0` and `v5` are the outer neighbors of `v1` and `v4`.
    /// On a 4-cycle `v0 = v4` and `v5 = v1`.
    MidP4 { v0: usize, v1: usize, v2: usize, v3: usize, v4: usize, v5: usize },
}

impl Removal {
    pub fn removed_vertex(&self) -> usize {
        match *self {
            Removal::Leaf { v, .. } => v,
            Removal::MidP4 { v2, .. } => v2,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub removals: Vec<Removal>,
}

impl ReductionTrace {
    /// Applies the removals to `g`; on the original graph this yields the
    /// reduced graph. Removed vertices stay as isolated labels.
    pub fn replay(&self, g: &Graph) -> Graph {
        self.removals.iter().fold(g.clone(), |h, r| h.isolate(r.removed_vertex()))
    }
}

fn other_neighbor(g: &Graph, v: usize, not: usize) -> Option<usize> {
    g.neighbors(v).find(|&w| w != not)
}

fn leaf_rule(g: &Graph, v: usize) -> Option<Removal> {
    if g.degree(v) != 1 {
        return None;
    }
    let u = g.neighbors(v).next()?;
    match g.degree(u) {
        1 => Some(Removal::Leaf { v, u, w: None }),
        2 => Some(Removal::Leaf { v, u, w: other_neighbor(g, u, v) }),
        _ => None,
    }
}

fn mid_p4_rule(g: &Graph, v2: usize) -> Option<Removal> {
    if g.degree(v2) != 2 {
        return None;
    }
    let nbrs: Vec<usize> = g.neighbors(v2).collect();
    for (v1, v3) in [(nbrs[0], nbrs[1]), (nbrs[1], nbrs[0])] {
        if g.degree(v1) != 2 || g.degree(v3) != 2 {
            continue;
        }
        let Some(v4) = other_neighbor(g, v3, v2) else { continue };
        if v4 == v1 || g.degree(v4) != 2 {
            continue;
        }
        let v0 = other_neighbor(g, v1, v2)?;
        let v5 = other_neighbor(g, v4, v3)?;
        return Some(Removal::MidP4 { v0, v1, v2, v3, v4, v5 });
    }
    None
}

/// The first applicable removal, scanning vertices in increasing order.
fn applicable_rule(g: &Graph) -> Option<Removal> {
    (0..g.n()).find_map(|v| leaf_rule(g, v).or_else(|| mid_p4_rule(g, v)))
}

/// Removes leaf and middle-of-P4 vertices until neither rule applies.
pub fn preprocess_p3p4(g: &Graph) -> (Graph, ReductionTrace) {
    let mut h = g.clone();
    let mut trace = ReductionTrace::default();
    while let Some(r) = applicable_rule(&h) {
        h = h.isolate(r.removed_vertex());
        trace.removals.push(r);
    }
    (h, trace)
}

/// The formula whose models are the good colorings of a preprocessed
/// graph. Variable `i` means "edge `i` is red".
pub fn build_2sat(g: &Graph) -> Result<TwoSatFormula> {
    if let Some(r) = applicable_rule(g) {
        return Err(Error::NotPreprocessed(r.removed_vertex()));
    }
    let id = |u: usize, v: usize| g.edge_id(u, v).expect("adjacent vertices");
    let mut clauses = BTreeSet::new();
    let mut push = |a: Lit, b: Lit| {
        clauses.insert(if a <= b { (a, b) } else { (b, a) });
    };
    for v2 in 0..g.n() {
        let nbrs: Vec<usize> = g.neighbors(v2).collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                push(Lit::neg(id(a, v2)), Lit::neg(id(v2, b)));
            }
        }
        // Ordered P4s v1 v2 v3 v4; both orientations of each path occur.
        for &v3 in &nbrs {
            for &v1 in nbrs.iter().filter(|&&x| x != v3) {
                for v4 in g.neighbors(v3).filter(|&x| x != v2 && x != v1) {
                    if g.has_edge(v2, v4) {
                        push(Lit::pos(id(v1, v2)), Lit::pos(id(v3, v4)));
                    } else if g.degree(v2) > 2 {
                        push(Lit::pos(id(v2, v3)), Lit::pos(id(v3, v4)));
                    }
                }
            }
        }
    }
    let mut f = TwoSatFormula::new(g.edge_count());
    for (a, b) in clauses {
        f.add_clause(a, b)?;
    }
    Ok(f)
}

/// Colors of `v1v2, v2v3, v3v4` given the colors of `v0v1` and `v4v5`.
fn mid_p4_colors(left: Color, right: Color) -> [Color; 3] {
    use Color::{Blue as B, Red as R};
    match (left, right) {
        (R, R) => [B, R, B],
        (B, B) => [R, B, R],
        (R, B) => [B, B, R],
        (B, R) => [R, B, B],
    }
}

/// Extends a good coloring of the reduced graph back through the trace.
fn reconstruct(g: &Graph, reduced: &Graph, reduced_colors: &[bool], trace: &ReductionTrace) -> Result<EdgeColoring> {
    let mut colors: Vec<Option<Color>> = vec![None; g.edge_count()];
    for (rid, &(u, v)) in reduced.edges().iter().enumerate() {
        let id = g.edge_id(u, v).ok_or(Error::MissingEdge((u, v)))?;
        colors[id] = Some(if reduced_colors[rid] { Color::Red } else { Color::Blue });
    }
    let id = |u: usize, v: usize| g.edge_id(u, v).ok_or(Error::MissingEdge((u, v)));
    let get = |colors: &[Option<Color>], e: usize| {
        colors[e].ok_or_else(|| Error::Internal(format!("edge {:?} uncolored during reconstruction", g.edge(e))))
    };
    for r in trace.removals.iter().rev() {
        match *r {
            Removal::Leaf { v, u, w } => {
                let c = match w {
                    Some(w) => get(&colors, id(u, w)?)?.flip(),
                    None => Color::Blue,
                };
                colors[id(v, u)?] = Some(c);
            }
            Removal::MidP4 { v0, v1, v2, v3, v4, v5 } => {
                let left = get(&colors, id(v0, v1)?)?;
                let right = get(&colors, id(v4, v5)?)?;
                let [a, b, c] = mid_p4_colors(left, right);
                colors[id(v1, v2)?] = Some(a);
                colors[id(v2, v3)?] = Some(b);
                colors[id(v3, v4)?] = Some(c);
            }
        }
    }
    let colors = colors
        .into_iter()
        .enumerate()
        .map(|(e, c)| c.ok_or_else(|| Error::Internal(format!("edge {:?} never colored", g.edge(e)))))
        .collect::<Result<Vec<_>>>()?;
    Ok(EdgeColoring::new(colors))
}

pub fn decide_p3_p4(g: &Graph) -> Result<Verdict> {
    let (reduced, trace) = preprocess_p3p4(g);
    let formula = build_2sat(&reduced)?;
    let Some(model) = solve_2sat(&formula) else {
        return Ok(Verdict::arrows());
    };
    let witness = reconstruct(g, &reduced, &model, &trace)?;
    if !is_good_coloring(g, &witness, 3, 4)? {
        return Err(Error::Internal(format!(
            "reconstructed (P3, P4) witness {} is not good",
            witness.assignment_string()
        )));
    }
    Ok(Verdict::good(witness))
}
