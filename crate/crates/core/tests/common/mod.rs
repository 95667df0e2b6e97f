#![allow(dead_code)]

use arrowing::paths::is_good_coloring;
use arrowing::{Color, EdgeColoring, Graph, PartialColoring};
use rand::Rng;

/// Every labeled graph on `n` vertices, one per edge subset of `K_n`.
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
        Graph::new(n, edges).unwrap()
    })
}

/// Every graph with at most `max_edges` edges and no isolated vertices, up
/// to isomorphism (with repeats). Edge lists are strictly increasing and
/// labels appear in order: an edge may reuse seen labels, attach the next
/// label to a seen one, or start a component with the next two labels.
/// A BFS labeling of any graph satisfies these rules, so every class is hit.
pub fn small_edge_graphs(max_edges: usize) -> Vec<Graph> {
    fn grow(edges: &mut Vec<(usize, usize)>, used: usize, max_edges: usize, out: &mut Vec<Graph>) {
        out.push(Graph::new(used, edges.iter().copied()).unwrap());
        if edges.len() == max_edges {
            return;
        }
        for u in 0..=used {
            let vs = if u == used { used + 1..=used + 1 } else { u + 1..=used };
            for v in vs {
                if edges.last().is_some_and(|&last| (u, v) <= last) {
                    continue;
                }
                edges.push((u, v));
                grow(edges, used.max(v + 1), max_edges, out);
                edges.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), 0, max_edges, &mut out);
    out
}

pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(n, edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

/// Goodness by trying all `2^m` colorings.
pub fn brute_force_good(g: &Graph, k: usize, l: usize) -> bool {
    let m = g.edge_count();
    assert!(m <= 24, "brute force limited to 24 edges");
    (0u64..1 << m).any(|mask| {
        let c = EdgeColoring::new((0..m).map(|i| if mask >> i & 1 == 1 { Color::Red } else { Color::Blue }).collect());
        is_good_coloring(g, &c, k, l).unwrap()
    })
}

/// Goodness with some edges precolored, by trying every completion.
pub fn brute_force_good_fixed(g: &Graph, fixed: &PartialColoring, k: usize, l: usize) -> bool {
    let free: Vec<usize> = (0..g.edge_count()).filter(|&e| fixed.get(e).is_none()).collect();
    assert!(free.len() <= 24, "brute force limited to 24 free edges");
    (0u64..1 << free.len()).any(|mask| {
        let mut colors: Vec<Color> = fixed.options().iter().map(|c| c.unwrap_or(Color::Blue)).collect();
        for (i, &e) in free.iter().enumerate() {
            if mask >> i & 1 == 1 {
                colors[e] = Color::Red;
            }
        }
        is_good_coloring(g, &EdgeColoring::new(colors), k, l).unwrap()
    })
}
