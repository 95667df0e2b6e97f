//! Polynomial-time deciders for `(P_2, P_l)`, `(P_3, P_3)` and `(P_3, P_4)`.

mod p3p4;
mod twosat;

pub use p3p4::{build_2sat, decide_p3_p4, preprocess_p3p4, ReductionTrace, Removal};
pub use twosat::{solve_2sat, Lit, TwoSatFormula};

use crate::engine::Verdict;
use crate::error::{Error, Result};
use crate::graph::{Color, EdgeColoring, Graph};
use crate::paths::contains_path;

/// With `k = 2` every edge must be blue, so `G` arrows iff it contains `P_l`.
pub fn decide_p2(g: &Graph, l: usize) -> Result<Verdict> {
    if l < 2 {
        return Err(Error::InvalidArgument(format!("l must be at least 2, got {l}")));
    }
    if contains_path(g, l) {
        Ok(Verdict::arrows())
    } else {
        Ok(Verdict::good(EdgeColoring::uniform(g, Color::Blue)))
    }
}

/// Adjacent edges must differ in color: a proper 2-coloring of the line
/// graph, found by propagation from one red seed per component.
pub fn decide_p3_p3(g: &Graph) -> Result<Verdict> {
    let mut colors: Vec<Option<Color>> = vec![None; g.edge_count()];
    let mut queue = Vec::new();
    for seed in 0..g.edge_count() {
        if colors[seed].is_some() {
            continue;
        }
        colors[seed] = Some(Color::Red);
        queue.push(seed);
        while let Some(e) = queue.pop() {
            let c = colors[e].expect("queued edges are colored");
            let (u, v) = g.edge(e);
            for &(_, f) in g.incident(u).iter().chain(g.incident(v)) {
                if f == e {
                    continue;
                }
                match colors[f] {
                    None => {
                        colors[f] = Some(c.flip());
                        queue.push(f);
                    }
                    Some(d) if d == c => return Ok(Verdict::arrows()),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(Verdict::good(EdgeColoring::new(colors.into_iter().map(|c| c.expect("all seeded")).collect())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, disjoint_union, path_graph};
    use crate::paths::is_good_coloring;

    #[test]
    fn p2_examples() {
        assert!(decide_p2(&path_graph(5).unwrap(), 5).unwrap().arrows);
        let g = disjoint_union(&path_graph(4).unwrap(), &path_graph(4).unwrap());
        let v = decide_p2(&g, 5).unwrap();
        assert!(!v.arrows);
        assert!(v.witness.unwrap().colors().iter().all(|&c| c == Color::Blue));
        assert!(!decide_p2(&complete_graph(3).unwrap(), 4).unwrap().arrows);
        assert!(decide_p2(&complete_graph(3).unwrap(), 1).is_err());
    }

    #[test]
    fn p3p3_examples() {
        let c4 = cycle_graph(4).unwrap();
        let v = decide_p3_p3(&c4).unwrap();
        assert!(is_good_coloring(&c4, v.witness.as_ref().unwrap(), 3, 3).unwrap());
        assert!(decide_p3_p3(&cycle_graph(3).unwrap()).unwrap().arrows);
        assert!(!decide_p3_p3(&path_graph(3).unwrap()).unwrap().arrows);
        assert!(decide_p3_p3(&cycle_graph(5).unwrap()).unwrap().arrows);
    }
}
