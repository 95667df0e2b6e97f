mod common;

use arrowing::graph::{attach_leaf, complete_graph};
use arrowing::paths::is_good_coloring;
use arrowing::poly::{decide_p2, decide_p3_p3, decide_p3_p4, preprocess_p3p4};
use arrowing::{decide_arrows, Graph, SearchConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn engine_arrows(g: &Graph, k: usize, l: usize) -> bool {
    decide_arrows(g, k, l, &SearchConfig::default().with_edge_budget(64)).unwrap().arrows
}

fn check_p3p4(g: &Graph) {
    let v = decide_p3_p4(g).unwrap();
    assert_eq!(v.arrows, engine_arrows(g, 3, 4), "{:?}", g.edges());
    if let Some(w) = &v.witness {
        assert!(is_good_coloring(g, w, 3, 4).unwrap());
    }
}

#[test]
fn p3p4_matches_engine_on_all_connected_graphs_up_to_six_vertices() {
    for n in 1..=6 {
        for g in common::all_labeled_graphs(n).filter(|g| g.is_connected()) {
            check_p3p4(&g);
        }
    }
}

#[test]
fn p3p4_matches_engine_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for _ in 0..500 {
        let n = rng.gen_range(7..=10);
        let p = rng.gen_range(0.2..0.5);
        check_p3p4(&common::random_connected(&mut rng, n, p));
    }
}

#[test]
fn small_cases_match_engine_on_all_small_graphs() {
    for g in common::small_edge_graphs(6) {
        for l in 2..=7 {
            let v = decide_p2(&g, l).unwrap();
            assert_eq!(v.arrows, engine_arrows(&g, 2, l));
            if let Some(w) = &v.witness {
                assert!(is_good_coloring(&g, w, 2, l).unwrap());
            }
        }
        let v = decide_p3_p3(&g).unwrap();
        assert_eq!(v.arrows, engine_arrows(&g, 3, 3));
        if let Some(w) = &v.witness {
            assert!(is_good_coloring(&g, w, 3, 3).unwrap());
        }
    }
}

/// A random base graph with either a pendant path of length two or an edge
/// subdivided by four new vertices grafted on.
fn planted(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(2..=4);
    let base = common::random_connected(rng, n, 0.6);
    let anchor = rng.gen_range(0..n);
    if rng.gen_bool(0.5) {
        let (g, a) = attach_leaf(&base, anchor).unwrap();
        attach_leaf(&g, a).unwrap().0
    } else {
        let other = (anchor + 1) % n;
        let mut edges: Vec<_> = base.edges().to_vec();
        let chain: Vec<usize> = (n..n + 4).collect();
        edges.push((anchor, chain[0]));
        edges.extend(chain.windows(2).map(|w| (w[0], w[1])));
        edges.push((chain[3], other));
        Graph::new(n + 4, edges).unwrap()
    }
}

#[test]
fn preprocessing_preserves_goodness() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut removed = 0;
    for _ in 0..200 {
        let g = planted(&mut rng);
        let (reduced, trace) = preprocess_p3p4(&g);
        removed += trace.removals.len();
        assert_eq!(trace.replay(&g), reduced);
        assert_eq!(common::brute_force_good(&g, 3, 4), common::brute_force_good(&reduced, 3, 4), "{:?}", g.edges());
    }
    assert!(removed >= 200);
}

#[test]
fn dense_graphs_arrow() {
    assert!(decide_p3_p4(&complete_graph(5).unwrap()).unwrap().arrows);
}
