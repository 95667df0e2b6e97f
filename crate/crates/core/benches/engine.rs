//! Sequential against parallel search. Without the `parallel` feature both
//! rows run the sequential engine.

use arrowing::graph::complete_graph;
use arrowing::{decide_arrows, enumerate_good_colorings, PartialColoring, SearchConfig};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn configs() -> [(&'static str, SearchConfig); 2] {
    let base = SearchConfig::default().with_edge_budget(64);
    [("sequential", SearchConfig { parallel: false, ..base.clone() }), ("parallel", SearchConfig { parallel: true, ..base })]
}

fn decide(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide");
    group.sample_size(10);
    // K_R arrows, so the whole tree is searched.
    for (k, l, n) in [(4, 5, 6), (5, 5, 6), (5, 6, 7), (4, 7, 8), (6, 6, 8)] {
        let g = complete_graph(n).unwrap();
        for (name, cfg) in configs() {
            group.bench_with_input(BenchmarkId::new(name, format!("K{n}_{k}_{l}")), &g, |b, g| {
                b.iter(|| decide_arrows(g, k, l, &cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for (k, l, n) in [(5, 5, 5), (5, 6, 6)] {
        let g = complete_graph(n).unwrap();
        let fixed = PartialColoring::empty(&g);
        for (name, cfg) in configs() {
            group.bench_with_input(BenchmarkId::new(name, format!("K{n}_{k}_{l}")), &g, |b, g| {
                b.iter(|| enumerate_good_colorings(g, k, l, &fixed, u64::MAX, false, &cfg).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, decide, enumerate);
criterion_main!(benches);
