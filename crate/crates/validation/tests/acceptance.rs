//! Acceptance criteria, one PASS/FAIL line each. Detail lines are indented.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::time::{Duration, Instant};

use arrowing::critical::{legal_types, ramsey_path, verify_observations, verify_split_lemmas, ObservationReport};
use arrowing::gadget::{
    c4_clause_schema, clause_row, clause_schema, instantiate_with_inputs, parse_schema, red_transmitter,
    symmetric_transmitter, verify_gadget, verify_link, verify_transmitter, TransmitterSpec,
};
use arrowing::graph::{attach_leaf, complete_graph};
use arrowing::paths::is_good_coloring;
use arrowing::poly::{decide_p2, decide_p3_p3, decide_p3_p4, preprocess_p3p4, solve_2sat, Lit, TwoSatFormula};
use arrowing::{
    decide_arrows, enumerate_good_colorings, EdgeColoring, Graph, PartialColoring, SearchConfig, Verdict,
};
use arrowing_cli::{decide, Method};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every witness seen by any criterion, checked against its input graph.
#[derive(Default)]
struct Witnesses {
    checked: u64,
    bad: Vec<String>,
}

impl Witnesses {
    fn coloring(&mut self, label: &str, g: &Graph, w: &EdgeColoring, k: usize, l: usize) {
        self.checked += 1;
        if !w.is_for(g) || !is_good_coloring(g, w, k, l).unwrap_or(false) {
            self.bad.push(format!("{label} ({k}, {l}) {:?}", g.edges()));
        }
    }

    fn verdict(&mut self, label: &str, g: &Graph, v: &Verdict, k: usize, l: usize) {
        match (&v.witness, v.arrows) {
            (Some(w), false) => self.coloring(label, g, w, k, l),
            (None, true) => {}
            _ => {
                self.checked += 1;
                self.bad.push(format!("{label}: verdict and witness disagree"));
            }
        }
    }

    /// A witness under precolored edges must also keep every fixed color.
    fn fixed(&mut self, label: &str, g: &Graph, fixed: &PartialColoring, w: &EdgeColoring, k: usize, l: usize) {
        self.coloring(label, g, w, k, l);
        if (0..g.edge_count()).any(|e| fixed.get(e).is_some_and(|c| c != w.get(e))) {
            self.bad.push(format!("{label}: witness overrides a fixed edge"));
        }
    }
}

struct Outcome {
    pass: bool,
    summary: String,
}

fn outcome(pass: bool, summary: impl Into<String>) -> Outcome {
    Outcome { pass, summary: summary.into() }
}

fn detail(line: impl AsRef<str>) {
    println!("    {}", line.as_ref());
}

fn engine_cfg() -> SearchConfig {
    SearchConfig::default().with_edge_budget(64)
}

fn ramsey_boundary(w: &mut Witnesses) -> Outcome {
    let pairs = [(3, 3), (3, 4), (3, 5), (4, 4), (4, 5), (5, 5), (4, 6), (5, 6)];
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for (k, l) in pairs {
        let r = ramsey_path(k, l).unwrap();
        if r != l + k / 2 - 1 {
            failures.push(format!("R({k}, {l}) = {r}"));
        }
        for (n, want_arrows) in [(r - 1, false), (r, true)] {
            let g = complete_graph(n).unwrap();
            let start = Instant::now();
            let v = decide(&g, k, l, Method::Auto, &SearchConfig::default()).unwrap();
            let took = start.elapsed();
            slowest = slowest.max(took);
            w.verdict("ramsey", &g, &v, k, l);
            let word = if v.arrows { "ARROWS" } else { "GOOD" };
            detail(format!("({k}, {l}) K_{n} {word} in {:.2?}", took));
            if v.arrows != want_arrows || took > Duration::from_secs(300) {
                failures.push(format!("({k}, {l}) K_{n}"));
            }
        }
    }
    let pass = failures.is_empty();
    let summary = if pass {
        format!("{} pairs, slowest instance {:.2?}", pairs.len(), slowest)
    } else {
        format!("wrong or slow: {}", failures.join(", "))
    };
    outcome(pass, summary)
}

fn census() -> (Vec<ObservationReport>, Duration, Vec<String>) {
    let start = Instant::now();
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for (k, l) in [(4, 4), (4, 5), (5, 5), (4, 6), (5, 6)] {
        match verify_observations(k, l, &SearchConfig::default()) {
            Ok(r) => {
                for line in r.lines() {
                    detail(line);
                }
                reports.push(r);
            }
            Err(e) => errors.push(format!("({k}, {l}): {e}")),
        }
    }
    (reports, start.elapsed(), errors)
}

/// The parity law is checked as the taxonomy states it: only Type 1 for even
/// `k`, Types 1-2 for odd `k` with `l > k + 1`, all types for `l = k + 1`.
fn hook_census(reports: &[ObservationReport], took: Duration, errors: &[String]) -> Outcome {
    let mut failures: Vec<String> = errors.to_vec();
    let mut seen = Vec::new();
    for r in reports {
        let legal = legal_types(r.k, r.l).unwrap();
        let types: Vec<String> = r.by_type.keys().map(|t| t.to_string()).collect();
        seen.push(format!("({}, {}): {} [{}]", r.k, r.l, r.total, types.join(" ")));
        if r.total == 0 || r.by_type.values().sum::<u64>() != r.total {
            failures.push(format!("({}, {}) counts", r.k, r.l));
        }
        if !r.illegal_types.is_empty() || r.by_type.keys().any(|t| !legal.contains(t)) {
            failures.push(format!("({}, {}) parity", r.k, r.l));
        }
    }
    if took > Duration::from_secs(600) {
        failures.push(format!("took {took:.2?}"));
    }
    if failures.is_empty() {
        outcome(true, format!("{} in {took:.2?}", seen.join(", ")))
    } else {
        outcome(false, failures.join(", "))
    }
}

fn observations(reports: &[ObservationReport], errors: &[String]) -> Outcome {
    let mut failures: Vec<String> = errors.to_vec();
    let mut checked = 0;
    for r in reports {
        for t in r.by_type.keys() {
            if !r.claims.keys().any(|(ct, _)| ct == t) {
                failures.push(format!("({}, {}) type {t} has no claims", r.k, r.l));
            }
        }
        for ((t, c), tally) in &r.claims {
            checked += tally.checked;
            if tally.failed > 0 {
                failures.push(format!("({}, {}) {t} {:?} {:?} {}", r.k, r.l, c.side, c.color, c.length));
            }
        }
    }
    if failures.is_empty() {
        outcome(true, format!("{checked} endpoint checks"))
    } else {
        outcome(false, failures.join(", "))
    }
}

fn transmitters() -> Outcome {
    let cfg = SearchConfig::default();
    let mut failures = Vec::new();
    let mut check = |name: &str, g: &Graph, port: usize, spec: TransmitterSpec| {
        let r = verify_transmitter(g, port, spec, &cfg).unwrap();
        detail(format!("{name}: {} edges, {}", g.edge_count(), r.line()));
        if !r.passed() {
            failures.push(format!("{name} ({} of {} good colorings violate)", r.violations, r.good_colorings));
        }
    };
    for l in [5, 6] {
        let t = red_transmitter(3, l).unwrap();
        check(&format!("red (3, {l}, 2)"), &t.graph, t.port, TransmitterSpec::RedUneq { k: 3, l, x: 2 });
    }
    // Two K_4 sharing a vertex, with a leaf on it.
    let t = symmetric_transmitter(4, 3).unwrap();
    check("symmetric (4, 3) base", &t.graph, t.port, TransmitterSpec::Symmetric { k: 4, x: 3 });
    let link = verify_link(4, 5, &cfg).unwrap();
    detail(link.line());
    if !link.passed() {
        failures.push("(4, 5) link".into());
    }
    if failures.is_empty() {
        outcome(true, "red (3, 5, 2), red (3, 6, 2), symmetric (4, 3), (4, 5) link")
    } else {
        outcome(false, format!("not a transmitter: {}", failures.join(", ")))
    }
}

fn poly_equivalence(w: &mut Witnesses) -> Outcome {
    let cfg = engine_cfg();
    let mut compared = 0u64;
    let mut failures = Vec::new();
    let mut compare = |w: &mut Witnesses, label: &str, g: &Graph, k: usize, l: usize, v: Verdict| {
        compared += 1;
        w.verdict(label, g, &v, k, l);
        let e = decide_arrows(g, k, l, &cfg).unwrap();
        w.verdict("engine", g, &e, k, l);
        if v.arrows != e.arrows && failures.len() < 5 {
            failures.push(format!("{label} {:?}", g.edges()));
        }
    };
    for n in 1..=6 {
        for g in common::all_labeled_graphs(n).filter(|g| g.is_connected()) {
            compare(w, "p3p4", &g, 3, 4, decide_p3_p4(&g).unwrap());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for _ in 0..500 {
        let n = rng.gen_range(7..=10);
        let p = rng.gen_range(0.2..0.5);
        let g = common::random_connected(&mut rng, n, p);
        compare(w, "p3p4", &g, 3, 4, decide_p3_p4(&g).unwrap());
    }
    for g in common::small_edge_graphs(6) {
        for l in 2..=7 {
            compare(w, "p2", &g, 2, l, decide_p2(&g, l).unwrap());
        }
        compare(w, "p3p3", &g, 3, 3, decide_p3_p3(&g).unwrap());
    }
    if failures.is_empty() {
        outcome(true, format!("{compared} comparisons agree"))
    } else {
        outcome(false, format!("disagreements: {}", failures.join("; ")))
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

fn preprocessing(w: &mut Witnesses) -> Outcome {
    let cfg = engine_cfg();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = Vec::new();
    let mut removed = 0;
    for _ in 0..200 {
        let g = planted(&mut rng);
        let (reduced, trace) = preprocess_p3p4(&g);
        removed += trace.removals.len();
        let before = decide_arrows(&g, 3, 4, &cfg).unwrap();
        let after = decide_arrows(&reduced, 3, 4, &cfg).unwrap();
        w.verdict("engine", &g, &before, 3, 4);
        w.verdict("engine", &reduced, &after, 3, 4);
        if trace.removals.is_empty() {
            failures.push(format!("no pattern found in {:?}", g.edges()));
        } else if before.arrows != after.arrows {
            failures.push(format!("goodness changed on {:?}", g.edges()));
        }
    }
    if failures.is_empty() {
        outcome(true, format!("200 instances, {removed} vertices removed"))
    } else {
        outcome(false, failures.join("; "))
    }
}

fn two_sat() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut sat, mut failures) = (0, Vec::new());
    for i in 0..1000 {
        let n = rng.gen_range(1..=15);
        let m = rng.gen_range(1..=3 * n);
        let mut f = TwoSatFormula::new(n);
        for _ in 0..m {
            let lit = |rng: &mut ChaCha8Rng| {
                let v = rng.gen_range(0..n);
                if rng.gen_bool(0.5) {
                    Lit::pos(v)
                } else {
                    Lit::neg(v)
                }
            };
            let (a, b) = (lit(&mut rng), lit(&mut rng));
            f.add_clause(a, b).unwrap();
        }
        let brute = (0u32..1 << n).any(|mask| f.is_satisfied_by(&(0..n).map(|v| mask >> v & 1 == 1).collect::<Vec<_>>()));
        let solved = solve_2sat(&f);
        sat += u32::from(brute);
        let ok = match &solved {
            Some(a) => brute && f.is_satisfied_by(a),
            None => !brute,
        };
        if !ok {
            failures.push(format!("formula {i}"));
        }
    }
    if failures.is_empty() {
        outcome(true, format!("1000 formulas, {sat} satisfiable"))
    } else {
        outcome(false, failures.join(", "))
    }
}

fn c4_skeleton(w: &mut Witnesses) -> Outcome {
    let text = include_str!("../../core/tests/fixtures/c4.schema");
    let s = parse_schema(text).unwrap();
    if s != c4_clause_schema().unwrap() {
        return outcome(false, "fixture differs from the built-in C4 schema");
    }
    let r = verify_gadget(&s, &SearchConfig::default()).unwrap();
    let mut mismatches = Vec::new();
    for (line, row) in r.lines().iter().skip(1).zip(&r.rows) {
        let inst = instantiate_with_inputs(&s, &row.inputs, &[]).unwrap();
        let naive = common::brute_force_good_fixed(&inst.graph, &inst.coloring, s.k, s.l);
        detail(format!("{line} naive={}", if naive { "GOOD" } else { "ARROWS" }));
        if let Some(wit) = &row.witness {
            w.fixed("c4 row", &inst.graph, &inst.coloring, wit, s.k, s.l);
        }
        if naive != row.good {
            mismatches.push(format!("{:?}", row.inputs));
        }
    }
    let good = r.rows.iter().filter(|row| row.good).count();
    if r.rows.len() == 8 && mismatches.is_empty() {
        outcome(true, format!("8 rows match naive enumeration, {good} GOOD"))
    } else {
        outcome(false, format!("{} rows, mismatches {}", r.rows.len(), mismatches.join(" ")))
    }
}

fn split_lemmas() -> Outcome {
    let checks = verify_split_lemmas(7).unwrap();
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed()).map(|c| c.line()).collect();
    if failed.is_empty() {
        outcome(true, format!("{} checks up to k = 7", checks.len()))
    } else {
        for f in &failed {
            detail(f);
        }
        outcome(false, format!("{} of {} checks fail", failed.len(), checks.len()))
    }
}

/// Adds a sweep over every solver path to the witnesses already collected.
fn witness_validity(w: &mut Witnesses) -> Outcome {
    let seq = SearchConfig::sequential();
    let par = SearchConfig::default();
    for g in common::small_edge_graphs(5) {
        for l in [2, 3, 5] {
            w.verdict("p2", &g, &decide_p2(&g, l).unwrap(), 2, l);
        }
        w.verdict("p3p3", &g, &decide_p3_p3(&g).unwrap(), 3, 3);
        w.verdict("p3p4", &g, &decide_p3_p4(&g).unwrap(), 3, 4);
        for (k, l) in [(2, 4), (4, 2), (3, 3), (3, 4), (4, 3), (4, 4), (3, 5)] {
            for method in [Method::Auto, Method::Engine] {
                w.verdict("cli", &g, &decide(&g, k, l, method, &seq).unwrap(), k, l);
            }
            w.verdict("engine seq", &g, &decide_arrows(&g, k, l, &seq).unwrap(), k, l);
            w.verdict("engine par", &g, &decide_arrows(&g, k, l, &par).unwrap(), k, l);
        }
    }
    for (n, k, l) in [(4, 3, 4), (4, 4, 4), (5, 4, 5), (5, 5, 5)] {
        let g = complete_graph(n).unwrap();
        let e = enumerate_good_colorings(&g, k, l, &PartialColoring::empty(&g), 200, true, &par).unwrap();
        for c in &e.colorings {
            w.coloring("enumerate", &g, c, k, l);
        }
    }
    for (k, l) in [(4, 5), (5, 5)] {
        let s = clause_schema(k, l).unwrap();
        for mask in 0..8u32 {
            let inputs: Vec<bool> = (0..3).map(|i| mask >> i & 1 == 1).collect();
            if let (true, Some(wit)) = clause_row(&s, &inputs, &par).unwrap() {
                let inst = instantiate_with_inputs(&s, &inputs, &[]).unwrap();
                w.fixed("clause row", &inst.graph, &inst.coloring, &wit, k, l);
            }
        }
    }
    if w.bad.is_empty() {
        outcome(true, format!("{} witnesses valid", w.checked))
    } else {
        outcome(false, format!("{} of {} invalid: {}", w.bad.len(), w.checked, w.bad[..w.bad.len().min(3)].join("; ")))
    }
}

fn main() {
    let mut w = Witnesses::default();
    let mut results: Vec<(&str, Outcome)> = Vec::new();
    let mut run = |name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        println!(
            "criterion {} {name} {} [{:.1?}] {}",
            results.len() + 1,
            if o.pass { "PASS" } else { "FAIL" },
            start.elapsed(),
            o.summary
        );
        results.push((name, o));
    };
    run("ramsey-boundary", &mut || ramsey_boundary(&mut w));
    let mut enumerated = (Vec::new(), Vec::new());
    run("hook-census", &mut || {
        let (reports, took, errors) = census();
        let o = hook_census(&reports, took, &errors);
        enumerated = (reports, errors);
        o
    });
    run("observations", &mut || observations(&enumerated.0, &enumerated.1));
    run("transmitters", &mut transmitters);
    run("poly-equivalence", &mut || poly_equivalence(&mut w));
    run("preprocessing", &mut || preprocessing(&mut w));
    run("two-sat", &mut two_sat);
    run("c4-skeleton", &mut || c4_skeleton(&mut w));
    run("split-lemmas", &mut split_lemmas);
    run("witness-validity", &mut || witness_validity(&mut w));
    let failed: Vec<&str> = results.iter().filter(|(_, o)| !o.pass).map(|(n, _)| *n).collect();
    println!("acceptance: {} of {} criteria pass", results.len() - failed.len(), results.len());
    if !failed.is_empty() {
        println!("failing: {}", failed.join(", "));
        std::process::exit(1);
    }
}
