//! Backtracking search over red/blue edge colorings.
//!
//! The engine decides `G -> (P_k, P_l)` by looking for a good coloring, and
//! can count every good coloring that extends a set of pre-colored edges.
//! After each assignment only paths through the newly colored edge are
//! checked.
//!
//! With the `parallel` feature the tree is cut at a fixed depth and the
//! resulting subtrees are searched on the rayon pool. Subtrees are listed in
//! sequential visiting order and results are merged in that order, so the
//! parallel search returns the same witness and the same counts as the
//! sequential one.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::graph::{Color, EdgeColoring, Graph, PartialColoring};
use crate::paths::{contains_path, has_path_through_edge, is_good_coloring};

/// Default cap on uncolored edges.
pub const DEFAULT_EDGE_BUDGET: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchOrder {
    /// Lowest-id uncolored edge.
    InputOrder,
    /// An uncolored edge touching the most recently colored edge, falling
    /// back to earlier colored edges and finally to input order.
    AdjacentToColored,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub edge_budget: usize,
    pub node_budget: u64,
    pub order: BranchOrder,
    /// Check paths through each newly colored edge; when off, colorings are
    /// only checked once complete.
    pub incremental: bool,
    /// Split the search across the rayon pool. Ignored without the
    /// `parallel` feature.
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            edge_budget: DEFAULT_EDGE_BUDGET,
            node_budget: 2_000_000_000,
            order: BranchOrder::AdjacentToColored,
            incremental: true,
            parallel: cfg!(feature = "parallel"),
        }
    }
}

impl SearchConfig {
    pub fn sequential() -> Self {
        SearchConfig { parallel: false, ..Self::default() }
    }

    pub fn with_edge_budget(mut self, budget: usize) -> Self {
        self.edge_budget = budget;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub arrows: bool,
    /// A good coloring; present iff `arrows` is false.
    pub witness: Option<EdgeColoring>,
}

impl Verdict {
    pub fn good(witness: EdgeColoring) -> Self {
        Verdict { arrows: false, witness: Some(witness) }
    }

    pub fn arrows() -> Self {
        Verdict { arrows: true, witness: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub count: u64,
    /// Every good coloring in search order, when collection was requested.
    pub colorings: Vec<EdgeColoring>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
}

/// Search state: the current partial coloring plus per-color adjacency.
#[derive(Clone)]
struct State<'g> {
    g: &'g Graph,
    forbidden: [usize; 2],
    colors: Vec<Option<Color>>,
    by_color: [Vec<Vec<usize>>; 2],
    /// Colored edges in assignment order; pre-colored edges come first.
    trail: Vec<usize>,
    visited: Vec<bool>,
    incremental: bool,
    order: BranchOrder,
}

impl<'g> State<'g> {
    fn new(g: &'g Graph, k: usize, l: usize, cfg: &SearchConfig) -> Self {
        State {
            g,
            forbidden: [k, l],
            colors: vec![None; g.edge_count()],
            by_color: [vec![Vec::new(); g.n()], vec![Vec::new(); g.n()]],
            trail: Vec::new(),
            visited: vec![false; g.n()],
            incremental: cfg.incremental,
            order: cfg.order,
        }
    }

    /// Colors edge `id`; returns false if that closes a forbidden path.
    fn assign(&mut self, id: usize, c: Color) -> bool {
        let (u, v) = self.g.edge(id);
        self.colors[id] = Some(c);
        let adj = &mut self.by_color[c.index()];
        adj[u].push(v);
        adj[v].push(u);
        self.trail.push(id);
        !self.incremental
            || !has_path_through_edge(
                self.by_color[c.index()].as_slice(),
                u,
                v,
                self.forbidden[c.index()],
                &mut self.visited,
            )
    }

    fn unassign(&mut self, id: usize) {
        let (u, v) = self.g.edge(id);
        let c = self.colors[id].take().expect("unassigning an uncolored edge");
        let adj = &mut self.by_color[c.index()];
        adj[u].pop();
        adj[v].pop();
        let last = self.trail.pop();
        debug_assert_eq!(last, Some(id));
    }

    fn next_edge(&self) -> Option<usize> {
        if self.order == BranchOrder::AdjacentToColored {
            for &id in self.trail.iter().rev() {
                let (u, v) = self.g.edge(id);
                let pick = [u, v]
                    .iter()
                    .flat_map(|&x| self.g.incident(x).iter().map(|&(_, e)| e))
                    .filter(|&e| self.colors[e].is_none())
                    .min();
                if pick.is_some() {
                    return pick;
                }
            }
        }
        self.colors.iter().position(Option::is_none)
    }

    fn coloring(&self) -> EdgeColoring {
        EdgeColoring::new(self.colors.iter().map(|c| c.expect("complete coloring")).collect())
    }

    fn leaf_is_good(&self) -> bool {
        self.incremental
            || is_good_coloring(self.g, &self.coloring(), self.forbidden[0], self.forbidden[1])
                .unwrap_or(false)
    }
}

enum Event<'a, 's> {
    Leaf(&'a State<'s>),
    #[cfg_attr(not(feature = "parallel"), allow(dead_code))]
    Frontier(&'a State<'s>),
}

struct Walker<'a> {
    nodes: &'a AtomicU64,
    node_budget: u64,
    /// Branch depth at which the walk hands subtrees back instead of
    /// descending.
    cutoff: Option<usize>,
    /// Try only red on the first branch (color-swap symmetry).
    red_first_only: bool,
}

impl Walker<'_> {
    /// Returns `Ok(true)` when the visitor asked to stop.
    fn walk<'s>(
        &self,
        st: &mut State<'s>,
        depth: usize,
        visit: &mut dyn FnMut(Event<'_, 's>) -> Result<bool>,
    ) -> Result<bool> {
        if self.cutoff == Some(depth) {
            return visit(Event::Frontier(st));
        }
        let Some(id) = st.next_edge() else {
            return if st.leaf_is_good() { visit(Event::Leaf(st)) } else { Ok(false) };
        };
        let choices: &[Color] = if depth == 0 && self.red_first_only {
            &[Color::Red]
        } else {
            &[Color::Red, Color::Blue]
        };
        for &c in choices {
            if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.node_budget {
                return Err(Error::BudgetExceeded(format!(
                    "more than {} search nodes",
                    self.node_budget
                )));
            }
            let ok = st.assign(id, c);
            let stop = if ok { self.walk(st, depth + 1, visit) } else { Ok(false) };
            st.unassign(id);
            if stop? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// A configured search over one graph and one `(k, l)` pair.
pub struct Engine<'g> {
    g: &'g Graph,
    k: usize,
    l: usize,
    cfg: SearchConfig,
    nodes: AtomicU64,
}

/// Subtree roots are cut this many branches deep when searching in parallel.
#[cfg(feature = "parallel")]
const SPLIT_DEPTH: usize = 8;
/// Below this many free edges a parallel split costs more than it saves.
const PARALLEL_MIN_FREE: usize = 14;

impl<'g> Engine<'g> {
    pub fn new(g: &'g Graph, k: usize, l: usize, cfg: SearchConfig) -> Result<Self> {
        if k < 2 || l < 2 {
            return Err(Error::InvalidArgument(format!("path lengths must be >= 2, got ({k}, {l})")));
        }
        Ok(Engine { g, k, l, cfg, nodes: AtomicU64::new(0) })
    }

    pub fn stats(&self) -> SearchStats {
        SearchStats { nodes: self.nodes.load(Ordering::Relaxed) }
    }

    fn initial_state(&self, fixed: &PartialColoring) -> Result<State<'g>> {
        if fixed.len() != self.g.edge_count() {
            return Err(Error::InvalidArgument(format!(
                "fixed coloring covers {} edges but the graph has {}",
                fixed.len(),
                self.g.edge_count()
            )));
        }
        let free = fixed.free_count();
        if free > self.cfg.edge_budget {
            return Err(Error::BudgetExceeded(format!(
                "{free} free edges exceed the edge budget of {}",
                self.cfg.edge_budget
            )));
        }
        for (color, target) in [(Color::Red, self.k), (Color::Blue, self.l)] {
            let class = self.g.filter_edges(|id| fixed.get(id) == Some(color));
            if contains_path(&class, target) {
                return Err(Error::InconsistentFixed);
            }
        }
        let mut st = State::new(self.g, self.k, self.l, &self.cfg);
        for id in 0..self.g.edge_count() {
            if let Some(c) = fixed.get(id) {
                st.assign(id, c);
            }
        }
        Ok(st)
    }

    fn walker(&self, cutoff: Option<usize>, red_first_only: bool) -> Walker<'_> {
        Walker { nodes: &self.nodes, node_budget: self.cfg.node_budget, cutoff, red_first_only }
    }

    fn use_parallel(&self, fixed: &PartialColoring) -> bool {
        cfg!(feature = "parallel") && self.cfg.parallel && fixed.free_count() >= PARALLEL_MIN_FREE
    }

    #[cfg(feature = "parallel")]
    /// Walks down to `SPLIT_DEPTH` and lists, in visiting order, the
    /// subtree roots found there and any good colorings completed above it.
    fn frontier(&self, st: &mut State<'g>, red_first_only: bool) -> Result<Vec<Item>> {
        let mut items = Vec::new();
        let base = st.trail.len();
        self.walker(Some(SPLIT_DEPTH), red_first_only).walk(st, 0, &mut |ev| {
            items.push(match ev {
                Event::Frontier(s) => Item::Subtree(
                    s.trail[base..].iter().map(|&id| (id, s.colors[id].unwrap())).collect(),
                ),
                Event::Leaf(s) => Item::Leaf(s.coloring()),
            });
            Ok(false)
        })?;
        Ok(items)
    }

    #[cfg(feature = "parallel")]
    fn resume(&self, root: &State<'g>, prefix: &[(usize, Color)]) -> State<'g> {
        let mut st = root.clone();
        for &(id, c) in prefix {
            st.assign(id, c);
        }
        st
    }

    /// A good coloring extending `fixed`, or `None` if none exists.
    pub fn find(&self, fixed: &PartialColoring) -> Result<Option<EdgeColoring>> {
        let mut st = self.initial_state(fixed)?;
        let red_first_only = self.k == self.l && fixed.assigned_count() == 0;
        let found = if self.use_parallel(fixed) {
            self.find_parallel(&mut st, red_first_only)?
        } else {
            self.find_from(&mut st, 0, red_first_only)?
        };
        if let Some(c) = &found {
            if !is_good_coloring(self.g, c, self.k, self.l)? {
                return Err(Error::Internal("engine produced a coloring that is not good".into()));
            }
        }
        Ok(found)
    }

    fn find_from(&self, st: &mut State<'g>, depth: usize, red_first_only: bool) -> Result<Option<EdgeColoring>> {
        let mut found = None;
        self.walker(None, red_first_only).walk(st, depth, &mut |ev| {
            if let Event::Leaf(s) = ev {
                found = Some(s.coloring());
            }
            Ok(true)
        })?;
        Ok(found)
    }

    #[cfg(feature = "parallel")]
    fn find_parallel(&self, st: &mut State<'g>, red_first_only: bool) -> Result<Option<EdgeColoring>> {
        use rayon::prelude::*;

        let items = self.frontier(st, red_first_only)?;
        let root = st.clone();
        items
            .par_iter()
            .find_map_first(|item| match item {
                Item::Leaf(c) => Some(Ok(c.clone())),
                Item::Subtree(prefix) => {
                    let mut sub = self.resume(&root, prefix);
                    self.find_from(&mut sub, prefix.len(), red_first_only).transpose()
                }
            })
            .transpose()
    }

    #[cfg(not(feature = "parallel"))]
    fn find_parallel(&self, st: &mut State<'g>, red_first_only: bool) -> Result<Option<EdgeColoring>> {
        self.find_from(st, 0, red_first_only)
    }

    /// Counts every good coloring extending `fixed`, failing once the count
    /// exceeds `limit`. With `collect`, the colorings are returned as well.
    pub fn enumerate(&self, fixed: &PartialColoring, limit: u64, collect: bool) -> Result<Enumeration> {
        let mut st = self.initial_state(fixed)?;
        let running = AtomicU64::new(0);
        if self.use_parallel(fixed) {
            return self.enumerate_parallel(&mut st, limit, collect, &running);
        }
        self.enumerate_from(&mut st, 0, limit, collect, &running)
    }

    fn enumerate_from(
        &self,
        st: &mut State<'g>,
        depth: usize,
        limit: u64,
        collect: bool,
        running: &AtomicU64,
    ) -> Result<Enumeration> {
        let mut out = Enumeration { count: 0, colorings: Vec::new() };
        self.walker(None, false).walk(st, depth, &mut |ev| {
            if let Event::Leaf(s) = ev {
                out.count += 1;
                if running.fetch_add(1, Ordering::Relaxed) >= limit {
                    return Err(Error::LimitExceeded(limit));
                }
                if collect {
                    out.colorings.push(s.coloring());
                }
            }
            Ok(false)
        })?;
        Ok(out)
    }

    #[cfg(feature = "parallel")]
    fn enumerate_parallel(
        &self,
        st: &mut State<'g>,
        limit: u64,
        collect: bool,
        running: &AtomicU64,
    ) -> Result<Enumeration> {
        use rayon::prelude::*;

        let items = self.frontier(st, false)?;
        let root = st.clone();
        let parts: Vec<Result<Enumeration>> = items
            .par_iter()
            .map(|item| match item {
                Item::Leaf(c) => {
                    if running.fetch_add(1, Ordering::Relaxed) >= limit {
                        return Err(Error::LimitExceeded(limit));
                    }
                    let colorings = if collect { vec![c.clone()] } else { Vec::new() };
                    Ok(Enumeration { count: 1, colorings })
                }
                Item::Subtree(prefix) => {
                    let mut sub = self.resume(&root, prefix);
                    self.enumerate_from(&mut sub, prefix.len(), limit, collect, running)
                }
            })
            .collect();
        let mut out = Enumeration { count: 0, colorings: Vec::new() };
        for part in parts {
            let part = part?;
            out.count += part.count;
            out.colorings.extend(part.colorings);
        }
        Ok(out)
    }

    #[cfg(not(feature = "parallel"))]
    fn enumerate_parallel(
        &self,
        st: &mut State<'g>,
        limit: u64,
        collect: bool,
        running: &AtomicU64,
    ) -> Result<Enumeration> {
        self.enumerate_from(st, 0, limit, collect, running)
    }
}

/// A unit of work below the parallel cut.
#[cfg(feature = "parallel")]
enum Item {
    Leaf(EdgeColoring),
    Subtree(Vec<(usize, Color)>),
}

pub fn find_good_coloring(
    g: &Graph,
    k: usize,
    l: usize,
    fixed: &PartialColoring,
    cfg: &SearchConfig,
) -> Result<Option<EdgeColoring>> {
    Engine::new(g, k, l, cfg.clone())?.find(fixed)
}

pub fn decide_arrows(g: &Graph, k: usize, l: usize, cfg: &SearchConfig) -> Result<Verdict> {
    Ok(match find_good_coloring(g, k, l, &PartialColoring::empty(g), cfg)? {
        Some(w) => Verdict::good(w),
        None => Verdict::arrows(),
    })
}

pub fn enumerate_good_colorings(
    g: &Graph,
    k: usize,
    l: usize,
    fixed: &PartialColoring,
    limit: u64,
    collect: bool,
    cfg: &SearchConfig,
) -> Result<Enumeration> {
    Engine::new(g, k, l, cfg.clone())?.enumerate(fixed, limit, collect)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph};

    fn naive_count(g: &Graph, k: usize, l: usize) -> u64 {
        (0u64..1 << g.edge_count())
            .filter(|mask| {
                let c = EdgeColoring::new(
                    (0..g.edge_count())
                        .map(|i| if mask >> i & 1 == 1 { Color::Red } else { Color::Blue })
                        .collect(),
                );
                is_good_coloring(g, &c, k, l).unwrap()
            })
            .count() as u64
    }

    fn count(g: &Graph, k: usize, l: usize) -> u64 {
        enumerate_good_colorings(g, k, l, &PartialColoring::empty(g), u64::MAX, false, &SearchConfig::default())
            .unwrap()
            .count
    }

    #[test]
    fn decide_examples() {
        let cfg = SearchConfig::default();
        let k3 = complete_graph(3).unwrap();
        assert_eq!(naive_count(&k3, 3, 3), 0);
        assert!(find_good_coloring(&k3, 3, 3, &PartialColoring::empty(&k3), &cfg).unwrap().is_none());
        let k4 = complete_graph(4).unwrap();
        let w = find_good_coloring(&k4, 4, 4, &PartialColoring::empty(&k4), &cfg).unwrap().unwrap();
        assert!(is_good_coloring(&k4, &w, 4, 4).unwrap());
        assert!(decide_arrows(&path_graph(2).unwrap(), 2, 2, &cfg).unwrap().arrows);
        assert!(decide_arrows(&complete_graph(5).unwrap(), 4, 4, &cfg).unwrap().arrows);
        assert!(decide_arrows(&k4, 3, 4, &cfg).unwrap().arrows);
        assert!(!decide_arrows(&k3, 3, 4, &cfg).unwrap().arrows);
        let empty = Graph::empty(4);
        let v = decide_arrows(&empty, 2, 5, &cfg).unwrap();
        assert!(!v.arrows && v.witness.unwrap().is_empty());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(count(&cycle_graph(4).unwrap(), 3, 3), 2);
        assert_eq!(naive_count(&cycle_graph(4).unwrap(), 3, 3), 2);
        assert_eq!(count(&complete_graph(4).unwrap(), 3, 4), 0);
        assert_eq!(naive_count(&complete_graph(4).unwrap(), 3, 4), 0);
        assert_eq!(count(&path_graph(2).unwrap(), 3, 3), 2);
    }

    #[test]
    fn limit_and_budget_errors() {
        let c6 = cycle_graph(6).unwrap();
        let cfg = SearchConfig::default();
        let none = PartialColoring::empty(&c6);
        let all = enumerate_good_colorings(&c6, 4, 4, &none, u64::MAX, false, &cfg).unwrap().count;
        assert!(all > 3);
        assert_eq!(
            enumerate_good_colorings(&c6, 4, 4, &none, 3, false, &cfg),
            Err(Error::LimitExceeded(3))
        );
        let small = cfg.clone().with_edge_budget(5);
        assert!(matches!(decide_arrows(&c6, 4, 4, &small), Err(Error::BudgetExceeded(_))));
        let starved = SearchConfig { node_budget: 2, ..cfg };
        assert!(matches!(decide_arrows(&complete_graph(5).unwrap(), 4, 4, &starved), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn fixed_edges() {
        let p3 = path_graph(3).unwrap();
        let mut fixed = PartialColoring::empty(&p3);
        fixed.set(0, Some(Color::Red));
        fixed.set(1, Some(Color::Red));
        let cfg = SearchConfig::default();
        assert_eq!(find_good_coloring(&p3, 3, 3, &fixed, &cfg), Err(Error::InconsistentFixed));
        fixed.set(1, None);
        let w = find_good_coloring(&p3, 3, 3, &fixed, &cfg).unwrap().unwrap();
        assert_eq!(w.colors(), &[Color::Red, Color::Blue]);
        let e = enumerate_good_colorings(&p3, 3, 3, &fixed, 10, true, &cfg).unwrap();
        assert_eq!(e.count, 1);
        assert_eq!(e.colorings, vec![w]);
    }

    #[test]
    fn every_config_agrees() {
        let g = complete_graph(5).unwrap();
        let none = PartialColoring::empty(&g);
        let base = SearchConfig::sequential();
        let reference = enumerate_good_colorings(&g, 4, 5, &none, u64::MAX, true, &base).unwrap();
        assert!(reference.count > 0);
        for order in [BranchOrder::InputOrder, BranchOrder::AdjacentToColored] {
            for incremental in [true, false] {
                for parallel in [true, false] {
                    let cfg = SearchConfig { order, incremental, parallel, ..SearchConfig::default() };
                    let e = enumerate_good_colorings(&g, 4, 5, &none, u64::MAX, false, &cfg).unwrap();
                    assert_eq!(e.count, reference.count, "{cfg:?}");
                    let v = decide_arrows(&g, 4, 5, &cfg).unwrap();
                    assert!(!v.arrows);
                }
            }
        }
    }

    #[test]
    fn parallel_matches_sequential_exactly() {
        let g = complete_graph(6).unwrap();
        let none = PartialColoring::empty(&g);
        let seq = SearchConfig::sequential();
        let par = SearchConfig { parallel: true, ..SearchConfig::default() };
        for (k, l) in [(4, 5), (5, 5), (4, 6), (3, 7)] {
            let a = enumerate_good_colorings(&g, k, l, &none, u64::MAX, true, &seq).unwrap();
            let b = enumerate_good_colorings(&g, k, l, &none, u64::MAX, true, &par).unwrap();
            assert_eq!(a, b);
            assert_eq!(decide_arrows(&g, k, l, &seq).unwrap(), decide_arrows(&g, k, l, &par).unwrap());
        }
    }

    #[test]
    fn pruning_reduces_nodes_only() {
        let g = complete_graph(5).unwrap();
        let none = PartialColoring::empty(&g);
        let pruned = Engine::new(&g, 4, 4, SearchConfig::sequential()).unwrap();
        let full = Engine::new(&g, 4, 4, SearchConfig { incremental: false, ..SearchConfig::sequential() }).unwrap();
        assert_eq!(pruned.find(&none).unwrap(), None);
        assert_eq!(full.find(&none).unwrap(), None);
        assert!(pruned.stats().nodes < full.stats().nodes);
    }
}
