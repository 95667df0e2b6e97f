//! Command-line front end. Exit codes: 0 for GOOD or a passing check, 1 for
//! ARROWS or a failing check, 2 for errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use arrowing::critical::{classify_critical, construct_critical, legal_types, ramsey_path, verify_observations, verify_split_lemmas, HookType};
use arrowing::engine::{enumerate_good_colorings, find_good_coloring, SearchConfig, DEFAULT_EDGE_BUDGET};
use arrowing::gadget::{
    clause_schema, instantiate_schema, parse_schema, variable_schema, verify_gadget, verify_link, verify_transmitter,
    GadgetSchema, Mode, TransmitterSpec,
};
use arrowing::graph::{parse_coloring, parse_graph, serialize_coloring, serialize_graph, thread};
use arrowing::paths::is_good_coloring;
use arrowing::poly::{decide_p2, decide_p3_p3, decide_p3_p4};
use arrowing::sat::{compose_reduction, parse_dimacs, Flavor};
use arrowing::{EdgeColoring, Graph, PartialColoring, Verdict};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EXIT_GOOD: u8 = 0;
pub const EXIT_ARROWS: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

pub const DEFAULT_SEED: u64 = 20240501;

#[derive(Debug, Parser)]
#[command(name = "arrowing", version, about = "Decide and verify path arrowing G -> (P_k, P_l)")]
pub struct Cli {
    /// Maximum number of uncolored edges the search engine accepts.
    #[arg(long, global = true, env = "ARROWING_EDGE_BUDGET", default_value_t = DEFAULT_EDGE_BUDGET)]
    pub budget: usize,
    /// Worker threads for the search engine; 1 runs sequentially.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print GOOD or ARROWS.
    Decide(DecideArgs),
    /// Print a good coloring, or ARROWS.
    Witness(WitnessArgs),
    /// Count good colorings.
    Enumerate(EnumerateArgs),
    #[command(subcommand)]
    Construct(Construct),
    /// Identify the type of a good coloring of the critical complete graph.
    Classify(ClassifyArgs),
    #[command(subcommand)]
    Verify(Verify),
    /// Build the reduction graph for a DIMACS formula.
    Reduce(ReduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Auto,
    Poly,
    Engine,
}

#[derive(Debug, Args)]
pub struct Problem {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub l: usize,
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    #[command(flatten)]
    pub problem: Problem,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[command(flatten)]
    pub problem: Problem,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
    /// Precolored edges; forces the engine.
    #[arg(long)]
    pub fixed: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub problem: Problem,
    #[arg(long)]
    pub fixed: Option<PathBuf>,
    /// Stop with an error after this many colorings.
    #[arg(long)]
    pub limit: Option<u64>,
    /// Also print every coloring as a line of R/B in edge order.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Red,
    Blue,
    Sym,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Stubs,
    Full,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Stubs => Mode::Stubs,
            ModeArg::Full => Mode::Full,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// A typed good coloring of the critical complete graph.
    Kr {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        /// Defaults to the first type allowed for (k, l).
        #[arg(long = "type")]
        hook_type: Option<HookType>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        coloring_out: Option<PathBuf>,
    },
    /// A transmitter; the port is named in a comment.
    Transmitter {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        k: usize,
        /// Ignored for symmetric transmitters.
        #[arg(long)]
        l: Option<usize>,
        /// Path length at the port; defaults to k-1 (red, sym) or l-1 (blue).
        #[arg(long)]
        x: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Copies of a graph chained through one vertex, plus a thread-end.
    Thread {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        copies: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The graph of a gadget schema, with its precolored stub edges.
    Schema {
        #[arg(long)]
        schema: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Stubs)]
        mode: ModeArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        coloring_out: Option<PathBuf>,
    },
    /// A connected G(n, p) graph.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub l: usize,
    /// A coloring of every edge of the critical complete graph.
    #[arg(long)]
    pub coloring: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// Check a transmitter by enumerating all good colorings.
    Transmitter {
        /// `red:k:l:x`, `blue:k:l:x` or `sym:k:k:x`.
        #[arg(long)]
        spec: TransmitterSpec,
        /// Check this graph instead of the built one.
        #[arg(long, requires = "port")]
        graph: Option<PathBuf>,
        #[arg(long)]
        port: Option<usize>,
    },
    /// Check a gadget schema against its contract.
    Gadget {
        #[arg(long)]
        schema: PathBuf,
    },
    /// Check strict-endpoint claims over every good coloring of K_r.
    Observations {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Longest paths ending in split graphs and near-complete graphs.
    SplitLemmas {
        #[arg(long, default_value_t = 7)]
        max_k: usize,
    },
    /// Classify every good coloring of K_r and check the allowed types.
    Census {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Two critical cliques joined by an edge: the edge must be blue.
    Link {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Regime {
    /// 4 <= k < l.
    Kl,
    /// k = 3, l >= 5.
    #[value(name = "3l")]
    ThreeL,
    /// k = l >= 4.
    Kk,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    pub formula: PathBuf,
    #[arg(long, value_enum)]
    pub regime: Regime,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    /// Overrides the flavor named in the file.
    #[arg(long)]
    pub flavor: Option<Flavor>,
    /// Variable gadget schema; defaults to the built-in one.
    #[arg(long)]
    pub variable: Option<PathBuf>,
    /// Clause gadget schema; defaults to the built-in one.
    #[arg(long)]
    pub clause: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ModeArg::Full)]
    pub mode: ModeArg,
    /// Skip checking the gadgets with `verify gadget` first.
    #[arg(long)]
    pub skip_verify: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub metadata: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_schema(path: &Path) -> Result<GadgetSchema> {
    parse_schema(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn verdict_code(pass: bool) -> u8 {
    if pass {
        EXIT_GOOD
    } else {
        EXIT_ARROWS
    }
}

/// Which polynomial solver handles `(k, l)`, if any. Swapped pairs are
/// handled by exchanging the colors.
fn poly_available(k: usize, l: usize) -> bool {
    matches!((k.min(l), k.max(l)), (2, _) | (3, 3) | (3, 4))
}

fn flip_verdict(v: Verdict) -> Verdict {
    match v.witness {
        Some(w) => Verdict::good(EdgeColoring::new(w.colors().iter().map(|c| c.flip()).collect())),
        None => v,
    }
}

/// Decides `g -> (P_k, P_l)` and checks any witness before returning it.
pub fn decide(g: &Graph, k: usize, l: usize, method: Method, cfg: &SearchConfig) -> Result<Verdict> {
    if k < 2 || l < 2 {
        bail!("k and l must be at least 2, got ({k}, {l})");
    }
    let poly = match method {
        Method::Engine => false,
        Method::Auto => poly_available(k, l),
        Method::Poly if poly_available(k, l) => true,
        Method::Poly => bail!("no polynomial solver for ({k}, {l}); use --method engine"),
    };
    let verdict = if poly {
        let (small, large) = (k.min(l), k.max(l));
        let v = match (small, large) {
            (2, large) => decide_p2(g, large)?,
            (3, 3) => decide_p3_p3(g)?,
            _ => decide_p3_p4(g)?,
        };
        if k > l {
            flip_verdict(v)
        } else {
            v
        }
    } else {
        arrowing::decide_arrows(g, k, l, cfg)?
    };
    if let Some(w) = &verdict.witness {
        if !is_good_coloring(g, w, k, l)? {
            bail!("internal error: solver returned a coloring that is not good");
        }
    }
    Ok(verdict)
}

fn config(cli: &Cli) -> Result<SearchConfig> {
    let mut cfg = SearchConfig::default().with_edge_budget(cli.budget);
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            bail!("--jobs must be at least 1");
        }
        cfg.parallel = jobs > 1 && cfg!(feature = "parallel");
        #[cfg(feature = "parallel")]
        if jobs > 1 {
            // A second call (tests running in one process) keeps the first pool.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
        }
    }
    Ok(cfg)
}

fn coloring_line(c: &EdgeColoring) -> String {
    c.colors().iter().map(|c| c.letter()).collect()
}

fn total_text(g: &Graph, c: &EdgeColoring) -> String {
    serialize_coloring(g, &PartialColoring::from(c))
}

fn load_fixed(g: &Graph, path: Option<&PathBuf>) -> Result<PartialColoring> {
    match path {
        Some(p) => parse_coloring(g, &read(p)?).with_context(|| format!("parsing {}", p.display())),
        None => Ok(PartialColoring::empty(g)),
    }
}

fn pass_line(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Runs one command, writing its report to `out`. Returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    let cfg = config(cli)?;
    match &cli.command {
        Command::Decide(a) => {
            let g = read_graph(&a.problem.graph)?;
            let v = decide(&g, a.problem.k, a.problem.l, a.method, &cfg)?;
            writeln!(out, "{}", if v.arrows { "ARROWS" } else { "GOOD" })?;
            Ok(verdict_code(!v.arrows))
        }
        Command::Witness(a) => {
            let (k, l) = (a.problem.k, a.problem.l);
            let g = read_graph(&a.problem.graph)?;
            let witness = if a.fixed.is_some() {
                let fixed = load_fixed(&g, a.fixed.as_ref())?;
                match find_good_coloring(&g, k, l, &fixed, &cfg) {
                    Err(arrowing::Error::InconsistentFixed) => None,
                    other => other?,
                }
            } else {
                decide(&g, k, l, a.method, &cfg)?.witness
            };
            match witness {
                Some(w) => {
                    if !is_good_coloring(&g, &w, k, l)? {
                        bail!("internal error: witness is not good");
                    }
                    emit(out, a.out.as_deref(), &total_text(&g, &w))?;
                    Ok(EXIT_GOOD)
                }
                None => {
                    writeln!(out, "ARROWS")?;
                    Ok(EXIT_ARROWS)
                }
            }
        }
        Command::Enumerate(a) => {
            let (k, l) = (a.problem.k, a.problem.l);
            let g = read_graph(&a.problem.graph)?;
            let fixed = load_fixed(&g, a.fixed.as_ref())?;
            let e = match enumerate_good_colorings(&g, k, l, &fixed, a.limit.unwrap_or(u64::MAX), a.list, &cfg) {
                Err(arrowing::Error::InconsistentFixed) => arrowing::engine::Enumeration { count: 0, colorings: vec![] },
                other => other?,
            };
            writeln!(out, "count {}", e.count)?;
            for c in &e.colorings {
                writeln!(out, "{}", coloring_line(c))?;
            }
            Ok(verdict_code(e.count > 0))
        }
        Command::Construct(c) => construct(c, out),
        Command::Classify(a) => {
            let r = ramsey_path(a.k, a.l)? - 1;
            let g = arrowing::graph::complete_graph(r)?;
            let c = parse_coloring(&g, &read(&a.coloring)?)?.to_total(&g)?;
            match classify_critical(a.k, a.l, &c) {
                Ok(Some(cc)) => {
                    writeln!(out, "type {}", cc.hook_type)?;
                    writeln!(out, "A {:?}", cc.a_set)?;
                    writeln!(out, "B {:?}", cc.b_set)?;
                    if let Some((u, v)) = cc.special_edge {
                        writeln!(out, "special {u} {v}")?;
                    }
                    Ok(EXIT_GOOD)
                }
                Ok(None) => {
                    writeln!(out, "not good")?;
                    Ok(EXIT_ARROWS)
                }
                Err(e @ arrowing::Error::TaxonomyViolation(_)) => {
                    writeln!(out, "{e}")?;
                    Ok(EXIT_ARROWS)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Verify(v) => verify(v, &cfg, out),
        Command::Reduce(a) => reduce(a, out),
    }
}

fn construct(c: &Construct, out: &mut dyn Write) -> Result<u8> {
    match c {
        Construct::Kr { k, l, hook_type, out: path, coloring_out } => {
            let t = match hook_type {
                Some(t) => *t,
                None => legal_types(*k, *l)?[0],
            };
            let cc = construct_critical(*k, *l, t, None, None)?;
            let header = format!("# K_{} coloring of type {} A={:?}\n", cc.graph.n(), t, cc.a_set);
            emit(out, path.as_deref(), &format!("{header}{}", serialize_graph(&cc.graph)))?;
            let colors = total_text(&cc.graph, &cc.coloring);
            match coloring_out {
                Some(p) => emit(out, Some(p), &colors)?,
                None if path.is_some() => emit(out, None, &colors)?,
                None => {}
            }
        }
        Construct::Transmitter { kind, k, l, x, out: path } => {
            let need_l = || l.context("--l is required for red and blue transmitters");
            let spec = match kind {
                Kind::Red => TransmitterSpec::RedUneq { k: *k, l: need_l()?, x: x.unwrap_or(k.saturating_sub(1)) },
                Kind::Blue => {
                    let l = need_l()?;
                    TransmitterSpec::BlueUneq { k: *k, l, x: x.unwrap_or(l.saturating_sub(1)) }
                }
                Kind::Sym => TransmitterSpec::Symmetric { k: *k, x: x.unwrap_or(k.saturating_sub(1)) },
            };
            let t = spec.build()?;
            let text = format!("# transmitter {spec} port {}\n{}", t.port, serialize_graph(&t.graph));
            emit(out, path.as_deref(), &text)?;
        }
        Construct::Thread { graph, vertex, copies, out: path } => {
            let h = read_graph(graph)?;
            let t = thread(&h, *vertex, *copies)?;
            let text = format!("# thread end {} links {:?}\n{}", t.end, t.links, serialize_graph(&t.graph));
            emit(out, path.as_deref(), &text)?;
        }
        Construct::Schema { schema, mode, out: path, coloring_out } => {
            let s = read_schema(schema)?;
            let inst = instantiate_schema(&s, (*mode).into())?;
            emit(out, path.as_deref(), &serialize_graph(&inst.graph))?;
            if let Some(p) = coloring_out {
                emit(out, Some(p), &serialize_coloring(&inst.graph, &inst.coloring))?;
            }
        }
        Construct::Random { n, p, seed, out: path } => {
            if *n == 0 || !(0.0..=1.0).contains(p) || (*n > 1 && *p == 0.0) {
                bail!("need n >= 1 and 0 < p <= 1 for a connected graph");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let g = loop {
                let edges: Vec<(usize, usize)> =
                    (0..*n).flat_map(|u| (u + 1..*n).map(move |v| (u, v))).filter(|_| rng.gen_bool(*p)).collect();
                let g = Graph::new(*n, edges)?;
                if g.is_connected() {
                    break g;
                }
            };
            emit(out, path.as_deref(), &serialize_graph(&g))?;
        }
    }
    Ok(EXIT_GOOD)
}

fn verify(v: &Verify, cfg: &SearchConfig, out: &mut dyn Write) -> Result<u8> {
    let pass = match v {
        Verify::Transmitter { spec, graph, port } => {
            let (g, p) = match (graph, port) {
                (Some(path), Some(p)) => (read_graph(path)?, *p),
                _ => {
                    let t = spec.build()?;
                    (t.graph, t.port)
                }
            };
            let r = verify_transmitter(&g, p, *spec, cfg)?;
            writeln!(out, "{}", r.line())?;
            r.passed()
        }
        Verify::Gadget { schema } => {
            let s = read_schema(schema)?;
            let r = verify_gadget(&s, cfg)?;
            for line in r.lines() {
                writeln!(out, "{line}")?;
            }
            r.passed()
        }
        Verify::Observations { k, l } => {
            let r = verify_observations(*k, *l, cfg)?;
            for line in r.lines() {
                writeln!(out, "{line}")?;
            }
            writeln!(out, "{}", pass_line(r.passed()))?;
            r.passed()
        }
        Verify::Census { k, l } => {
            let r = verify_observations(*k, *l, cfg)?;
            for line in r.lines().iter().filter(|l| !l.starts_with("claim ")) {
                writeln!(out, "{line}")?;
            }
            let pass = r.illegal_types.is_empty() && r.total > 0;
            writeln!(out, "violations {}", r.illegal_types.len())?;
            writeln!(out, "{}", pass_line(pass))?;
            pass
        }
        Verify::SplitLemmas { max_k } => {
            let checks = verify_split_lemmas(*max_k)?;
            for c in &checks {
                writeln!(out, "{}", c.line())?;
            }
            let pass = checks.iter().all(|c| c.passed());
            writeln!(out, "{}", pass_line(pass))?;
            pass
        }
        Verify::Link { k, l } => {
            let r = verify_link(*k, *l, cfg)?;
            writeln!(out, "{}", r.line())?;
            r.passed()
        }
    };
    Ok(verdict_code(pass))
}

fn reduce(a: &ReduceArgs, out: &mut dyn Write) -> Result<u8> {
    let (k, l) = match (a.regime, a.k, a.l) {
        (Regime::Kk, Some(k), l) => {
            if l.is_some_and(|l| l != k) {
                bail!("regime kk needs l = k");
            }
            (k, k)
        }
        (Regime::Kl, Some(k), Some(l)) if 4 <= k && k < l => (k, l),
        (Regime::ThreeL, k, Some(l)) if k.unwrap_or(3) == 3 && l >= 5 => (3, l),
        _ => bail!("--k/--l do not fit regime {:?}", a.regime),
    };
    let f = parse_dimacs(&read(&a.formula)?, a.flavor).with_context(|| format!("parsing {}", a.formula.display()))?;
    let variable = match &a.variable {
        Some(p) => read_schema(p)?,
        None => variable_schema(k, l).context("no built-in variable gadget; pass --variable")?,
    };
    let clause = match &a.clause {
        Some(p) => read_schema(p)?,
        None => clause_schema(k, l).context("no built-in clause gadget; pass --clause")?,
    };
    if !a.skip_verify {
        let cfg = SearchConfig::default().with_edge_budget(64);
        for s in [&variable, &clause] {
            let r = verify_gadget(s, &cfg)?;
            if !r.passed() {
                for line in r.lines() {
                    writeln!(out, "{line}")?;
                }
                bail!("gadget {} fails its contract", s.name);
            }
        }
    }
    let r = compose_reduction(&f, k, l, &variable, &clause, a.mode.into())?;
    emit(out, a.out.as_deref(), &serialize_graph(&r.graph))?;
    let mut meta = r.metadata_lines().join("\n");
    meta.push('\n');
    if r.mode == Mode::Stubs {
        meta.push_str(&serialize_coloring(&r.graph, &r.coloring));
    }
    match &a.metadata {
        Some(p) => emit(out, Some(p), &meta)?,
        None if a.out.is_some() => emit(out, None, &meta)?,
        None => {}
    }
    Ok(EXIT_GOOD)
}

/// Entry point shared by the binary and the tests: parses nothing, runs the
/// command and maps errors to exit code 2.
pub fn main_with(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match run(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

