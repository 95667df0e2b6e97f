//! Transmitters, stubs and gadget schemas.
//!
//! A schema is a skeleton graph plus ports. Each port either attaches a
//! signal source (a stub or a transmitter) or is an interface vertex: a
//! clause input or a variable output. In `Stubs` mode every signal source
//! becomes a precolored pendant path; in `Full` mode real transmitters are
//! spliced in.

mod library;
mod schema;
mod transmitter;

pub use library::{c4_clause_schema, clause_schema, variable_schema};
pub use schema::{parse_schema, serialize_schema};
pub use transmitter::{
    blue_transmitter, port_signal_holds, red_transmitter, red_transmitter_general, symmetric_transmitter,
    verify_link, verify_transmitter, LinkReport, Transmitter, TransmitterReport, TransmitterSpec,
};

use std::collections::BTreeSet;
use std::fmt;

use crate::engine::{enumerate_good_colorings, find_good_coloring, SearchConfig};
use crate::error::{Error, Result};
use crate::graph::{Color, EdgeColoring, Graph, PartialColoring};
use crate::paths::strict_endpoint_length;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StubColor {
    Red,
    Blue,
    /// Either color; used for symmetric transmitters.
    Either,
}

impl StubColor {
    fn letter(self) -> &'static str {
        match self {
            StubColor::Red => "R",
            StubColor::Blue => "B",
            StubColor::Either => "EITHER",
        }
    }
}

impl From<Color> for StubColor {
    fn from(c: Color) -> Self {
        match c {
            Color::Red => StubColor::Red,
            Color::Blue => StubColor::Blue,
        }
    }
}

/// A forced monochromatic path of `path_len` vertices ending at the port.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StubSpec {
    pub color: StubColor,
    pub path_len: usize,
}

impl StubSpec {
    pub fn new(color: impl Into<StubColor>, path_len: usize) -> Result<Self> {
        if path_len < 2 {
            return Err(Error::InvalidArgument(format!("stub path length must be at least 2, got {path_len}")));
        }
        Ok(StubSpec { color: color.into(), path_len })
    }

    /// The transmitter that this stub stands in for.
    pub fn transmitter(&self, k: usize, l: usize) -> Result<TransmitterSpec> {
        let x = self.path_len;
        let spec = match (self.color, k == l) {
            (StubColor::Either, true) => TransmitterSpec::Symmetric { k, x },
            (StubColor::Red, false) => TransmitterSpec::RedUneq { k, l, x },
            (StubColor::Blue, false) => TransmitterSpec::BlueUneq { k, l, x },
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "no transmitter realizes a {} stub for ({k}, {l})",
                    self.color.letter()
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for StubSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.color.letter(), self.path_len)
    }
}

impl From<TransmitterSpec> for StubSpec {
    fn from(t: TransmitterSpec) -> Self {
        let color = t.color().map_or(StubColor::Either, StubColor::from);
        StubSpec { color, path_len: t.length() }
    }
}

/// A path `0 - 1 - ... - (path_len - 1)` with every edge precolored; the
/// attach vertex is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stub {
    pub graph: Graph,
    pub coloring: PartialColoring,
    pub attach: usize,
}

pub fn make_stub(color: Color, path_len: usize) -> Result<Stub> {
    StubSpec::new(color, path_len)?;
    let graph = crate::graph::path_graph(path_len)?;
    let coloring = PartialColoring::from(&EdgeColoring::uniform(&graph, color));
    Ok(Stub { graph, coloring, attach: 0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Contract {
    Variable,
    Clause3Sat,
    ClauseNae,
}

impl Contract {
    pub fn name(self) -> &'static str {
        match self {
            Contract::Variable => "Variable",
            Contract::Clause3Sat => "Clause3SAT",
            Contract::ClauseNae => "ClauseNAE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    /// Variable output carrying the variable's value.
    U,
    /// Variable output carrying the negated value.
    N,
    /// Clause input.
    Input,
    /// A signal source inside the gadget.
    Internal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PortSource {
    Stub(StubSpec),
    Transmitter(TransmitterSpec),
}

impl PortSource {
    pub fn stub(&self) -> StubSpec {
        match *self {
            PortSource::Stub(s) => s,
            PortSource::Transmitter(t) => t.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Port {
    pub vertex: usize,
    pub role: Role,
    pub source: Option<PortSource>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetSchema {
    pub name: String,
    pub contract: Contract,
    pub k: usize,
    pub l: usize,
    pub skeleton: Graph,
    pub ports: Vec<Port>,
}

impl GadgetSchema {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(format!("schema {}: {m}", self.name)));
        if self.k < 3 || self.k > self.l {
            return bad(format!("needs 3 <= k <= l, got ({}, {})", self.k, self.l));
        }
        // Several signal sources may meet at one vertex; an interface vertex
        // carries nothing else.
        let mut interface = BTreeSet::new();
        let mut internal = BTreeSet::new();
        for p in &self.ports {
            self.skeleton.check_vertex(p.vertex)?;
            let clash = if p.role == Role::Internal {
                internal.insert(p.vertex);
                interface.contains(&p.vertex)
            } else {
                !interface.insert(p.vertex) || internal.contains(&p.vertex)
            };
            if clash {
                return bad(format!("vertex {} has two ports", p.vertex));
            }
            match (p.role, self.contract) {
                (Role::U | Role::N, Contract::Variable) | (Role::Input, Contract::Clause3Sat | Contract::ClauseNae) => {}
                (Role::Internal, _) => {
                    if p.source.is_none() {
                        return bad(format!("internal port {} has no source", p.vertex));
                    }
                }
                (role, contract) => return bad(format!("role {role:?} is not allowed in a {} schema", contract.name())),
            }
            if let Some(src) = p.source {
                let stub = src.stub();
                if stub.path_len < 2 {
                    return bad(format!("port {} has a stub shorter than 2", p.vertex));
                }
                if let PortSource::Transmitter(t) = src {
                    t.validate()?;
                    if t.problem() != (self.k, self.l) {
                        return bad(format!("transmitter {t} does not match ({}, {})", self.k, self.l));
                    }
                }
            }
        }
        let inputs = self.ports_with(Role::Input).count();
        let outputs = self.ports_with(Role::U).count() + self.ports_with(Role::N).count();
        match self.contract {
            Contract::Clause3Sat | Contract::ClauseNae if inputs != 3 => bad(format!("a clause needs 3 inputs, found {inputs}")),
            Contract::Variable if outputs == 0 => bad("a variable gadget needs outputs".into()),
            _ => Ok(()),
        }
    }

    pub fn ports_with(&self, role: Role) -> impl Iterator<Item = &Port> + '_ {
        self.ports.iter().filter(move |p| p.role == role)
    }
}

/// The false and true input signals for `(k, l)`.
pub fn signal_stubs(k: usize, l: usize) -> Result<(StubSpec, StubSpec)> {
    match (k, l) {
        (3, l) if l >= 4 => Ok((StubSpec::new(Color::Red, 2)?, StubSpec::new(Color::Blue, 2)?)),
        (k, l) if k >= 4 && k < l => Ok((StubSpec::new(Color::Red, k - 1)?, StubSpec::new(Color::Blue, 3)?)),
        (k, l) if k >= 4 && k == l => Ok((StubSpec::new(Color::Red, k - 1)?, StubSpec::new(Color::Blue, k - 1)?)),
        _ => Err(Error::InvalidArgument(format!("no signal convention for ({k}, {l})"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Stubs,
    Full,
}

/// A graph built from a schema. Skeleton vertices keep their ids; attached
/// fragments are appended in port order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub coloring: PartialColoring,
}

/// Glues `frag` onto `base` by identifying `frag_port` with `at`.
fn splice(
    n: &mut usize,
    edges: &mut Vec<((usize, usize), Option<Color>)>,
    at: usize,
    frag: &Graph,
    frag_colors: &[Option<Color>],
    frag_port: usize,
) {
    let offset = *n;
    let map = |v: usize| match v.cmp(&frag_port) {
        std::cmp::Ordering::Equal => at,
        std::cmp::Ordering::Less => offset + v,
        std::cmp::Ordering::Greater => offset + v - 1,
    };
    for (id, &(u, v)) in frag.edges().iter().enumerate() {
        edges.push(((map(u), map(v)), frag_colors[id]));
    }
    *n += frag.n() - 1;
}

fn assemble(n: usize, edges: Vec<((usize, usize), Option<Color>)>) -> Result<Instance> {
    let graph = Graph::new(n, edges.iter().map(|&(e, _)| e))?;
    let mut coloring = PartialColoring::empty(&graph);
    for ((u, v), c) in edges {
        let id = graph.edge_id(u, v).ok_or(Error::MissingEdge((u, v)))?;
        coloring.set(id, c);
    }
    Ok(Instance { graph, coloring })
}

/// Builds the schema graph. Ports get the stub given in `overrides` when
/// present, else their declared source; `either` fixes the color of each
/// `EITHER` stub in port order (defaulting to red).
fn build(
    s: &GadgetSchema,
    mode: Mode,
    overrides: &[(usize, StubSpec)],
    either: &[Color],
    bare_interface: bool,
) -> Result<Instance> {
    s.validate()?;
    let mut n = s.skeleton.n();
    let mut edges: Vec<_> = s.skeleton.edges().iter().map(|&e| (e, None)).collect();
    let mut either_iter = either.iter().copied();
    for p in &s.ports {
        let source = overrides
            .iter()
            .find(|(v, _)| *v == p.vertex)
            .map(|&(_, st)| PortSource::Stub(st))
            .or(p.source);
        let Some(source) = source else { continue };
        if bare_interface && p.role != Role::Internal {
            continue;
        }
        match mode {
            Mode::Stubs => {
                let st = source.stub();
                let color = match st.color {
                    StubColor::Red => Color::Red,
                    StubColor::Blue => Color::Blue,
                    StubColor::Either => either_iter.next().unwrap_or(Color::Red),
                };
                let stub = make_stub(color, st.path_len)?;
                splice(&mut n, &mut edges, p.vertex, &stub.graph, stub.coloring.options(), stub.attach);
            }
            Mode::Full => {
                if p.role != Role::Internal {
                    continue;
                }
                let spec = match source {
                    PortSource::Transmitter(t) => t,
                    PortSource::Stub(st) => st.transmitter(s.k, s.l)?,
                };
                let t = spec.build()?;
                splice(&mut n, &mut edges, p.vertex, &t.graph, &vec![None; t.graph.edge_count()], t.port);
            }
        }
    }
    assemble(n, edges)
}

/// Builds the schema graph. `Stubs` mode attaches every declared stub
/// (`EITHER` stubs as red); `Full` mode splices a transmitter at every
/// internal port and leaves inputs and outputs bare.
pub fn instantiate_schema(s: &GadgetSchema, mode: Mode) -> Result<Instance> {
    build(s, mode, &[], &[], false)
}

/// As `instantiate_schema`, but interface ports never get a source, so they
/// can be glued to other gadgets.
pub fn instantiate_for_composition(s: &GadgetSchema, mode: Mode) -> Result<Instance> {
    build(s, mode, &[], &[], true)
}

/// Stubs-mode instance with the clause inputs driven by the given signals
/// (`true` = true signal) and `EITHER` stubs colored by `either`.
pub fn instantiate_with_inputs(s: &GadgetSchema, inputs: &[bool], either: &[Color]) -> Result<Instance> {
    let (f, t) = signal_stubs(s.k, s.l)?;
    let ports: Vec<usize> = s.ports_with(Role::Input).map(|p| p.vertex).collect();
    if ports.len() != inputs.len() {
        return Err(Error::InvalidArgument(format!("{} inputs given for {} input ports", inputs.len(), ports.len())));
    }
    let overrides: Vec<(usize, StubSpec)> =
        ports.iter().zip(inputs).map(|(&v, &b)| (v, if b { t } else { f })).collect();
    build(s, Mode::Stubs, &overrides, either, false)
}

/// Every assignment of colors to the schema's `EITHER` stubs.
pub fn either_assignments(s: &GadgetSchema) -> Vec<Vec<Color>> {
    let count = s
        .ports
        .iter()
        .filter(|p| p.role != Role::Input && p.source.is_some_and(|src| src.stub().color == StubColor::Either))
        .count();
    (0u32..1 << count)
        .map(|mask| (0..count).map(|i| if mask >> i & 1 == 1 { Color::Blue } else { Color::Red }).collect())
        .collect()
}

/// The signal a variable output carries in one good coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Signal {
    False,
    True,
    /// Neither clean signal.
    Other,
}

impl fmt::Display for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Signal::False => "F",
            Signal::True => "T",
            Signal::Other => "?",
        })
    }
}

fn read_signal(g: &Graph, c: &EdgeColoring, v: usize, f: StubSpec, t: StubSpec) -> Result<Signal> {
    let holds = |st: StubSpec| -> Result<bool> {
        let color = if st.color == StubColor::Blue { Color::Blue } else { Color::Red };
        Ok(crate::gadget::port_signal_holds(g, c, v, color, st.path_len)?
            && strict_endpoint_length(g, c, color.flip(), v)? == 1)
    };
    Ok(if holds(f)? {
        Signal::False
    } else if holds(t)? {
        Signal::True
    } else {
        Signal::Other
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthRow {
    /// Input signals in port order, `true` = true signal.
    pub inputs: Vec<bool>,
    pub good: bool,
    pub expected: bool,
    pub witness: Option<EdgeColoring>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetReport {
    pub name: String,
    pub contract: Contract,
    /// Clause contracts: one row per input combination.
    pub rows: Vec<TruthRow>,
    /// Variable contract: distinct output patterns, ports in schema order.
    pub patterns: Vec<Vec<Signal>>,
    pub good_colorings: u64,
    pub failures: Vec<String>,
}

impl GadgetReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![format!("gadget {} contract={}", self.name, self.contract.name())];
        for r in &self.rows {
            let inputs: String = r.inputs.iter().map(|&b| if b { 'T' } else { 'F' }).collect();
            out.push(format!(
                "inputs {inputs} {} expected {}",
                if r.good { "GOOD" } else { "ARROWS" },
                if r.expected { "GOOD" } else { "ARROWS" }
            ));
        }
        for p in &self.patterns {
            out.push(format!("pattern {}", p.iter().map(|s| s.to_string()).collect::<String>()));
        }
        if self.contract == Contract::Variable {
            out.push(format!("good_colorings {}", self.good_colorings));
        }
        for f in &self.failures {
            out.push(format!("failure {f}"));
        }
        out.push(if self.passed() { "PASS".into() } else { "FAIL".into() });
        out
    }
}

/// Whether the clause instance for `inputs` has a good coloring for some
/// choice of `EITHER` stub colors.
pub fn clause_row(s: &GadgetSchema, inputs: &[bool], cfg: &SearchConfig) -> Result<(bool, Option<EdgeColoring>)> {
    for either in either_assignments(s) {
        let inst = instantiate_with_inputs(s, inputs, &either)?;
        match find_good_coloring(&inst.graph, s.k, s.l, &inst.coloring, cfg) {
            Ok(Some(w)) => return Ok((true, Some(w))),
            Ok(None) | Err(Error::InconsistentFixed) => {}
            Err(e) => return Err(e),
        }
    }
    Ok((false, None))
}

/// Checks a schema against its contract using Stubs mode.
pub fn verify_gadget(s: &GadgetSchema, cfg: &SearchConfig) -> Result<GadgetReport> {
    s.validate()?;
    let mut report = GadgetReport {
        name: s.name.clone(),
        contract: s.contract,
        rows: Vec::new(),
        patterns: Vec::new(),
        good_colorings: 0,
        failures: Vec::new(),
    };
    match s.contract {
        Contract::Clause3Sat | Contract::ClauseNae => {
            for mask in 0u32..8 {
                let inputs: Vec<bool> = (0..3).map(|i| mask >> (2 - i) & 1 == 1).collect();
                let expected = match s.contract {
                    Contract::Clause3Sat => inputs.iter().any(|&b| b),
                    _ => !(inputs.iter().all(|&b| b) || inputs.iter().all(|&b| !b)),
                };
                let (good, witness) = clause_row(s, &inputs, cfg)?;
                if good != expected {
                    let t: String = inputs.iter().map(|&b| if b { 'T' } else { 'F' }).collect();
                    report.failures.push(format!(
                        "inputs {t}: {} but the contract requires {}",
                        if good { "GOOD" } else { "ARROWS" },
                        if expected { "GOOD" } else { "ARROWS" }
                    ));
                }
                report.rows.push(TruthRow { inputs, good, expected, witness });
            }
        }
        Contract::Variable => verify_variable(s, cfg, &mut report)?,
    }
    Ok(report)
}

fn verify_variable(s: &GadgetSchema, cfg: &SearchConfig, report: &mut GadgetReport) -> Result<()> {
    let (f, t) = signal_stubs(s.k, s.l)?;
    let outputs: Vec<&Port> = s.ports.iter().filter(|p| matches!(p.role, Role::U | Role::N)).collect();
    let mut patterns = BTreeSet::new();
    for either in either_assignments(s) {
        let inst = build(s, Mode::Stubs, &[], &either, false)?;
        // Sources that already clash have no good coloring.
        let all = match enumerate_good_colorings(&inst.graph, s.k, s.l, &inst.coloring, u64::MAX, true, cfg) {
            Err(Error::InconsistentFixed) => continue,
            other => other?,
        };
        report.good_colorings += all.count;
        for c in &all.colorings {
            let pattern = outputs
                .iter()
                .map(|p| read_signal(&inst.graph, c, p.vertex, f, t))
                .collect::<Result<Vec<_>>>()?;
            patterns.insert(pattern);
        }
    }
    report.patterns = patterns.into_iter().collect();
    if report.patterns.len() != 2 {
        report.failures.push(format!("expected exactly 2 output patterns, found {}", report.patterns.len()));
        return Ok(());
    }
    for p in &report.patterns {
        let mut want = None;
        for (port, &sig) in outputs.iter().zip(p) {
            let base = if port.role == Role::U { sig } else { flip_signal(sig) };
            if sig == Signal::Other || want.is_some_and(|w| w != base) {
                report.failures.push(format!(
                    "pattern {} is not a consistent assignment",
                    p.iter().map(|s| s.to_string()).collect::<String>()
                ));
                break;
            }
            want = Some(base);
        }
    }
    let swapped: Vec<Signal> = report.patterns[0].iter().map(|&s| flip_signal(s)).collect();
    if report.failures.is_empty() && swapped != report.patterns[1] {
        report.failures.push("the two patterns are not complementary".into());
    }
    Ok(())
}

fn flip_signal(s: Signal) -> Signal {
    match s {
        Signal::False => Signal::True,
        Signal::True => Signal::False,
        Signal::Other => Signal::Other,
    }
}
