//! SAT variants and composition of the reduction graph from gadgets.

use std::collections::{BTreeMap, HashSet};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gadget::{instantiate_for_composition, Contract, GadgetSchema, Mode, Role};
use crate::graph::{canonical, Graph, PartialColoring};

pub const BRUTE_FORCE_MAX_VARS: usize = 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// 3SAT where every clause has three distinct variables and every
    /// variable occurs exactly twice unnegated and twice negated.
    TwoTwo3Sat,
    /// Positive clauses of exactly three literals under not-all-equal
    /// semantics, each variable occurring at most four times.
    PositiveNaeE3Sat4,
    Plain,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::TwoTwo3Sat => "TwoTwo3Sat",
            Flavor::PositiveNaeE3Sat4 => "PositiveNaeE3Sat4",
            Flavor::Plain => "Plain",
        }
    }

    pub fn is_nae(self) -> bool {
        self == Flavor::PositiveNaeE3Sat4
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "twotwo3sat" | "2-2-3sat" | "(2,2)-3sat" => Ok(Flavor::TwoTwo3Sat),
            "positivenaee3sat4" | "positive-nae-e3sat-4" => Ok(Flavor::PositiveNaeE3Sat4),
            "plain" => Ok(Flavor::Plain),
            _ => Err(Error::InvalidArgument(format!("unknown formula flavor `{s}`"))),
        }
    }
}

/// Literals are DIMACS integers: `v` for variable `v` (1-based), `-v` for
/// its negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
    pub flavor: Flavor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// 0-based clause index, when the violation belongs to one clause.
    pub clause: Option<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.clause {
            Some(c) => write!(f, "clause {}: {}", c + 1, self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>, flavor: Flavor) -> Self {
        CnfFormula { num_vars, clauses, flavor }
    }

    /// Occurrences of each variable as `(unnegated, negated)`, index 0 for
    /// variable 1.
    pub fn occurrences(&self) -> Vec<(usize, usize)> {
        let mut occ = vec![(0, 0); self.num_vars];
        for &lit in self.clauses.iter().flatten() {
            if let Some(o) = occ.get_mut(lit.unsigned_abs() as usize - 1) {
                if lit > 0 {
                    o.0 += 1;
                } else {
                    o.1 += 1;
                }
            }
        }
        occ
    }

    /// Structural violations of the formula's flavor; empty when valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut push = |clause: Option<usize>, message: String| out.push(Violation { clause, message });
        let mut literals_ok = true;
        for (i, c) in self.clauses.iter().enumerate() {
            if c.is_empty() {
                push(Some(i), "empty clause".into());
            }
            for &lit in c {
                if lit == 0 || lit.unsigned_abs() as usize > self.num_vars {
                    push(Some(i), format!("literal {lit} is outside 1..={}", self.num_vars));
                    literals_ok = false;
                }
            }
            match self.flavor {
                Flavor::TwoTwo3Sat => {
                    let vars: HashSet<u32> = c.iter().map(|l| l.unsigned_abs()).collect();
                    if c.len() != 3 || vars.len() != 3 {
                        push(Some(i), "needs exactly three distinct variables".into());
                    }
                }
                Flavor::PositiveNaeE3Sat4 => {
                    if c.len() != 3 {
                        push(Some(i), format!("needs exactly 3 literals, has {}", c.len()));
                    }
                    if c.iter().any(|&l| l < 0) {
                        push(Some(i), "negated literal in a positive formula".into());
                    }
                }
                Flavor::Plain => {}
            }
        }
        if !literals_ok {
            return out;
        }
        for (v, &(pos, neg)) in self.occurrences().iter().enumerate() {
            let v = v + 1;
            match self.flavor {
                Flavor::TwoTwo3Sat if (pos, neg) != (2, 2) => push(
                    None,
                    format!("variable {v} occurs {pos} times unnegated and {neg} times negated; needs 2 and 2"),
                ),
                Flavor::PositiveNaeE3Sat4 if pos + neg > 4 => {
                    push(None, format!("variable {v} occurs {} times; at most 4 allowed", pos + neg))
                }
                _ => {}
            }
        }
        out
    }

    /// Whether `assignment` (index 0 for variable 1) satisfies every clause
    /// under the flavor's semantics.
    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        let value = |lit: i32| assignment[lit.unsigned_abs() as usize - 1] == (lit > 0);
        self.clauses.iter().all(|c| {
            if self.flavor.is_nae() {
                c.iter().any(|&l| value(l)) && c.iter().any(|&l| !value(l))
            } else {
                c.iter().any(|&l| value(l))
            }
        })
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("c flavor={}\np cnf {} {}\n", self.flavor, self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for lit in c {
                let _ = write!(out, "{lit} ");
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Exhaustive search over all assignments.
pub fn brute_force_sat(f: &CnfFormula) -> Result<Option<Vec<bool>>> {
    if f.num_vars > BRUTE_FORCE_MAX_VARS {
        return Err(Error::TooManyVariables(f.num_vars, BRUTE_FORCE_MAX_VARS));
    }
    if let Some(v) = f.validate().into_iter().find(|v| v.message.starts_with("literal")) {
        return Err(Error::InvalidArgument(v.to_string()));
    }
    Ok((0u32..1 << f.num_vars)
        .map(|mask| (0..f.num_vars).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .find(|a| f.is_satisfied_by(a)))
}

/// Parses DIMACS CNF. The flavor comes from `flavor`, else from a
/// `c flavor=<name>` comment, else `Plain`.
pub fn parse_dimacs(text: &str, flavor: Option<Flavor>) -> Result<CnfFormula> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut header: Option<(usize, usize, usize)> = None;
    let mut found_flavor = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        last_line = no;
        if let Some(comment) = line.strip_prefix('c') {
            if let Some(name) = comment.trim().strip_prefix("flavor=") {
                found_flavor = Some(name.trim().parse::<Flavor>().map_err(|e| err(no, e.to_string()))?);
            }
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return Err(err(no, "second problem line".into()));
            }
            let toks: Vec<&str> = rest.split_whitespace().collect();
            let [fmt, vars, count] = toks.as_slice() else {
                return Err(err(no, "expected `p cnf <variables> <clauses>`".into()));
            };
            if *fmt != "cnf" {
                return Err(err(no, format!("unsupported format `{fmt}`")));
            }
            let vars = vars.parse().map_err(|_| err(no, format!("bad variable count `{vars}`")))?;
            let count = count.parse().map_err(|_| err(no, format!("bad clause count `{count}`")))?;
            header = Some((vars, count, no));
            continue;
        }
        let Some((vars, _, _)) = header else {
            return Err(err(no, "clause before the problem line".into()));
        };
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| err(no, format!("bad literal `{tok}`")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > vars {
                return Err(err(no, format!("literal {lit} exceeds the declared {vars} variables")));
            } else {
                current.push(lit);
            }
        }
    }
    let (num_vars, count, header_line) = header.ok_or_else(|| err(last_line.max(1), "missing problem line".into()))?;
    if !current.is_empty() {
        return Err(err(last_line, "last clause is not terminated by 0".into()));
    }
    if clauses.len() != count {
        return Err(err(header_line, format!("header declares {count} clauses, found {}", clauses.len())));
    }
    let flavor = flavor.or(found_flavor).unwrap_or(Flavor::Plain);
    Ok(CnfFormula { num_vars, clauses, flavor })
}

pub fn emit_dimacs(f: &CnfFormula) -> String {
    f.to_dimacs()
}

/// One glued pair: a variable output identified with a clause input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    /// 1-based, as in the formula.
    pub variable: usize,
    pub role: Role,
    /// 1-based index among the variable gadget's ports of this role.
    pub port: usize,
    /// 0-based clause index.
    pub clause: usize,
    /// 0-based literal position in the clause.
    pub position: usize,
    /// The glued vertex in the output graph.
    pub vertex: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub k: usize,
    pub l: usize,
    pub flavor: Flavor,
    pub mode: Mode,
    pub graph: Graph,
    /// Precolored stub edges in Stubs mode; nothing is precolored in Full mode.
    pub coloring: PartialColoring,
    pub variable_gadget_size: usize,
    pub clause_gadget_size: usize,
    /// First output vertex of each variable gadget copy.
    pub variable_offsets: Vec<usize>,
    pub contractions: Vec<Contraction>,
}

impl Reduction {
    pub fn metadata_lines(&self) -> Vec<String> {
        let mut out = vec![
            format!(
                "reduction k={} l={} flavor={} mode={:?} vertices={} edges={}",
                self.k,
                self.l,
                self.flavor,
                self.mode,
                self.graph.n(),
                self.graph.edge_count()
            ),
            format!("gadget_sizes variable={} clause={}", self.variable_gadget_size, self.clause_gadget_size),
            "note satisfiability equivalence is not checked here; gadget contracts and composition counts stand in for it"
                .into(),
        ];
        for (v, off) in self.variable_offsets.iter().enumerate() {
            out.push(format!("variable {} offset {off}", v + 1));
        }
        for c in &self.contractions {
            let role = if c.role == Role::U { "U" } else { "N" };
            out.push(format!(
                "contract variable={} port={role}{} clause={} position={} vertex={}",
                c.variable,
                c.port,
                c.clause + 1,
                c.position + 1,
                c.vertex
            ));
        }
        out
    }
}

/// The flavor a `(k, l)` reduction starts from.
pub fn regime_flavor(k: usize, l: usize) -> Result<Flavor> {
    match (k, l) {
        (3, l) if l >= 5 => Ok(Flavor::TwoTwo3Sat),
        (k, l) if 4 <= k && k < l => Ok(Flavor::TwoTwo3Sat),
        (k, l) if k == l && k >= 4 => Ok(Flavor::PositiveNaeE3Sat4),
        _ => Err(Error::InvalidArgument(format!("no reduction for ({k}, {l})"))),
    }
}

/// Builds `G_phi`: one variable gadget per variable and one clause gadget per
/// clause, each clause input glued to the next unused `U` (unnegated
/// literal) or `N` (negated literal) output of its variable's gadget.
/// Variable gadgets come first in the vertex order, then clause gadgets
/// without their inputs.
pub fn compose_reduction(
    f: &CnfFormula,
    k: usize,
    l: usize,
    variable: &GadgetSchema,
    clause: &GadgetSchema,
    mode: Mode,
) -> Result<Reduction> {
    let flavor = regime_flavor(k, l)?;
    if f.flavor != flavor {
        return Err(Error::InvalidArgument(format!("({k}, {l}) reduces from {flavor}, got a {} formula", f.flavor)));
    }
    if let Some(v) = f.validate().first() {
        return Err(Error::InvalidArgument(format!("formula is not valid {flavor}: {v}")));
    }
    let want_clause = if flavor.is_nae() { Contract::ClauseNae } else { Contract::Clause3Sat };
    for (s, want) in [(variable, Contract::Variable), (clause, want_clause)] {
        if s.contract != want || (s.k, s.l) != (k, l) {
            return Err(Error::InvalidArgument(format!(
                "schema {} is a {} gadget for ({}, {}); need {} for ({k}, {l})",
                s.name,
                s.contract.name(),
                s.k,
                s.l,
                want.name()
            )));
        }
    }
    let vg = instantiate_for_composition(variable, mode)?;
    let cg = instantiate_for_composition(clause, mode)?;
    let u_ports: Vec<usize> = variable.ports_with(Role::U).map(|p| p.vertex).collect();
    let n_ports: Vec<usize> = variable.ports_with(Role::N).map(|p| p.vertex).collect();
    let inputs: Vec<usize> = clause.ports_with(Role::Input).map(|p| p.vertex).collect();
    let (vn, cn) = (vg.graph.n(), cg.graph.n());

    // Clause-local vertex -> output id, skipping glued inputs.
    let mut clause_map = vec![usize::MAX; cn];
    let mut next = vn;
    for (v, slot) in clause_map.iter_mut().enumerate() {
        if !inputs.contains(&v) {
            *slot = next;
            next += 1;
        }
    }
    let clause_own = next - vn;
    let total = vn * f.num_vars + clause_own * f.clauses.len();
    let variable_offsets: Vec<usize> = (0..f.num_vars).map(|i| i * vn).collect();

    let mut used = vec![(0usize, 0usize); f.num_vars];
    let mut contractions = Vec::with_capacity(3 * f.clauses.len());
    let mut edges: Vec<((usize, usize), Option<crate::graph::Color>)> = Vec::new();
    for (i, &(u, v)) in vg.graph.edges().iter().enumerate() {
        for off in &variable_offsets {
            edges.push(((off + u, off + v), vg.coloring.get(i)));
        }
    }
    for (ci, c) in f.clauses.iter().enumerate() {
        let base = vn * f.num_vars + ci * clause_own;
        let mut map: Vec<usize> = clause_map.iter().map(|&m| if m == usize::MAX { m } else { base + m - vn }).collect();
        for (pos, &lit) in c.iter().enumerate() {
            let var = lit.unsigned_abs() as usize;
            let (role, ports, count) = if lit > 0 {
                (Role::U, &u_ports, &mut used[var - 1].0)
            } else {
                (Role::N, &n_ports, &mut used[var - 1].1)
            };
            let &port = ports.get(*count).ok_or(Error::PortsExhausted {
                variable: var,
                role: if role == Role::U { "U" } else { "N" },
            })?;
            *count += 1;
            let vertex = variable_offsets[var - 1] + port;
            let input = *inputs
                .get(pos)
                .ok_or_else(|| Error::InvalidArgument(format!("clause {} has more literals than inputs", ci + 1)))?;
            map[input] = vertex;
            contractions.push(Contraction { variable: var, role, port: *count, clause: ci, position: pos, vertex });
        }
        if c.len() != inputs.len() {
            return Err(Error::InvalidArgument(format!("clause {} does not fill every input", ci + 1)));
        }
        for (i, &(u, v)) in cg.graph.edges().iter().enumerate() {
            edges.push(((map[u], map[v]), cg.coloring.get(i)));
        }
    }

    let mut seen = HashSet::new();
    for &((u, v), _) in &edges {
        if u == v {
            return Err(Error::Internal(format!("composition produced a self-loop at {u}")));
        }
        if !seen.insert(canonical(u, v)) {
            return Err(Error::NonSimpleComposition(canonical(u, v)));
        }
    }
    let graph = Graph::new(total, edges.iter().map(|&(e, _)| e))?;
    let mut coloring = PartialColoring::empty(&graph);
    for &((u, v), c) in &edges {
        let id = graph.edge_id(u, v).ok_or(Error::MissingEdge((u, v)))?;
        coloring.set(id, c);
    }
    Ok(Reduction {
        k,
        l,
        flavor,
        mode,
        graph,
        coloring,
        variable_gadget_size: vn,
        clause_gadget_size: cn,
        variable_offsets,
        contractions,
    })
}

/// Per-variable port usage `(U, N)` recorded in a reduction.
pub fn port_usage(r: &Reduction) -> BTreeMap<usize, (usize, usize)> {
    let mut out = BTreeMap::new();
    for c in &r.contractions {
        let e = out.entry(c.variable).or_insert((0, 0));
        if c.role == Role::U {
            e.0 += 1;
        } else {
            e.1 += 1;
        }
    }
    out
}
