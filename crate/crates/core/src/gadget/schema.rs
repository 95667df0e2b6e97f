//! Schema files.
//!
//! ```text
//! schema <name> contract=<Variable|Clause3SAT|ClauseNAE> k=<k> l=<l>
//! e <u> <v>
//! port <v> role=<U|N|Input|Internal> [stub=<R|B|EITHER>:<len> | transmitter=<red|blue|sym>:<k>:<l>:<x>]
//! ```
//!
//! `#` starts a comment. The vertex count is one more than the largest
//! vertex mentioned.

use std::fmt::Write as _;

use super::{Contract, GadgetSchema, Port, PortSource, Role, StubColor, StubSpec, TransmitterSpec};
use crate::error::{Error, Result};
use crate::graph::Graph;

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn key_value<'a>(line: usize, tok: &'a str, key: &str) -> Result<&'a str> {
    tok.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| err(line, format!("expected `{key}=...`, found `{tok}`")))
}

fn number(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| err(line, format!("expected a non-negative integer, found `{tok}`")))
}

fn parse_stub(line: usize, text: &str) -> Result<StubSpec> {
    let (color, len) = text.split_once(':').ok_or_else(|| err(line, format!("bad stub `{text}`")))?;
    let color = match color {
        "R" => StubColor::Red,
        "B" => StubColor::Blue,
        "EITHER" => StubColor::Either,
        other => return Err(err(line, format!("unknown stub color `{other}`"))),
    };
    let path_len = number(line, len)?;
    if path_len < 2 {
        return Err(err(line, "stub length must be at least 2"));
    }
    Ok(StubSpec { color, path_len })
}

pub fn parse_schema(text: &str) -> Result<GadgetSchema> {
    let mut header: Option<(String, Contract, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut ports = Vec::new();
    let mut max_vertex: Option<usize> = None;
    let mut bump = |v: usize| max_vertex = Some(max_vertex.map_or(v, |m: usize| m.max(v)));

    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "schema" => {
                if header.is_some() {
                    return Err(err(no, "second schema header"));
                }
                let [_, name, contract, k, l] = toks.as_slice() else {
                    return Err(err(no, "expected `schema <name> contract=.. k=.. l=..`"));
                };
                let contract = match key_value(no, contract, "contract")? {
                    "Variable" => Contract::Variable,
                    "Clause3SAT" => Contract::Clause3Sat,
                    "ClauseNAE" => Contract::ClauseNae,
                    other => return Err(err(no, format!("unknown contract `{other}`"))),
                };
                let k = number(no, key_value(no, k, "k")?)?;
                let l = number(no, key_value(no, l, "l")?)?;
                header = Some((name.to_string(), contract, k, l));
            }
            "e" => {
                let [_, u, v] = toks.as_slice() else { return Err(err(no, "expected `e <u> <v>`")) };
                let (u, v) = (number(no, u)?, number(no, v)?);
                if u == v {
                    return Err(err(no, format!("self-loop at {u}")));
                }
                bump(u);
                bump(v);
                edges.push(((u, v), no));
            }
            "port" => {
                if toks.len() < 3 || toks.len() > 4 {
                    return Err(err(no, "expected `port <v> role=.. [source]`"));
                }
                let vertex = number(no, toks[1])?;
                let role = match key_value(no, toks[2], "role")? {
                    "U" => Role::U,
                    "N" => Role::N,
                    "Input" => Role::Input,
                    "Internal" => Role::Internal,
                    other => return Err(err(no, format!("unknown role `{other}`"))),
                };
                let source = match toks.get(3) {
                    None => None,
                    Some(t) if t.starts_with("stub=") => Some(PortSource::Stub(parse_stub(no, key_value(no, t, "stub")?)?)),
                    Some(t) if t.starts_with("transmitter=") => Some(PortSource::Transmitter(
                        key_value(no, t, "transmitter")?
                            .parse::<TransmitterSpec>()
                            .map_err(|e| err(no, e.to_string()))?,
                    )),
                    Some(t) => return Err(err(no, format!("unknown port source `{t}`"))),
                };
                bump(vertex);
                ports.push(Port { vertex, role, source });
            }
            other => return Err(err(no, format!("unknown directive `{other}`"))),
        }
    }
    let (name, contract, k, l) = header.ok_or_else(|| err(1, "missing schema header"))?;
    let n = max_vertex.map_or(0, |m| m + 1);
    let mut seen = std::collections::HashSet::new();
    for &((u, v), no) in &edges {
        if !seen.insert(crate::graph::canonical(u, v)) {
            return Err(err(no, format!("duplicate edge ({u}, {v})")));
        }
    }
    let skeleton = Graph::new(n, edges.into_iter().map(|(e, _)| e))?;
    let schema = GadgetSchema { name, contract, k, l, skeleton, ports };
    schema.validate()?;
    Ok(schema)
}

pub fn serialize_schema(s: &GadgetSchema) -> String {
    let mut out = format!("schema {} contract={} k={} l={}\n", s.name, s.contract.name(), s.k, s.l);
    for &(u, v) in s.skeleton.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    for p in &s.ports {
        let role = match p.role {
            Role::U => "U",
            Role::N => "N",
            Role::Input => "Input",
            Role::Internal => "Internal",
        };
        let _ = write!(out, "port {} role={role}", p.vertex);
        match p.source {
            Some(PortSource::Stub(st)) => {
                let _ = write!(out, " stub={st}");
            }
            Some(PortSource::Transmitter(t)) => {
                let _ = write!(out, " transmitter={t}");
            }
            None => {}
        }
        out.push('\n');
    }
    out
}
