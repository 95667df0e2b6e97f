//! Generated gadget schemas.
//!
//! These are reconstructions checked only through `verify_gadget`. The
//! shipped `.schema` files under `schemas/` are their serialized output.

use super::{Contract, GadgetSchema, Port, PortSource, Role, StubColor, StubSpec};
use crate::error::{Error, Result};
use crate::graph::{Color, Graph};

struct Builder {
    n: usize,
    edges: Vec<(usize, usize)>,
    ports: Vec<Port>,
}

impl Builder {
    fn new() -> Self {
        Builder { n: 0, edges: Vec::new(), ports: Vec::new() }
    }

    fn vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    fn port(&mut self, vertex: usize, role: Role) {
        self.ports.push(Port { vertex, role, source: None });
    }

    /// Stubs of length 1 are no stub at all.
    fn stub(&mut self, vertex: usize, color: StubColor, path_len: usize) {
        if path_len >= 2 {
            let source = Some(PortSource::Stub(StubSpec { color, path_len }));
            self.ports.push(Port { vertex, role: Role::Internal, source });
        }
    }

    fn finish(self, name: String, contract: Contract, k: usize, l: usize) -> Result<GadgetSchema> {
        let skeleton = Graph::new(self.n, self.edges)?;
        let s = GadgetSchema { name, contract, k, l, skeleton, ports: self.ports };
        s.validate()?;
        Ok(s)
    }
}

/// Variable gadget with outputs `U, U, N, N` for `4 <= k < l`, or four `U`
/// outputs for `k = l >= 4`.
///
/// For `k < l` a free edge `(a, b)` picks the value: `a` carries a red
/// `P_{k-2}` and a blue `P_{l-2}`, so `b` is saturated in the edge's color
/// and every other edge at `b` takes the opposite color. Each vertex below
/// `b` is saturated in turn, alternating color per level, and each output
/// hangs off its own hub whose parent edge always has the other color.
pub fn variable_schema(k: usize, l: usize) -> Result<GadgetSchema> {
    if k < 4 || k > l {
        return Err(Error::InvalidArgument(format!("no variable gadget for ({k}, {l})")));
    }
    let mut b = Builder::new();
    if k == l {
        // Two symmetric sources at v must differ in color, else a path of
        // 2k - 4 vertices appears.
        let v = b.vertex();
        b.stub(v, StubColor::Either, k - 1);
        b.stub(v, StubColor::Either, k - 2);
        for _ in 0..4 {
            let out = b.vertex();
            b.edge(v, out);
            b.port(out, Role::U);
        }
        return b.finish(format!("variable_k{k}_l{l}"), Contract::Variable, k, l);
    }
    let relay_helper = |b: &mut Builder, at: usize| {
        let t = b.vertex();
        b.edge(at, t);
        b.stub(t, StubColor::Red, k - 3);
        b.stub(t, StubColor::Blue, l - 3);
    };
    let hub = |b: &mut Builder, parent: usize, role: Role| {
        let h = b.vertex();
        let w = b.vertex();
        let out = b.vertex();
        b.edge(parent, h);
        b.edge(h, w);
        b.edge(h, out);
        b.stub(w, StubColor::Red, k - 3);
        b.port(out, role);
    };
    let a = b.vertex();
    let root = b.vertex();
    b.edge(a, root);
    b.stub(a, StubColor::Red, k - 2);
    b.stub(a, StubColor::Blue, l - 2);
    relay_helper(&mut b, root);
    let relay = b.vertex();
    b.edge(root, relay);
    relay_helper(&mut b, relay);
    hub(&mut b, relay, Role::U);
    hub(&mut b, relay, Role::U);
    hub(&mut b, root, Role::N);
    hub(&mut b, root, Role::N);
    b.finish(format!("variable_k{k}_l{l}"), Contract::Variable, k, l)
}

/// Clause gadget: the path `i1 m1 i2 m2 i3` through the three inputs, with a
/// tail of `a` vertices hung on `i1` and one of `b` vertices on `i3`,
/// `a + b = l - 5`. Three false inputs force the path and tails blue, giving
/// a blue `P_l`. Clause3SAT for `4 <= k < l`; ClauseNAE for `k = l >= 5`,
/// where the tails also carry red so that three true inputs fail too.
pub fn clause_schema(k: usize, l: usize) -> Result<GadgetSchema> {
    let contract = match (k, l) {
        (k, l) if 4 <= k && k < l => Contract::Clause3Sat,
        (k, l) if k == l && k >= 5 => Contract::ClauseNae,
        _ => return Err(Error::InvalidArgument(format!("no clause gadget for ({k}, {l})"))),
    };
    let mut b = Builder::new();
    let path: Vec<usize> = (0..5).map(|_| b.vertex()).collect();
    for w in path.windows(2) {
        b.edge(w[0], w[1]);
    }
    for &i in &[path[0], path[2], path[4]] {
        b.port(i, Role::Input);
    }
    let extra = l - 5;
    for (end, len) in [(path[0], extra.div_ceil(2)), (path[4], extra / 2)] {
        if len > 0 {
            let w = b.vertex();
            b.edge(end, w);
            b.stub(w, StubColor::Blue, len);
            if contract == Contract::ClauseNae {
                b.stub(w, StubColor::Red, len);
            }
        }
    }
    b.finish(format!("clause_k{k}_l{l}"), contract, k, l)
}

/// The four-cycle clause skeleton with forced red `P_{k-1}` inputs, `k = l = 4`.
pub fn c4_clause_schema() -> Result<GadgetSchema> {
    let mut b = Builder::new();
    let c: Vec<usize> = (0..4).map(|_| b.vertex()).collect();
    for i in 0..4 {
        b.edge(c[i], c[(i + 1) % 4]);
    }
    for &v in &c[..3] {
        b.ports.push(Port {
            vertex: v,
            role: Role::Input,
            source: Some(PortSource::Stub(StubSpec { color: Color::Red.into(), path_len: 3 })),
        });
    }
    b.finish("c4".into(), Contract::ClauseNae, 4, 4)
}
