//! 2SAT via the implication graph and strongly connected components.

use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, positive: false }
    }

    pub fn negate(self) -> Self {
        Lit { var: self.var, positive: !self.positive }
    }

    fn node(self) -> usize {
        2 * self.var + usize::from(!self.positive)
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }

    fn dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }
}

/// A conjunction of two-literal clauses. A unit clause `x` is stored as
/// `(x ∨ x)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TwoSatFormula {
    num_vars: usize,
    clauses: Vec<(Lit, Lit)>,
}

impl TwoSatFormula {
    pub fn new(num_vars: usize) -> Self {
        TwoSatFormula { num_vars, clauses: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[(Lit, Lit)] {
        &self.clauses
    }

    pub fn add_clause(&mut self, a: Lit, b: Lit) -> Result<()> {
        for lit in [a, b] {
            if lit.var >= self.num_vars {
                return Err(Error::InvalidArgument(format!(
                    "literal references variable {} of {}",
                    lit.var, self.num_vars
                )));
            }
        }
        self.clauses.push((a, b));
        Ok(())
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|&(a, b)| a.eval(assignment) || b.eval(assignment))
    }

    /// DIMACS CNF; variable `i` is written as `i + 1`.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for &(a, b) in &self.clauses {
            if a == b {
                let _ = writeln!(out, "{} 0", a.dimacs());
            } else {
                let _ = writeln!(out, "{} {} 0", a.dimacs(), b.dimacs());
            }
        }
        out
    }
}

/// A satisfying assignment, or `None`. Linear in the formula size.
pub fn solve_2sat(f: &TwoSatFormula) -> Option<Vec<bool>> {
    let nodes = 2 * f.num_vars;
    let mut graph = vec![Vec::new(); nodes];
    for &(a, b) in &f.clauses {
        graph[a.negate().node()].push(b.node());
        graph[b.negate().node()].push(a.node());
    }
    let comp = tarjan(&graph);
    // Tarjan numbers components in reverse topological order, so "x comes
    // after ¬x topologically" reads as comp[x] < comp[¬x].
    (0..f.num_vars)
        .map(|v| {
            let (p, n) = (comp[2 * v], comp[2 * v + 1]);
            (p != n).then_some(p < n)
        })
        .collect()
}

/// Iterative Tarjan; returns the component id of every node.
fn tarjan(graph: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = graph.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut comp = vec![UNSEEN; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut counter = 0;
    let mut comps = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            if *edge == 0 && index[v] == UNSEEN {
                index[v] = counter;
                low[v] = counter;
                counter += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = graph[v].get(*edge) {
                *edge += 1;
                if index[w] == UNSEEN {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                while let Some(w) = stack.pop() {
                    on_stack[w] = false;
                    comp[w] = comps;
                    if w == v {
                        break;
                    }
                }
                comps += 1;
            }
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute(f: &TwoSatFormula) -> bool {
        (0u32..1 << f.num_vars()).any(|mask| {
            let a: Vec<bool> = (0..f.num_vars()).map(|i| mask >> i & 1 == 1).collect();
            f.is_satisfied_by(&a)
        })
    }

    #[test]
    fn small_examples() {
        let mut f = TwoSatFormula::new(2);
        f.add_clause(Lit::pos(0), Lit::pos(1)).unwrap();
        f.add_clause(Lit::neg(0), Lit::pos(1)).unwrap();
        let a = solve_2sat(&f).unwrap();
        assert!(a[1]);
        assert!(f.is_satisfied_by(&a));

        let mut f = TwoSatFormula::new(1);
        f.add_clause(Lit::pos(0), Lit::pos(0)).unwrap();
        f.add_clause(Lit::neg(0), Lit::neg(0)).unwrap();
        assert_eq!(solve_2sat(&f), None);

        assert_eq!(solve_2sat(&TwoSatFormula::new(0)), Some(vec![]));
        assert!(TwoSatFormula::new(1).add_clause(Lit::pos(0), Lit::pos(3)).is_err());
    }

    #[test]
    fn dimacs_output() {
        let mut f = TwoSatFormula::new(2);
        f.add_clause(Lit::neg(0), Lit::pos(1)).unwrap();
        f.add_clause(Lit::pos(1), Lit::pos(1)).unwrap();
        assert_eq!(f.to_dimacs(), "p cnf 2 2\n-1 2 0\n2 0\n");
    }

    #[test]
    fn random_against_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=15);
            let mut f = TwoSatFormula::new(n);
            for _ in 0..rng.gen_range(0..=3 * n) {
                let lit = |rng: &mut ChaCha8Rng| Lit { var: rng.gen_range(0..n), positive: rng.gen() };
                let (a, b) = (lit(&mut rng), lit(&mut rng));
                f.add_clause(a, b).unwrap();
            }
            let got = solve_2sat(&f);
            assert_eq!(got.is_some(), brute(&f));
            if let Some(a) = got {
                assert!(f.is_satisfied_by(&a));
            }
        }
    }
}
