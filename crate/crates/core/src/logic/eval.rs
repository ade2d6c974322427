//! Model checking by backtracking over vertex assignments.
//!
//! A formula is compiled once into a flat arena where every variable
//! occurrence is resolved to a slot (its binder's nesting depth, after the
//! free variables). Quantifiers whose body is guarded by an adjacency or
//! equality atom against an already bound slot iterate over that slot's
//! neighbours only, which turns most local sentences from `n^k` into
//! `n * Δ^(k-1)` work. Quantifier results are memoised on the values of the
//! slots they actually read.

use std::collections::HashMap;

use super::ast::{Formula, Sentence};
use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, Vertex};

type NodeId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Quant {
    Forall,
    Exists,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Guard {
    /// Candidates are the neighbours of `slot` joined by at least `j` edges.
    Adj { slot: usize, j: u32 },
    /// The only candidate is the value of `slot`.
    Eq { slot: usize },
}

#[derive(Clone, Debug)]
enum Node {
    Eq(usize, usize),
    Adj(usize, usize, u32),
    Not(NodeId),
    And(NodeId, NodeId),
    Or(NodeId, NodeId),
    Implies(NodeId, NodeId),
    Iff(NodeId, NodeId),
    Quant { q: Quant, slot: usize, body: NodeId, guard: Option<Guard> },
}

/// Compiled formula, reusable across graphs.
#[derive(Clone, Debug)]
pub struct Evaluator {
    nodes: Vec<Node>,
    /// Sorted slots each node reads.
    reads: Vec<Vec<usize>>,
    root: NodeId,
    free: Vec<String>,
    slots: usize,
}

struct Compiler {
    nodes: Vec<Node>,
    reads: Vec<Vec<usize>>,
    scope: Vec<String>,
    max_slots: usize,
}

impl Compiler {
    fn push(&mut self, node: Node, reads: Vec<usize>) -> NodeId {
        self.nodes.push(node);
        self.reads.push(reads);
        (self.nodes.len() - 1) as NodeId
    }

    fn slot(&self, v: &str) -> usize {
        self.scope.iter().rposition(|s| s == v).expect("free variables are pre-bound")
    }

    fn union(&self, a: NodeId, b: NodeId) -> Vec<usize> {
        let mut r = self.reads[a as usize].clone();
        r.extend_from_slice(&self.reads[b as usize]);
        r.sort_unstable();
        r.dedup();
        r
    }

    fn compile(&mut self, f: &Formula) -> NodeId {
        match f {
            Formula::Eq(a, b) => {
                let (a, b) = (self.slot(a), self.slot(b));
                self.push(Node::Eq(a, b), sorted_pair(a, b))
            }
            Formula::Adj(a, b, j) => {
                let (a, b) = (self.slot(a), self.slot(b));
                self.push(Node::Adj(a, b, *j), sorted_pair(a, b))
            }
            Formula::Not(x) => {
                let x = self.compile(x);
                let r = self.reads[x as usize].clone();
                self.push(Node::Not(x), r)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                let (a, b) = (self.compile(a), self.compile(b));
                let r = self.union(a, b);
                let node = match f {
                    Formula::And(..) => Node::And(a, b),
                    Formula::Or(..) => Node::Or(a, b),
                    Formula::Implies(..) => Node::Implies(a, b),
                    _ => Node::Iff(a, b),
                };
                self.push(node, r)
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let q = if matches!(f, Formula::Forall(..)) { Quant::Forall } else { Quant::Exists };
                let slot = self.scope.len();
                self.scope.push(v.clone());
                self.max_slots = self.max_slots.max(self.scope.len());
                let b = self.compile(body);
                self.scope.pop();
                let guard = self.find_guard(q, slot, b);
                let r: Vec<usize> = self.reads[b as usize].iter().copied().filter(|&s| s != slot).collect();
                self.push(Node::Quant { q, slot, body: b, guard }, r)
            }
        }
    }

    /// `exists y. (.. & adj(x, y) & ..)` and `forall y. (.. & adj(x, y) & .. -> ψ)`.
    fn find_guard(&self, q: Quant, slot: usize, body: NodeId) -> Option<Guard> {
        let conj = match (q, &self.nodes[body as usize]) {
            (Quant::Exists, _) => body,
            (Quant::Forall, Node::Implies(a, _)) => *a,
            _ => return None,
        };
        let mut best = None;
        self.scan_conjuncts(conj, slot, &mut best);
        best
    }

    fn scan_conjuncts(&self, id: NodeId, slot: usize, best: &mut Option<Guard>) {
        match self.nodes[id as usize] {
            Node::And(a, b) => {
                self.scan_conjuncts(a, slot, best);
                self.scan_conjuncts(b, slot, best);
            }
            Node::Eq(a, b) if bound_other(a, b, slot).is_some() => {
                *best = Some(Guard::Eq { slot: bound_other(a, b, slot).unwrap() });
            }
            Node::Adj(a, b, j) if bound_other(a, b, slot).is_some() => {
                if !matches!(best, Some(Guard::Eq { .. })) {
                    let other = bound_other(a, b, slot).unwrap();
                    let better = match best {
                        Some(Guard::Adj { j: old, .. }) => j > *old,
                        _ => true,
                    };
                    if better {
                        *best = Some(Guard::Adj { slot: other, j });
                    }
                }
            }
            _ => {}
        }
    }
}

/// The partner of `slot` in an atom, provided it is bound outside the quantifier.
fn bound_other(a: usize, b: usize, slot: usize) -> Option<usize> {
    match (a == slot, b == slot) {
        (true, false) if b < slot => Some(b),
        (false, true) if a < slot => Some(a),
        _ => None,
    }
}

fn sorted_pair(a: usize, b: usize) -> Vec<usize> {
    if a == b {
        vec![a]
    } else {
        vec![a.min(b), a.max(b)]
    }
}

const MEMO_MAX_N: usize = 1023;
const MEMO_BITS: usize = 10;
const MEMO_MAX_READS: usize = 6;

struct Run<'g> {
    g: &'g Multigraph,
    env: Vec<Vertex>,
    memo: Option<HashMap<(NodeId, u64), bool>>,
}

impl Evaluator {
    /// Compile `f`. Free variables become parameters in sorted order.
    pub fn new(f: &Formula) -> Self {
        let free: Vec<String> = f.free_vars().into_iter().collect();
        let mut c = Compiler { nodes: Vec::new(), reads: Vec::new(), scope: free.clone(), max_slots: free.len() };
        let root = c.compile(f);
        Evaluator { nodes: c.nodes, reads: c.reads, root, free, slots: c.max_slots }
    }

    pub fn free_vars(&self) -> &[String] {
        &self.free
    }

    /// Evaluate with the free variables bound in the order of [`Evaluator::free_vars`].
    pub fn run(&self, g: &Multigraph, args: &[Vertex]) -> Result<bool> {
        if args.len() != self.free.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} free-variable values, got {}",
                self.free.len(),
                args.len()
            )));
        }
        for &v in args {
            g.check_vertex(v)?;
        }
        let mut env = vec![0; self.slots];
        env[..args.len()].copy_from_slice(args);
        let memo = (g.n() <= MEMO_MAX_N).then(HashMap::new);
        let mut run = Run { g, env, memo };
        Ok(self.eval(&mut run, self.root))
    }

    fn memo_key(&self, run: &Run<'_>, id: NodeId) -> Option<u64> {
        let reads = &self.reads[id as usize];
        if run.memo.is_none() || reads.len() > MEMO_MAX_READS {
            return None;
        }
        Some(reads.iter().fold(0u64, |acc, &s| (acc << MEMO_BITS) | run.env[s] as u64))
    }

    fn eval(&self, run: &mut Run<'_>, id: NodeId) -> bool {
        match self.nodes[id as usize] {
            Node::Eq(a, b) => run.env[a] == run.env[b],
            Node::Adj(a, b, j) => run.g.multiplicity(run.env[a], run.env[b]) >= j,
            Node::Not(x) => !self.eval(run, x),
            Node::And(a, b) => self.eval(run, a) && self.eval(run, b),
            Node::Or(a, b) => self.eval(run, a) || self.eval(run, b),
            Node::Implies(a, b) => !self.eval(run, a) || self.eval(run, b),
            Node::Iff(a, b) => self.eval(run, a) == self.eval(run, b),
            Node::Quant { q, slot, body, guard } => {
                let key = self.memo_key(run, id);
                if let (Some(k), Some(memo)) = (key, run.memo.as_ref()) {
                    if let Some(&hit) = memo.get(&(id, k)) {
                        return hit;
                    }
                }
                let want = q == Quant::Exists;
                let mut found = !want;
                let mut test = |run: &mut Run<'_>, v: Vertex| -> bool {
                    run.env[slot] = v;
                    if self.eval(run, body) == want {
                        found = want;
                        true
                    } else {
                        false
                    }
                };
                match guard {
                    Some(Guard::Eq { slot: s }) => {
                        let v = run.env[s];
                        test(run, v);
                    }
                    Some(Guard::Adj { slot: s, j }) => {
                        let g = run.g;
                        for &(w, mult) in g.neighbors(run.env[s]) {
                            if mult >= j && test(run, w) {
                                break;
                            }
                        }
                    }
                    None => {
                        for v in run.g.vertices() {
                            if test(run, v) {
                                break;
                            }
                        }
                    }
                }
                if let (Some(k), Some(memo)) = (key, run.memo.as_mut()) {
                    memo.insert((id, k), found);
                }
                found
            }
        }
    }
}

/// Truth value of a sentence in `g`.
pub fn evaluate(g: &Multigraph, s: &Sentence) -> bool {
    Evaluator::new(s.formula()).run(g, &[]).expect("sentences have no free variables")
}

/// Truth value of `f` under an assignment of its free variables.
pub fn evaluate_formula(g: &Multigraph, f: &Formula, assignment: &[(&str, Vertex)]) -> Result<bool> {
    let ev = Evaluator::new(f);
    let mut args = Vec::with_capacity(ev.free.len());
    for name in &ev.free {
        match assignment.iter().find(|(k, _)| k == name) {
            Some(&(_, v)) => args.push(v),
            None => return Err(Error::InvalidParameter(format!("no value for free variable `{name}`"))),
        }
    }
    ev.run(g, &args)
}

/// Rough upper bound on atom evaluations for a graph with `n` vertices and
/// mean degree `mean_degree`, ignoring memoisation and short-circuiting.
pub fn estimate_cost(f: &Formula, n: usize, mean_degree: f64) -> f64 {
    let ev = Evaluator::new(f);
    let dom = n as f64;
    let deg = mean_degree.max(1.0).min(dom.max(1.0));
    fn go(ev: &Evaluator, id: NodeId, dom: f64, deg: f64) -> f64 {
        match ev.nodes[id as usize] {
            Node::Eq(..) | Node::Adj(..) => 1.0,
            Node::Not(x) => 1.0 + go(ev, x, dom, deg),
            Node::And(a, b) | Node::Or(a, b) | Node::Implies(a, b) | Node::Iff(a, b) => {
                1.0 + go(ev, a, dom, deg) + go(ev, b, dom, deg)
            }
            Node::Quant { body, guard, .. } => {
                let width = match guard {
                    None => dom,
                    Some(Guard::Adj { .. }) => deg,
                    Some(Guard::Eq { .. }) => 1.0,
                };
                1.0 + width * go(ev, body, dom, deg)
            }
        }
    }
    go(&ev, ev.root, dom, deg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse, parse_formula};

    fn k(n: usize) -> Multigraph {
        let mut e = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                e.push((a, b));
            }
        }
        Multigraph::simple(n, &e).unwrap()
    }

    fn holds(g: &Multigraph, s: &str) -> bool {
        evaluate(g, &parse(s).unwrap())
    }

    #[test]
    fn complete_graph_sentence() {
        assert!(holds(&k(3), "forall v. forall u. (!(u=v) -> adj(u,v))"));
        let p3 = Multigraph::simple(3, &[(1, 2), (2, 3)]).unwrap();
        assert!(!holds(&p3, "forall v. forall u. (!(u=v) -> adj(u,v))"));
    }

    #[test]
    fn single_vertex() {
        assert!(holds(&Multigraph::simple(1, &[]).unwrap(), "exists x. x = x"));
    }

    #[test]
    fn path_has_no_triangle() {
        let p3 = Multigraph::simple(3, &[(1, 2), (2, 3)]).unwrap();
        let tri = "exists x. exists y. exists z. (adj(x,y) & adj(y,z) & adj(x,z))";
        assert!(!holds(&p3, tri));
        assert!(holds(&k(3), tri));
    }

    #[test]
    fn multiplicities() {
        let g = Multigraph::from_edges(2, 2, crate::multigraph::GraphMeta::custom(), [(1, 2, 2)]).unwrap();
        assert!(holds(&g, "exists x. exists y. adj2(x, y)"));
        assert!(!holds(&g, "exists x. exists y. adjk(x, y, 3)"));
        assert!(holds(&g, "forall u. forall v. (adj(u, v) <-> adj(v, u))"));
    }

    #[test]
    fn shadowing_and_free_variables() {
        let p3 = Multigraph::simple(3, &[(1, 2), (2, 3)]).unwrap();
        let f = parse_formula("exists y. (adj(x, y) & exists x. (adj(y, x) & !(x = y)))").unwrap();
        assert!(evaluate_formula(&p3, &f, &[("x", 1)]).unwrap());
        let deg2 = parse_formula("exists a. exists b. (!(a = b) & adj(x, a) & adj(x, b))").unwrap();
        assert!(!evaluate_formula(&p3, &deg2, &[("x", 1)]).unwrap());
        assert!(evaluate_formula(&p3, &deg2, &[("x", 2)]).unwrap());
        assert!(evaluate_formula(&p3, &deg2, &[]).is_err());
        assert!(evaluate_formula(&p3, &deg2, &[("x", 9)]).is_err());
    }

    #[test]
    fn guards_do_not_change_truth() {
        let g = Multigraph::simple(5, &[(1, 2), (2, 3), (3, 4), (1, 3)]).unwrap();
        let pairs = [
            ("forall x. forall y. (adj(x, y) -> exists z. (adj(y, z) & !(z = x)))", false),
            ("forall x. exists y. (x = y & adj(x, y))", false),
            ("exists x. forall y. (adj(x, y) -> adj(y, x))", true),
            ("forall x. forall y. (x = y -> !adj(x, y))", true),
            ("exists x. forall y. !adj(x, y)", true),
        ];
        for (s, want) in pairs {
            assert_eq!(holds(&g, s), want, "{s}");
        }
    }

    #[test]
    fn cost_estimates() {
        let f = parse("forall x. exists y. adj(x, y)").unwrap().into_formula();
        let c = estimate_cost(&f, 1000, 4.0);
        assert!(c > 4000.0 && c < 20_000.0);
        let g = parse("forall x. forall y. forall z. x = z").unwrap().into_formula();
        assert!(estimate_cost(&g, 1000, 4.0) > 1e9);
    }
}
