//! Ehrenfeucht-Fraïssé games on finite multigraphs.
//!
//! Positions are sets of chosen pairs; Spoiler never benefits from picking a
//! vertex that is already in play, so such moves are not explored.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::multigraph::{Multigraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// Spoiler's winning strategy: a move, and for every Duplicator reply that
/// keeps the position a partial isomorphism, the continuation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub side: Side,
    pub vertex: Vertex,
    pub replies: Vec<Reply>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reply {
    pub vertex: Vertex,
    /// `None` when the reply already breaks the partial isomorphism.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub next: Option<Box<Witness>>,
}

impl Witness {
    /// Spoiler's moves along the first surviving reply at every level.
    pub fn principal_line(&self) -> Vec<(Side, Vertex)> {
        let mut out = vec![(self.side, self.vertex)];
        let mut node = self;
        while let Some(next) = node.replies.iter().find_map(|r| r.next.as_deref()) {
            out.push((next.side, next.vertex));
            node = next;
        }
        out
    }

    pub fn depth(&self) -> usize {
        1 + self.replies.iter().filter_map(|r| r.next.as_deref()).map(Witness::depth).max().unwrap_or(0)
    }
}

/// Dense multiplicity lookup for small graphs.
struct Structure<'g> {
    g: &'g Multigraph,
    dense: Option<Vec<u32>>,
    degree: Vec<usize>,
}

const DENSE_MAX: usize = 2048;

impl<'g> Structure<'g> {
    fn new(g: &'g Multigraph) -> Self {
        let n = g.n();
        let dense = (n <= DENSE_MAX).then(|| {
            let mut d = vec![0u32; n * n];
            for (u, v, mult) in g.edges() {
                d[(u - 1) * n + (v - 1)] = mult;
                d[(v - 1) * n + (u - 1)] = mult;
            }
            d
        });
        let degree = std::iter::once(0).chain(g.vertices().map(|v| g.deg(v))).collect();
        Structure { g, dense, degree }
    }

    #[inline]
    fn mult(&self, u: Vertex, v: Vertex) -> u32 {
        match &self.dense {
            Some(d) => d[(u - 1) * self.g.n() + (v - 1)],
            None => self.g.multiplicity(u, v),
        }
    }

    fn n(&self) -> usize {
        self.g.n()
    }
}

/// True iff `a_i ↦ b_i` is a well-defined injective map preserving
/// equality and exact edge multiplicities in both directions.
pub fn partial_isomorphism_check(a: &Multigraph, b: &Multigraph, pairs: &[(Vertex, Vertex)]) -> bool {
    let in_range = |g: &Multigraph, v: Vertex| (1..=g.n()).contains(&v);
    if !pairs.iter().all(|&(x, y)| in_range(a, x) && in_range(b, y)) {
        return false;
    }
    for (i, &(x1, y1)) in pairs.iter().enumerate() {
        for &(x2, y2) in &pairs[i..] {
            if (x1 == x2) != (y1 == y2) || a.multiplicity(x1, x2) != b.multiplicity(y1, y2) {
                return false;
            }
        }
    }
    true
}

struct Game<'g> {
    a: Structure<'g>,
    b: Structure<'g>,
    memo: HashMap<(Vec<(Vertex, Vertex)>, usize), bool>,
}

impl<'g> Game<'g> {
    fn new(a: &'g Multigraph, b: &'g Multigraph) -> Self {
        Game { a: Structure::new(a), b: Structure::new(b), memo: HashMap::new() }
    }

    fn side(&self, s: Side) -> &Structure<'g> {
        match s {
            Side::A => &self.a,
            Side::B => &self.b,
        }
    }

    /// Whether `(x on side, y on the other side)` extends the partial isomorphism.
    fn extends(&self, pairs: &[(Vertex, Vertex)], side: Side, x: Vertex, y: Vertex) -> bool {
        let (xa, yb) = match side {
            Side::A => (x, y),
            Side::B => (y, x),
        };
        pairs.iter().all(|&(pa, pb)| (pa == xa) == (pb == yb) && self.a.mult(pa, xa) == self.b.mult(pb, yb))
    }

    fn chosen(pairs: &[(Vertex, Vertex)], side: Side, v: Vertex) -> bool {
        pairs.iter().any(|&(pa, pb)| v == if side == Side::A { pa } else { pb })
    }

    fn push(pairs: &[(Vertex, Vertex)], side: Side, x: Vertex, y: Vertex) -> Vec<(Vertex, Vertex)> {
        let mut next = pairs.to_vec();
        next.push(if side == Side::A { (x, y) } else { (y, x) });
        next.sort_unstable();
        next
    }

    /// Duplicator replies worth trying, most similar degree first.
    fn replies(&self, pairs: &[(Vertex, Vertex)], side: Side, x: Vertex) -> Vec<Vertex> {
        let other = side.other();
        let dx = self.side(side).degree[x];
        let target = self.side(other);
        let mut ys: Vec<Vertex> = (1..=target.n())
            .filter(|&y| !Self::chosen(pairs, other, y) && self.extends(pairs, side, x, y))
            .collect();
        ys.sort_by_key(|&y| (target.degree[y].abs_diff(dx), y));
        ys
    }

    fn spoiler_moves(&self, pairs: &[(Vertex, Vertex)]) -> Vec<(Side, Vertex)> {
        let mut out = Vec::new();
        for side in [Side::A, Side::B] {
            for v in 1..=self.side(side).n() {
                if !Self::chosen(pairs, side, v) {
                    out.push((side, v));
                }
            }
        }
        out
    }

    /// Duplicator wins from `pairs` (already a partial isomorphism) with `rounds` to go.
    fn duplicator_wins(&mut self, pairs: &[(Vertex, Vertex)], rounds: usize) -> bool {
        if rounds == 0 {
            return true;
        }
        let key = (pairs.to_vec(), rounds);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let win = self.spoiler_moves(pairs).into_iter().all(|(side, x)| self.answerable(pairs, rounds, side, x));
        self.memo.insert(key, win);
        win
    }

    fn answerable(&mut self, pairs: &[(Vertex, Vertex)], rounds: usize, side: Side, x: Vertex) -> bool {
        self.replies(pairs, side, x)
            .into_iter()
            .any(|y| self.duplicator_wins(&Self::push(pairs, side, x, y), rounds - 1))
    }

    fn witness(&mut self, pairs: &[(Vertex, Vertex)], rounds: usize) -> Option<Witness> {
        if rounds == 0 {
            return None;
        }
        for (side, x) in self.spoiler_moves(pairs) {
            if self.answerable(pairs, rounds, side, x) {
                continue;
            }
            let other = side.other();
            let mut replies = Vec::new();
            for y in 1..=self.side(other).n() {
                let next = if !Self::chosen(pairs, other, y) && self.extends(pairs, side, x, y) {
                    let w = self.witness(&Self::push(pairs, side, x, y), rounds - 1);
                    Some(Box::new(w.expect("losing positions have a witness")))
                } else {
                    None
                };
                replies.push(Reply { vertex: y, next });
            }
            return Some(Witness { side, vertex: x, replies });
        }
        None
    }
}

const PARALLEL_MIN_MOVES: usize = 16;

/// `A ≡_k B`: Duplicator wins the `k`-round game. `k = 0` is always true.
pub fn equivalent_k(a: &Multigraph, b: &Multigraph, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    let game = Game::new(a, b);
    let first = game.spoiler_moves(&[]);
    if k < 3 || first.len() < PARALLEL_MIN_MOVES {
        let mut game = game;
        return game.duplicator_wins(&[], k);
    }
    first.par_iter().all(|&(side, x)| Game::new(a, b).answerable(&[], k, side, x))
}

/// A Spoiler strategy tree winning the `k`-round game, or `None` if `A ≡_k B`.
pub fn spoiler_witness(a: &Multigraph, b: &Multigraph, k: usize) -> Option<Witness> {
    Game::new(a, b).witness(&[], k)
}

/// Replay `w` against every possible Duplicator reply, independently of the
/// search that produced it.
pub fn verify_witness(a: &Multigraph, b: &Multigraph, k: usize, w: &Witness) -> bool {
    fn go(a: &Multigraph, b: &Multigraph, pairs: &mut Vec<(Vertex, Vertex)>, rounds: usize, w: &Witness) -> bool {
        if rounds == 0 {
            return false;
        }
        let (mover, other) = match w.side {
            Side::A => (a, b),
            Side::B => (b, a),
        };
        if !(1..=mover.n()).contains(&w.vertex) {
            return false;
        }
        for y in 1..=other.n() {
            pairs.push(if w.side == Side::A { (w.vertex, y) } else { (y, w.vertex) });
            let ok = if !partial_isomorphism_check(a, b, pairs) {
                true
            } else {
                match w.replies.iter().find(|r| r.vertex == y).and_then(|r| r.next.as_deref()) {
                    Some(next) => go(a, b, pairs, rounds - 1, next),
                    None => false,
                }
            };
            pairs.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    go(a, b, &mut Vec::new(), k, w)
}
