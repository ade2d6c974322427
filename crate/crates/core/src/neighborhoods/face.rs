//! Infinite-face membership for rooted trees.
//!
//! Types are truncated: the depth-0 type is trivial and the depth-`j` type of
//! a node maps each depth-`(j-1)` type to the number of children of that type,
//! capped at the threshold `t`. There are `U_j = (t+1)^(U_{j-1})` such types.
//! The depth-1 infinite face is "at least `t` children"; at depth `j` a tree is
//! in the face when every depth-`(j-1)` face type occurs among its children at
//! least `t` times. Face types are those whose count is saturated on every
//! face type one level down, so there are `(t+1)^(U_{j-1} - |S_{j-1}|)` of them.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::multigraph::{RootedSubgraph, RootedTree};

/// Number of truncated types at depth `j` and how many lie in the infinite
/// face, saturating at `u128::MAX`.
pub fn face_class_counts(j: usize, threshold: usize) -> (u128, u128) {
    let base = threshold as u128 + 1;
    let pow = |e: u128| -> u128 {
        let mut acc: u128 = 1;
        for _ in 0..e.min(256) {
            acc = acc.saturating_mul(base);
            if acc == u128::MAX {
                break;
            }
        }
        if base == 1 {
            1
        } else {
            acc
        }
    };
    let (mut universe, mut face) = (1u128, 0u128);
    for level in 1..=j {
        let next_universe = pow(universe);
        face = if level == 1 { 1 } else { pow(universe.saturating_sub(face)) };
        universe = next_universe;
    }
    (universe, face)
}

/// Membership of a rooted ball in the depth-`s` infinite face with threshold `k`.
pub fn infinite_face_member(t: &RootedSubgraph, s: usize, k: usize) -> Result<bool> {
    infinite_face_member_tree(&t.to_rooted_tree()?, s, k)
}

/// Edge multiplicities are ignored: a child is a child.
pub fn infinite_face_member_tree(t: &RootedTree, s: usize, threshold: usize) -> Result<bool> {
    if s == 0 {
        return Err(Error::InvalidParameter("depth must be at least 1".into()));
    }
    let mut memo = Memo::default();
    Ok(member(t, 0, s, threshold, &mut memo))
}

#[derive(Default)]
struct Memo {
    types: BTreeMap<(usize, usize), String>,
    members: BTreeMap<(usize, usize), bool>,
}

fn truncated_type(t: &RootedTree, v: usize, j: usize, cap: usize, memo: &mut Memo) -> String {
    if j == 0 {
        return String::new();
    }
    if let Some(s) = memo.types.get(&(v, j)) {
        return s.clone();
    }
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for &(c, _) in &t.children[v] {
        let ty = truncated_type(t, c, j - 1, cap, memo);
        let e = counts.entry(ty).or_default();
        *e = (*e + 1).min(cap);
    }
    let mut s = String::from("{");
    for (ty, n) in counts {
        s.push_str(&format!("{n}:{ty};"));
    }
    s.push('}');
    memo.types.insert((v, j), s.clone());
    s
}

fn member(t: &RootedTree, v: usize, j: usize, threshold: usize, memo: &mut Memo) -> bool {
    if let Some(&b) = memo.members.get(&(v, j)) {
        return b;
    }
    let kids = &t.children[v];
    let result = if j == 1 {
        kids.len() >= threshold
    } else {
        let (_, needed) = face_class_counts(j - 1, threshold);
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        if (kids.len() as u128) >= needed.saturating_mul(threshold as u128) {
            for &(c, _) in kids {
                if member(t, c, j - 1, threshold, memo) {
                    *counts.entry(truncated_type(t, c, j - 1, threshold, memo)).or_default() += 1;
                }
            }
        }
        let saturated = counts.values().filter(|&&n| n >= threshold).count() as u128;
        saturated >= needed
    };
    memo.members.insert((v, j), result);
    result
}
