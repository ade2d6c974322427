use serde::Serialize;

use crate::error::{Error, Result};

/// Rooted tree with edge multiplicities; node `0` is the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RootedTree {
    /// `children[v]` lists `(child, edge multiplicity)`.
    pub children: Vec<Vec<(usize, u32)>>,
}

impl RootedTree {
    pub fn singleton() -> Self {
        RootedTree { children: vec![Vec::new()] }
    }

    pub fn add_child(&mut self, parent: usize, multiplicity: u32) -> usize {
        let id = self.children.len();
        self.children.push(Vec::new());
        self.children[parent].push((id, multiplicity));
        id
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    /// Orient an undirected local adjacency away from `root`. Fails if the
    /// underlying simple graph has a cycle or is disconnected.
    pub fn from_adjacency(adj: &[Vec<(usize, u32)>], root: usize) -> Result<Self> {
        let mut tree = RootedTree::singleton();
        let mut id_of = vec![usize::MAX; adj.len()];
        id_of[root] = 0;
        let mut stack = vec![(root, usize::MAX)];
        let mut visited = 1;
        while let Some((u, parent)) = stack.pop() {
            for &(w, c) in &adj[u] {
                if w == parent {
                    continue;
                }
                if id_of[w] != usize::MAX {
                    return Err(Error::Cyclic);
                }
                id_of[w] = tree.add_child(id_of[u], c);
                visited += 1;
                stack.push((w, u));
            }
        }
        if visited != adj.len() {
            return Err(Error::InvalidParameter("tree is disconnected".into()));
        }
        Ok(tree)
    }

    /// Height of the tree (0 for a lone root).
    pub fn height(&self) -> usize {
        fn go(t: &RootedTree, v: usize) -> usize {
            t.children[v].iter().map(|&(c, _)| 1 + go(t, c)).max().unwrap_or(0)
        }
        go(self, 0)
    }
}
