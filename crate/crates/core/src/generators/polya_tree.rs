//! The Pólya-point tree, the local weak limit of the attachment graphs.
//!
//! A node at position `x` has older neighbours uniform on `[0, x]` and younger
//! neighbours from a Poisson process on `[x, 1]` with intensity
//! `γ ψ x^{-ψ} y^{ψ-1}`, `ψ = (1-χ)/χ`, `γ ~ Gamma(m + 1_{left}, 1)`.
//! In the uniform case (`χ = 1`) the younger neighbours form a Poisson process
//! of intensity `m/y`, i.e. `Λ(a, b) = m log(b/a)`.
//!
//! A right (younger) child already counts its parent among its `m` older
//! neighbours and therefore receives `m - 1` new left children.

use rand::Rng as _;
use rand_distr::{Distribution, Gamma, Poisson};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multigraph::RootedTree;
use crate::rng::{rng_from_seed, Rng};
use crate::Constants;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeTag {
    Root,
    /// Older neighbour, uniform below the parent.
    Left,
    /// Younger neighbour from the Poisson process above the parent.
    Right,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolyaNode {
    pub position: f64,
    pub tag: NodeTag,
    /// Height string `a_1 … a_s`; indices `≤ m` are left children.
    pub height: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    pub children: Vec<PolyaNode>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolyaPointTree {
    pub m: usize,
    pub chi: f64,
    pub depth: usize,
    pub root: PolyaNode,
}

impl PolyaPointTree {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.root)?)
    }

    pub fn to_rooted_tree(&self) -> RootedTree {
        fn go(node: &PolyaNode, id: usize, t: &mut RootedTree) {
            for c in &node.children {
                let cid = t.add_child(id, 1);
                go(c, cid, t);
            }
        }
        let mut t = RootedTree::singleton();
        go(&self.root, 0, &mut t);
        t
    }

    pub fn size(&self) -> usize {
        fn go(n: &PolyaNode) -> usize {
            1 + n.children.iter().map(go).sum::<usize>()
        }
        go(&self.root)
    }
}

/// Sample the tree to depth `r`. The root sits at `x0` when given, otherwise
/// at `X_0 = Y^χ` with `Y` uniform.
pub fn sample_polya_point_tree(
    constants: &Constants,
    m: usize,
    r: usize,
    x0: Option<f64>,
    seed: u64,
) -> Result<PolyaPointTree> {
    let mut rng = rng_from_seed(seed);
    sample_with_rng(constants, m, r, x0, &mut rng)
}

pub(crate) fn sample_with_rng(
    constants: &Constants,
    m: usize,
    r: usize,
    x0: Option<f64>,
    rng: &mut Rng,
) -> Result<PolyaPointTree> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be >= 1".into()));
    }
    let chi = constants.chi;
    let position = match x0 {
        Some(x) if x > 0.0 && x <= 1.0 => x,
        Some(x) => return Err(Error::InvalidParameter(format!("root position must lie in (0, 1], got {x}"))),
        None => (1.0 - rng.random::<f64>()).powf(chi),
    };
    let mut root = PolyaNode { position, tag: NodeTag::Root, height: Vec::new(), gamma: None, children: Vec::new() };
    expand(&mut root, constants, m, r, rng)?;
    Ok(PolyaPointTree { m, chi, depth: r, root })
}

fn expand(node: &mut PolyaNode, constants: &Constants, m: usize, remaining: usize, rng: &mut Rng) -> Result<()> {
    if remaining == 0 {
        return Ok(());
    }
    let x = node.position;
    let lefts = if node.tag == NodeTag::Right { m - 1 } else { m };
    for i in 0..lefts {
        let mut height = node.height.clone();
        height.push(i as u32 + 1);
        node.children.push(PolyaNode {
            position: x * rng.random::<f64>(),
            tag: NodeTag::Left,
            height,
            gamma: None,
            children: Vec::new(),
        });
    }

    let mut rights: Vec<f64> = if constants.is_uniform() {
        let mass = m as f64 * (1.0 / x).ln();
        let count = poisson(mass, rng)?;
        (0..count).map(|_| x.powf(1.0 - rng.random::<f64>())).collect()
    } else {
        let shape = m as f64 + if node.tag == NodeTag::Left { 1.0 } else { 0.0 };
        let gamma = Gamma::new(shape, 1.0)
            .map_err(|e| Error::InvalidParameter(format!("gamma({shape}): {e}")))?
            .sample(rng);
        node.gamma = Some(gamma);
        let psi = constants.intensity_exponent();
        let low = x.powf(psi);
        let mass = gamma * (x.powf(-psi) - 1.0);
        let count = poisson(mass, rng)?;
        (0..count)
            .map(|_| (low + rng.random::<f64>() * (1.0 - low)).powf(1.0 / psi).clamp(x, 1.0))
            .collect()
    };
    rights.sort_by(f64::total_cmp);
    for (j, y) in rights.into_iter().enumerate() {
        let mut height = node.height.clone();
        height.push((m + 1 + j) as u32);
        node.children.push(PolyaNode { position: y, tag: NodeTag::Right, height, gamma: None, children: Vec::new() });
    }
    for child in &mut node.children {
        expand(child, constants, m, remaining - 1, rng)?;
    }
    Ok(())
}

fn poisson(mean: f64, rng: &mut Rng) -> Result<usize> {
    if !(mean > 0.0) {
        return Ok(0);
    }
    let d = Poisson::new(mean).map_err(|e| Error::InvalidParameter(format!("poisson({mean}): {e}")))?;
    Ok(d.sample(rng) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::model_constants;

    fn check_positions(n: &PolyaNode) {
        for c in &n.children {
            match c.tag {
                NodeTag::Left => assert!(c.position < n.position || n.position == 0.0),
                NodeTag::Right => assert!(c.position >= n.position && c.position <= 1.0),
                NodeTag::Root => panic!("root below root"),
            }
            check_positions(c);
        }
    }

    #[test]
    fn depth_zero_is_root() {
        let c = model_constants(0.0).unwrap();
        let t = sample_polya_point_tree(&c, 2, 0, Some(0.3), 1).unwrap();
        assert_eq!(t.size(), 1);
        assert_eq!(t.root.position, 0.3);
    }

    #[test]
    fn zero_root_rejected() {
        let c = model_constants(0.0).unwrap();
        assert!(sample_polya_point_tree(&c, 2, 1, Some(0.0), 1).is_err());
    }

    #[test]
    fn structure_invariants() {
        for alpha in [0.0, 0.5, 1.0] {
            let c = model_constants(alpha).unwrap();
            for seed in 0..50 {
                let t = sample_polya_point_tree(&c, 3, 2, None, seed).unwrap();
                check_positions(&t.root);
                let lefts = |n: &PolyaNode| n.children.iter().filter(|c| c.tag == NodeTag::Left).count();
                assert_eq!(lefts(&t.root), 3);
                for ch in &t.root.children {
                    let want = if ch.tag == NodeTag::Right { 2 } else { 3 };
                    assert_eq!(lefts(ch), want);
                }
            }
        }
    }

    #[test]
    fn json_shape() {
        let c = model_constants(0.0).unwrap();
        let t = sample_polya_point_tree(&c, 1, 1, Some(0.5), 3).unwrap();
        let v: serde_json::Value = serde_json::from_str(&t.to_json().unwrap()).unwrap();
        assert_eq!(v["tag"], "root");
        assert_eq!(v["position"], 0.5);
        assert!(v["children"].is_array());
    }
}
