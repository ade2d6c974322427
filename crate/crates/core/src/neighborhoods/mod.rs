//! Canonical codes, cycle components and the cycle profile, the infinite
//! face classifier and the acyclic-ball census.

mod canon;
mod census;
mod components;
mod face;

pub use canon::{
    canonical_ball, canonical_distance_labelled, canonical_labelled_graph, canonical_rooted_tree, tree_code,
    CanonicalCode,
};
pub use census::{acyclic_class_census, near_short_cycles, Census};
pub use components::{cycle_components, cycle_profile, profile_of, ComponentKind, CycleComponent, CycleProfile, ProfileEntry};
pub use face::{face_class_counts, infinite_face_member, infinite_face_member_tree};

use crate::error::{Error, Result};

/// Ball radius `(3^k + 1) / 2` sufficient for rank-`k` sentences.
pub fn radius_for_rank(k: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::InvalidParameter("rank must be at least 1".into()));
    }
    let p = 3usize
        .checked_pow(u32::try_from(k).map_err(|_| Error::InvalidParameter("rank too large".into()))?)
        .ok_or_else(|| Error::InvalidParameter("rank too large".into()))?;
    Ok(p / 2 + 1)
}
