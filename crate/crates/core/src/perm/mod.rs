//! Permutations, permutation groups (Schreier-Sims), orbitals and
//! two-point stabilizers.

mod group;
mod orbitals;
mod permutation;

use thiserror::Error;

pub use group::{group_from, subgroups_equal, PermutationGroup};
pub(crate) use orbitals::classify_with;
pub use orbitals::{
    classify_two_point_stabilizers, fingerprint, rank_profile, two_point_stabilizer, Fingerprint,
    OrbitalStructure, RankProfile, StabilizerClass, StabilizerClassification,
    ELEMENT_FINGERPRINT_LIMIT,
};
pub use permutation::{Permutation, PermutationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermGroupError {
    #[error("group is not transitive")]
    NotTransitive,
    #[error("two-point stabilizer needs distinct points, got {0} twice")]
    SamePoint(u32),
    #[error("point {0} outside the permutation domain")]
    PointOutOfRange(u32),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree must be at least 2")]
    TooSmall,
}
