//! Two-generator permutation groups, their dessins d'enfants and the
//! point-line geometries cut out by two-point stabilizers.
//!
//! The pipeline runs from a finitely presented group (or a raw permutation
//! representation) through coset enumeration, Schreier-Sims, orbital
//! analysis and geometry classification, down to the contextuality ratio
//! of the resulting collinearity graph.

pub mod catalog;
pub mod contextuality;
pub mod coset;
pub mod dessin;
pub mod geometry;
pub mod perm;
pub mod pipeline;
pub mod report;
pub mod textio;
