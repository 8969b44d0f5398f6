//! Contextuality ratio of a geometry built on the cosets of a subgroup.
//!
//! Each point carries the permutation image of its coset representative; an
//! edge of the collinearity graph is contextual when the two images do not
//! commute.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::coset::CosetTable;
use crate::geometry::IncidenceGeometry;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextualityError {
    #[error("contextuality needs coset representatives; raw permutation input has none")]
    NoCosetTable,
    #[error("geometry has {geometry} points but the coset table has {table} cosets")]
    DegreeMismatch { geometry: usize, table: usize },
    #[error("the collinearity graph has no edges")]
    NoEdges,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KappaReport {
    /// Collinearity edges.
    pub edges: u64,
    /// Edges whose endpoint images do not commute.
    pub contextual_edges: u64,
    /// `(i, j, contextual)` for every edge with `i < j`, lexicographic.
    #[serde(skip)]
    pub per_edge: Vec<(u32, u32, bool)>,
}

impl KappaReport {
    /// `contextual_edges / edges` in lowest terms.
    pub fn ratio(&self) -> (u64, u64) {
        let g = gcd(self.contextual_edges, self.edges).max(1);
        (self.contextual_edges / g, self.edges / g)
    }

    pub fn value(&self) -> f64 {
        self.contextual_edges as f64 / self.edges as f64
    }

    /// Three decimals, rounded half up on the exact ratio.
    pub fn rounded(&self) -> String {
        let scaled =
            (self.contextual_edges as u128 * 2000 + self.edges as u128) / (2 * self.edges as u128);
        format!("{}.{:03}", scaled / 1000, scaled % 1000)
    }
}

impl fmt::Display for KappaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.ratio();
        write!(
            f,
            "{} ({p}/{q}, {} of {} edges)",
            self.rounded(),
            self.contextual_edges,
            self.edges
        )
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Images of the coset representatives, indexed by coset.
pub fn representative_images(table: &CosetTable) -> Vec<Permutation> {
    table
        .representatives()
        .iter()
        .map(|w| table.word_permutation(w))
        .collect()
}

pub fn kappa(
    table: &CosetTable,
    geom: &IncidenceGeometry,
) -> Result<KappaReport, ContextualityError> {
    if geom.points != table.index() {
        return Err(ContextualityError::DegreeMismatch {
            geometry: geom.points,
            table: table.index(),
        });
    }
    let images = representative_images(table);
    let adj = geom.collinearity();
    let mut per_edge = Vec::new();
    for (i, row) in adj.iter().enumerate() {
        for j in row.iter().filter(|&j| j > i) {
            per_edge.push((i as u32, j as u32, !images[i].commutes_with(&images[j])));
        }
    }
    if per_edge.is_empty() {
        return Err(ContextualityError::NoEdges);
    }
    Ok(KappaReport {
        edges: per_edge.len() as u64,
        contextual_edges: per_edge.iter().filter(|e| e.2).count() as u64,
        per_edge,
    })
}

/// One `(label, kappa)` row per report, in input order.
pub fn kappa_summary<'a>(
    reports: impl IntoIterator<Item = (&'a str, &'a KappaReport)>,
) -> Vec<(String, String)> {
    reports
        .into_iter()
        .map(|(l, r)| (l.to_string(), r.rounded()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(edges: u64, contextual: u64) -> KappaReport {
        KappaReport {
            edges,
            contextual_edges: contextual,
            per_edge: Vec::new(),
        }
    }

    #[test]
    fn rounding() {
        assert_eq!(report(10, 6).rounded(), "0.600");
        assert_eq!(report(3, 2).rounded(), "0.667");
        assert_eq!(report(2000, 1).rounded(), "0.001");
        assert_eq!(report(8, 0).rounded(), "0.000");
        assert_eq!(report(10, 6).ratio(), (3, 5));
        assert!(kappa_summary([]).is_empty());
        let r = report(10, 6);
        assert_eq!(
            kappa_summary([("x", &r)]),
            vec![("x".to_string(), "0.600".to_string())]
        );
    }
}
