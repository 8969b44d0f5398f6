use serde::Serialize;

use super::graph::{bfs, neighbour_lists, UNREACHED};
use super::{BitSet, GeometryError, IncidenceGeometry};

/// Default cap on the number of sets a Veldkamp closure may enumerate.
pub const DEFAULT_CLOSURE_BUDGET: u64 = 1 << 20;

/// Which points make up the basic hyperplane of a point `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HyperplaneOptions {
    /// Keep `x` itself (the closed neighbourhood rather than the open one).
    pub include_center: bool,
    /// Add the points at maximal distance from `x` when the diameter is at
    /// least 3.
    pub far_points: bool,
}

impl Default for HyperplaneOptions {
    fn default() -> Self {
        HyperplaneOptions {
            include_center: true,
            far_points: true,
        }
    }
}

/// One set per point: its neighbourhood in the collinearity graph together
/// with the points at maximal distance. Duplicates are dropped.
pub fn basic_hyperplanes(
    geom: &IncidenceGeometry,
    opts: HyperplaneOptions,
) -> Result<Vec<BitSet>, GeometryError> {
    let n = geom.points;
    if n == 0 {
        return Err(GeometryError::Empty);
    }
    let nbrs = neighbour_lists(&geom.collinearity());
    let dists: Vec<Vec<u32>> = (0..n).map(|x| bfs(&nbrs, x)).collect();
    if dists.iter().any(|d| d.contains(&UNREACHED)) {
        return Err(GeometryError::Disconnected);
    }
    let diameter = dists
        .iter()
        .flat_map(|d| d.iter())
        .copied()
        .max()
        .unwrap_or(0);
    let mut out: Vec<BitSet> = dists
        .iter()
        .enumerate()
        .map(|(x, d)| {
            let mut h = BitSet::from_indices(n, (0..n).filter(|&y| d[y] <= 1));
            if opts.far_points && diameter >= 3 {
                (0..n)
                    .filter(|&y| d[y] == diameter)
                    .for_each(|y| h.insert(y));
            }
            if !opts.include_center {
                h.remove(x);
            }
            h
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// A proper point set meeting every line in one point or containing it.
pub fn is_hyperplane(geom: &IncidenceGeometry, set: &BitSet) -> bool {
    if set.count() == geom.points {
        return false;
    }
    geom.lines.iter().all(|l| {
        let k = l.iter().filter(|&&p| set.contains(p as usize)).count();
        k == 1 || k == l.len()
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VeldkampSummary {
    /// Dimension over GF(2) of the span of the complements.
    pub rank: usize,
    /// Size of the closure, `2^rank`; includes the whole point set.
    pub total: u128,
    /// `(set size, number of sets)`, ascending by size.
    pub classes: Vec<(usize, u64)>,
}

/// Closes a family under `H + H' = complement(H symmetric-difference H')`.
///
/// Complementation turns this operation into XOR, so the closure is the
/// image of the GF(2) span of the complements; it is enumerated in Gray-code
/// order from an echelon basis.
pub fn veldkamp_closure(
    basics: &[BitSet],
    universe: usize,
    budget: u64,
) -> Result<VeldkampSummary, GeometryError> {
    if basics.is_empty() {
        return Err(GeometryError::NoHyperplanes);
    }
    let mut basis: Vec<BitSet> = Vec::new();
    for h in basics {
        let mut v = h.complement();
        for b in &basis {
            let pivot = b.last().unwrap();
            if v.contains(pivot) {
                v.xor_with(b);
            }
        }
        if let Some(pivot) = v.last() {
            for b in basis.iter_mut() {
                if b.contains(pivot) {
                    b.xor_with(&v);
                }
            }
            basis.push(v);
        }
    }
    let rank = basis.len();
    if rank >= 127 || (1u128 << rank) > budget as u128 {
        return Err(GeometryError::ClosureBudgetExceeded { rank, budget });
    }
    let mut counts = vec![0u64; universe + 1];
    let mut current = BitSet::new(universe);
    counts[universe] += 1;
    for i in 1u64..(1u64 << rank) {
        current.xor_with(&basis[i.trailing_zeros() as usize]);
        counts[universe - current.count()] += 1;
    }
    Ok(VeldkampSummary {
        rank,
        total: 1u128 << rank,
        classes: counts
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn veldkamp_sum(a: &BitSet, b: &BitSet) -> BitSet {
        let mut x = a.clone();
        x.xor_with(b);
        x.complement()
    }

    /// Pairwise closure until nothing new appears.
    fn naive_closure(basics: &[BitSet]) -> BTreeSet<BitSet> {
        let mut all: BTreeSet<BitSet> = basics.iter().cloned().collect();
        loop {
            let items: Vec<BitSet> = all.iter().cloned().collect();
            let before = all.len();
            for a in &items {
                for b in &items {
                    all.insert(veldkamp_sum(a, b));
                }
            }
            if all.len() == before {
                return all;
            }
        }
    }

    #[test]
    fn closure_matches_pairwise_oracle() {
        let n = 9;
        let sets: Vec<BitSet> = [
            vec![0, 1, 2],
            vec![2, 3, 4, 5],
            vec![0, 5, 6, 7, 8],
            vec![1, 3],
        ]
        .into_iter()
        .map(|v| BitSet::from_indices(n, v))
        .collect();
        let naive = naive_closure(&sets);
        let s = veldkamp_closure(&sets, n, DEFAULT_CLOSURE_BUDGET).unwrap();
        assert_eq!(s.total, naive.len() as u128);
        let mut by_size = std::collections::BTreeMap::new();
        for h in &naive {
            *by_size.entry(h.count()).or_insert(0u64) += 1;
        }
        assert_eq!(s.classes, by_size.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn single_set() {
        let h = BitSet::from_indices(5, [0, 1]);
        let s = veldkamp_closure(&[h], 5, 16).unwrap();
        assert_eq!(s.total, 2);
        assert_eq!(s.classes, vec![(2, 1), (5, 1)]);
        assert!(matches!(
            veldkamp_closure(&[], 5, 16),
            Err(GeometryError::NoHyperplanes)
        ));
    }

    #[test]
    fn budget() {
        let sets: Vec<BitSet> = (0..6).map(|i| BitSet::from_indices(8, [i])).collect();
        assert!(matches!(
            veldkamp_closure(&sets, 8, 32),
            Err(GeometryError::ClosureBudgetExceeded {
                rank: 6,
                budget: 32
            })
        ));
    }
}
