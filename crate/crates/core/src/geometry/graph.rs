use std::collections::VecDeque;
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use super::{BitSet, GeometryError, IncidenceGeometry};

/// Largest graph handed to the dense eigensolver when no closed form applies.
pub const SPECTRUM_LIMIT: usize = 2500;

const EIGEN_TOLERANCE: f64 = 1e-6;

pub(crate) const UNREACHED: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SrgParams {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl SrgParams {
    /// `k(k - lambda - 1) = (n - k - 1) mu`.
    pub fn satisfies_identity(&self) -> bool {
        self.k * (self.k - self.lambda - 1) == (self.n - self.k - 1) * self.mu
    }

    /// Eigenvalues with multiplicities from the parameter formulas.
    pub fn spectrum(&self) -> Spectrum {
        let (n, k, l, m) = (
            self.n as i64,
            self.k as i64,
            self.lambda as i64,
            self.mu as i64,
        );
        let disc = (l - m) * (l - m) + 4 * (k - m);
        let root = disc.isqrt();
        let mut entries = vec![SpectrumEntry::integral(k, 1)];
        if root * root == disc {
            let r = (l - m + root) / 2;
            let s = (l - m - root) / 2;
            let f = (-(n - 1) * s - k) / (r - s);
            let g = n - 1 - f;
            entries.push(SpectrumEntry::integral(r, f as usize));
            entries.push(SpectrumEntry::integral(s, g as usize));
        } else {
            let sq = (disc as f64).sqrt();
            let r = ((l - m) as f64 + sq) / 2.0;
            let s = ((l - m) as f64 - sq) / 2.0;
            let f =
                (((n - 1) as f64 - (2 * k + (n - 1) * (l - m)) as f64 / sq) / 2.0).round() as usize;
            entries.push(SpectrumEntry::real(r, f));
            entries.push(SpectrumEntry::real(s, self.n - 1 - f));
        }
        Spectrum::from_entries(entries)
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "srg({},{},{},{})", self.n, self.k, self.lambda, self.mu)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub value: f64,
    pub multiplicity: usize,
    pub integral: bool,
}

impl SpectrumEntry {
    fn integral(v: i64, multiplicity: usize) -> Self {
        SpectrumEntry {
            value: v as f64,
            multiplicity,
            integral: true,
        }
    }

    fn real(v: f64, multiplicity: usize) -> Self {
        SpectrumEntry {
            value: v,
            multiplicity,
            integral: false,
        }
    }
}

/// Eigenvalues in descending order with multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Spectrum(pub Vec<SpectrumEntry>);

impl Spectrum {
    fn from_entries(mut entries: Vec<SpectrumEntry>) -> Spectrum {
        entries.retain(|e| e.multiplicity > 0);
        entries.sort_by(|a, b| b.value.total_cmp(&a.value));
        let mut out: Vec<SpectrumEntry> = Vec::new();
        for e in entries {
            match out.last_mut() {
                Some(last) if (last.value - e.value).abs() < EIGEN_TOLERANCE => {
                    last.multiplicity += e.multiplicity
                }
                _ => out.push(e),
            }
        }
        Spectrum(out)
    }

    /// Groups raw eigenvalues, snapping those within tolerance of an integer.
    pub fn from_eigenvalues(values: &[f64]) -> Spectrum {
        let entries = values
            .iter()
            .map(|&v| {
                let r = v.round();
                if (v - r).abs() < EIGEN_TOLERANCE {
                    SpectrumEntry::integral(r as i64, 1)
                } else {
                    SpectrumEntry::real(v, 1)
                }
            })
            .collect();
        Spectrum::from_entries(entries)
    }

    pub fn multiplicity_sum(&self) -> usize {
        self.0.iter().map(|e| e.multiplicity).sum()
    }

    /// `(sum of eigenvalues, sum of squares)` with multiplicity.
    pub fn moments(&self) -> (f64, f64) {
        self.0.iter().fold((0.0, 0.0), |(s, q), e| {
            let m = e.multiplicity as f64;
            (s + m * e.value, q + m * e.value * e.value)
        })
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|e| {
                if e.integral {
                    format!("{}^{}", e.value as i64, e.multiplicity)
                } else {
                    format!("{:.4}^{}", e.value, e.multiplicity)
                }
            })
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    /// `(degree, vertex count)`, ascending.
    pub degrees: Vec<(usize, usize)>,
    pub connected: bool,
    pub diameter: Option<usize>,
    /// Absent for forests.
    pub girth: Option<usize>,
    pub srg: Option<SrgParams>,
    /// Absent when the graph is above [`SPECTRUM_LIMIT`] and not strongly regular.
    pub spectrum: Option<Spectrum>,
}

/// Statistics of the collinearity graph of a geometry.
pub fn graph_stats(geom: &IncidenceGeometry) -> Result<GraphStats, GeometryError> {
    if geom.points == 0 {
        return Err(GeometryError::Empty);
    }
    Ok(adjacency_stats(&geom.collinearity()))
}

pub(crate) fn neighbour_lists(adj: &[BitSet]) -> Vec<Vec<u32>> {
    adj.iter()
        .map(|row| row.iter().map(|v| v as u32).collect())
        .collect()
}

pub(crate) fn bfs(nbrs: &[Vec<u32>], src: usize) -> Vec<u32> {
    let mut dist = vec![UNREACHED; nbrs.len()];
    dist[src] = 0;
    let mut queue = VecDeque::from([src as u32]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize];
        for &v in &nbrs[u as usize] {
            if dist[v as usize] == UNREACHED {
                dist[v as usize] = du + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// `(diameter if connected, girth)` of a graph given by neighbour lists.
pub(crate) fn diameter_and_girth(nbrs: &[Vec<u32>]) -> (Option<usize>, Option<usize>) {
    let n = nbrs.len();
    let mut diameter = Some(0usize);
    let mut girth: Option<usize> = None;
    let mut dist = vec![UNREACHED; n];
    let mut parent = vec![UNREACHED; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = UNREACHED);
        dist[s] = 0;
        parent[s] = UNREACHED;
        queue.clear();
        queue.push_back(s as u32);
        let mut reached = 1;
        let mut far = 0;
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            far = far.max(du);
            for &v in &nbrs[u as usize] {
                if dist[v as usize] == UNREACHED {
                    dist[v as usize] = du + 1;
                    parent[v as usize] = u;
                    reached += 1;
                    queue.push_back(v);
                } else if parent[u as usize] != v {
                    let cycle = (du + dist[v as usize] + 1) as usize;
                    girth = Some(girth.map_or(cycle, |g| g.min(cycle)));
                }
            }
        }
        if reached < n {
            diameter = None;
        } else if let Some(d) = diameter.as_mut() {
            *d = (*d).max(far as usize);
        }
    }
    (diameter, girth)
}

pub(crate) fn srg_params(adj: &[BitSet]) -> Option<SrgParams> {
    let n = adj.len();
    let k = adj.first()?.count();
    if adj.iter().any(|r| r.count() != k) || k == 0 || k + 1 >= n {
        return None;
    }
    let (mut lambda, mut mu) = (None, None);
    for i in 0..n {
        for j in i + 1..n {
            let c = adj[i].intersection_count(&adj[j]);
            let slot = if adj[i].contains(j) {
                &mut lambda
            } else {
                &mut mu
            };
            match *slot {
                None => *slot = Some(c),
                Some(x) if x != c => return None,
                _ => {}
            }
        }
    }
    Some(SrgParams {
        n,
        k,
        lambda: lambda?,
        mu: mu?,
    })
}

pub(crate) fn eigen_spectrum(adj: &[BitSet]) -> Spectrum {
    let n = adj.len();
    let m = DMatrix::from_fn(n, n, |i, j| if adj[i].contains(j) { 1.0 } else { 0.0 });
    let eig = SymmetricEigen::new(m);
    Spectrum::from_eigenvalues(eig.eigenvalues.as_slice())
}

pub(crate) fn adjacency_stats(adj: &[BitSet]) -> GraphStats {
    let n = adj.len();
    let nbrs = neighbour_lists(adj);
    let degs: Vec<usize> = nbrs.iter().map(Vec::len).collect();
    let edges = degs.iter().sum::<usize>() / 2;
    let (diameter, girth) = diameter_and_girth(&nbrs);
    let srg = srg_params(adj);
    let spectrum = match srg {
        Some(p) => Some(p.spectrum()),
        None if n <= SPECTRUM_LIMIT => Some(eigen_spectrum(adj)),
        None => None,
    };
    GraphStats {
        vertices: n,
        edges,
        degrees: super::histogram(&degs),
        connected: diameter.is_some(),
        diameter,
        girth,
        srg,
        spectrum,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<BitSet> {
        let mut adj = vec![BitSet::new(n); n];
        for &(a, b) in edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    fn petersen() -> Vec<BitSet> {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((5 + i, 5 + (i + 2) % 5));
            e.push((i, i + 5));
        }
        graph(10, &e)
    }

    #[test]
    fn petersen_stats() {
        let s = adjacency_stats(&petersen());
        assert_eq!(s.srg.unwrap().to_string(), "srg(10,3,0,1)");
        assert_eq!(s.spectrum.unwrap().to_string(), "[3^1, 1^5, -2^4]");
        assert_eq!((s.diameter, s.girth), (Some(2), Some(5)));
        assert_eq!(eigen_spectrum(&petersen()).to_string(), "[3^1, 1^5, -2^4]");
    }

    #[test]
    fn pentagon_is_a_conference_graph() {
        let c5 = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let p = srg_params(&c5).unwrap();
        let closed = p.spectrum();
        let numeric = eigen_spectrum(&c5);
        assert_eq!(closed.0.len(), 3);
        for (a, b) in closed.0.iter().zip(&numeric.0) {
            assert!((a.value - b.value).abs() < 1e-9);
            assert_eq!(a.multiplicity, b.multiplicity);
        }
    }

    #[test]
    fn path_and_disconnected() {
        let p = adjacency_stats(&graph(4, &[(0, 1), (1, 2), (2, 3)]));
        assert_eq!((p.diameter, p.girth, p.srg), (Some(3), None, None));
        let d = adjacency_stats(&graph(4, &[(0, 1), (2, 3)]));
        assert!(!d.connected);
        // Two disjoint edges: srg(4,1,0,0), spectrum [1^2, -1^2].
        assert_eq!(d.srg.unwrap().to_string(), "srg(4,1,0,0)");
        assert_eq!(d.spectrum.unwrap().to_string(), "[1^2, -1^2]");
    }
}
