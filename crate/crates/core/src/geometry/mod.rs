//! Point-line geometries cut out by two-point stabilizer classes, and their
//! combinatorial classification.

mod bits;
mod build;
mod classify;
mod graph;
mod hyperplane;
mod polar;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use bits::BitSet;
pub use build::{
    build_defined_geometries_by_size, build_defined_geometry, build_stabilized_geometry,
    CliqueSelection, DefinedOptions, DEFAULT_CLIQUE_BUDGET,
};
pub use classify::{
    classify_generalized_polygon, classify_gu, dual_geometry, GeneralizedPolygon, GuClassification,
};
pub use graph::{graph_stats, GraphStats, Spectrum, SpectrumEntry, SrgParams, SPECTRUM_LIMIT};
pub use hyperplane::{
    basic_hyperplanes, is_hyperplane, veldkamp_closure, HyperplaneOptions, VeldkampSummary,
    DEFAULT_CLOSURE_BUDGET,
};
pub use polar::{predict_polar_space, PolarPrediction};

use crate::perm::PermGroupError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("class {0} does not exist")]
    NoSuchClass(usize),
    #[error("class {0} has a trivial two-point stabilizer; pass force to build anyway")]
    TrivialClass(usize),
    #[error("clique enumeration exceeded {0} cliques")]
    CliqueBudgetExceeded(usize),
    #[error("collinearity graph is disconnected")]
    Disconnected,
    #[error("geometry has no points")]
    Empty,
    #[error("hyperplane closure would hold 2^{rank} sets, above the budget of {budget}")]
    ClosureBudgetExceeded { rank: usize, budget: u64 },
    #[error("no hyperplanes to close")]
    NoHyperplanes,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("qudit count must be at least 1")]
    ZeroQudits,
    #[error(transparent)]
    Group(#[from] PermGroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeometryMode {
    Stabilized,
    Defined,
}

impl fmt::Display for GeometryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeometryMode::Stabilized => "stabilized",
            GeometryMode::Defined => "defined",
        })
    }
}

/// Points are `0..points`; each line is a sorted point list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncidenceGeometry {
    pub points: usize,
    pub lines: Vec<Vec<u32>>,
    pub mode: GeometryMode,
    pub source_class: Option<usize>,
    /// Points and lines swapped relative to the construction.
    pub dual: bool,
    /// Any two points share at most one line.
    pub partial_linear: bool,
}

impl IncidenceGeometry {
    /// Sorts lines, drops duplicates and computes the partial-linear flag.
    pub fn new(
        points: usize,
        mut lines: Vec<Vec<u32>>,
        mode: GeometryMode,
        source_class: Option<usize>,
    ) -> Self {
        for l in &mut lines {
            l.sort_unstable();
            l.dedup();
        }
        lines.sort();
        lines.dedup();
        let partial_linear = partial_linear(points, &lines);
        IncidenceGeometry {
            points,
            lines,
            mode,
            source_class,
            dual: false,
            partial_linear,
        }
    }

    pub fn point_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.points];
        for l in &self.lines {
            for &p in l {
                d[p as usize] += 1;
            }
        }
        d
    }

    /// For each point, the indices of the lines through it.
    pub fn lines_through(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.points];
        for (i, l) in self.lines.iter().enumerate() {
            for &p in l {
                out[p as usize].push(i as u32);
            }
        }
        out
    }

    /// Collinearity graph as bit rows.
    pub fn collinearity(&self) -> Vec<BitSet> {
        let mut rows = vec![BitSet::new(self.points); self.points];
        for l in &self.lines {
            for &p in l {
                for &q in l {
                    if p != q {
                        rows[p as usize].insert(q as usize);
                    }
                }
            }
        }
        rows
    }

    pub fn configuration(&self) -> ConfigurationParams {
        ConfigurationParams::new(
            &self.point_degrees(),
            &self.lines.iter().map(Vec::len).collect::<Vec<_>>(),
        )
    }
}

fn partial_linear(points: usize, lines: &[Vec<u32>]) -> bool {
    let mut seen = std::collections::HashSet::new();
    for l in lines {
        for (i, &p) in l.iter().enumerate() {
            for &q in &l[i + 1..] {
                if !seen.insert(p as usize * points + q as usize) {
                    return false;
                }
            }
        }
    }
    true
}

/// Counts of points per degree and lines per size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigurationParams {
    pub points: usize,
    /// `(lines through a point, number of such points)`, ascending.
    pub point_degrees: Vec<(usize, usize)>,
    pub lines: usize,
    /// `(points on a line, number of such lines)`, ascending.
    pub line_sizes: Vec<(usize, usize)>,
    pub uniform: bool,
}

fn histogram(values: &[usize]) -> Vec<(usize, usize)> {
    let mut h: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in values {
        *h.entry(v).or_default() += 1;
    }
    h.into_iter().collect()
}

impl ConfigurationParams {
    pub fn new(point_degrees: &[usize], line_sizes: &[usize]) -> Self {
        let pd = histogram(point_degrees);
        let ls = histogram(line_sizes);
        ConfigurationParams {
            points: point_degrees.len(),
            uniform: pd.len() <= 1 && ls.len() <= 1,
            point_degrees: pd,
            lines: line_sizes.len(),
            line_sizes: ls,
        }
    }

    /// Lines per point when constant.
    pub fn point_degree(&self) -> Option<usize> {
        match self.point_degrees.as_slice() {
            [(d, _)] => Some(*d),
            _ => None,
        }
    }

    /// Points per line when constant.
    pub fn line_size(&self) -> Option<usize> {
        match self.line_sizes.as_slice() {
            [(s, _)] => Some(*s),
            _ => None,
        }
    }

    pub fn incidences(&self) -> (usize, usize) {
        (
            self.point_degrees.iter().map(|(d, c)| d * c).sum(),
            self.line_sizes.iter().map(|(s, c)| s * c).sum(),
        )
    }

    /// Order `(s, t)`: `s + 1` points per line, `t + 1` lines per point.
    pub fn order(&self) -> Option<(usize, usize)> {
        match (self.line_size(), self.point_degree()) {
            (Some(s), Some(t)) if s >= 1 && t >= 1 => Some((s - 1, t - 1)),
            _ => None,
        }
    }
}

fn degree_label(h: &[(usize, usize)]) -> String {
    match h {
        [] => "0".to_string(),
        [(d, _)] => d.to_string(),
        _ => {
            let parts: Vec<String> = h.iter().map(|(d, _)| d.to_string()).collect();
            format!("{{{}}}", parts.join(","))
        }
    }
}

impl fmt::Display for ConfigurationParams {
    /// `[p_a, l_b]`, shortened to `[p_a]` when points and lines have the
    /// same count and degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = degree_label(&self.point_degrees);
        let b = degree_label(&self.line_sizes);
        if self.points == self.lines && a == b {
            write!(f, "[{}_{}]", self.points, a)
        } else {
            write!(f, "[{}_{}, {}_{}]", self.points, a, self.lines, b)
        }
    }
}
