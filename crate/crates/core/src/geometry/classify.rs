use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::graph::{bfs, diameter_and_girth, neighbour_lists, UNREACHED};
use super::{GeometryError, IncidenceGeometry};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GuClassification {
    /// The constant number of nearest points, when constant.
    pub u: Option<usize>,
    /// Observed nearest-point counts over all non-incident point-line pairs.
    pub histogram: BTreeMap<usize, usize>,
    pub diameter: usize,
    /// `u = 1`.
    pub near_polygon: bool,
}

/// For every point `x` and line `L` missing `x`, counts the points of `L`
/// at minimal distance from `x` in the collinearity graph.
pub fn classify_gu(geom: &IncidenceGeometry) -> Result<GuClassification, GeometryError> {
    if geom.points == 0 {
        return Err(GeometryError::Empty);
    }
    let nbrs = neighbour_lists(&geom.collinearity());
    let mut histogram = BTreeMap::new();
    let mut diameter = 0;
    for x in 0..geom.points {
        let dist = bfs(&nbrs, x);
        if dist.contains(&UNREACHED) {
            return Err(GeometryError::Disconnected);
        }
        diameter = diameter.max(*dist.iter().max().unwrap() as usize);
        for line in &geom.lines {
            if line.binary_search(&(x as u32)).is_ok() {
                continue;
            }
            let near = line.iter().map(|&p| dist[p as usize]).min().unwrap();
            let count = line.iter().filter(|&&p| dist[p as usize] == near).count();
            *histogram.entry(count).or_insert(0) += 1;
        }
    }
    let u = match histogram.len() {
        1 => histogram.keys().next().copied(),
        _ => None,
    };
    Ok(GuClassification {
        u,
        near_polygon: u == Some(1),
        histogram,
        diameter,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneralizedPolygon {
    /// Diameter of the incidence graph; the girth is `2n`.
    pub n: usize,
    /// Order `(s, t)`.
    pub s: usize,
    pub t: usize,
}

impl fmt::Display for GeneralizedPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.n {
            3 => write!(f, "PG(2,{})", self.s),
            4 => write!(f, "GQ({},{})", self.s, self.t),
            6 => write!(f, "GH({},{})", self.s, self.t),
            8 => write!(f, "GO({},{})", self.s, self.t),
            n => write!(f, "generalized {n}-gon of order ({},{})", self.s, self.t),
        }
    }
}

/// A thick (`s, t > 1`) generalized N-gon, identified by an incidence graph
/// of diameter N and girth 2N.
pub fn classify_generalized_polygon(geom: &IncidenceGeometry) -> Option<GeneralizedPolygon> {
    let (s, t) = geom.configuration().order()?;
    if s < 2 || t < 2 || !geom.partial_linear {
        return None;
    }
    let p = geom.points;
    let mut nbrs: Vec<Vec<u32>> = vec![Vec::new(); p + geom.lines.len()];
    for (i, line) in geom.lines.iter().enumerate() {
        let li = (p + i) as u32;
        for &x in line {
            nbrs[x as usize].push(li);
            nbrs[li as usize].push(x);
        }
    }
    let (diameter, girth) = diameter_and_girth(&nbrs);
    let (d, g) = (diameter?, girth?);
    if g != 2 * d {
        return None;
    }
    match classify_gu(geom) {
        Ok(gu) if gu.near_polygon || d == 3 => Some(GeneralizedPolygon { n: d, s, t }),
        _ => None,
    }
}

/// Swaps points and lines: dual point `i` is line `i`, dual line `j` is the
/// set of lines through point `j`.
pub fn dual_geometry(geom: &IncidenceGeometry) -> IncidenceGeometry {
    let lines = geom.lines_through();
    let partial_linear = super::partial_linear(geom.lines.len(), &lines);
    IncidenceGeometry {
        points: geom.lines.len(),
        lines,
        mode: geom.mode,
        source_class: geom.source_class,
        dual: !geom.dual,
        partial_linear,
    }
}
