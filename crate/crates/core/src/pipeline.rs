//! End-to-end runs: presentation or permutation representation in, one
//! report row per representation out.

use std::fmt::Write as _;

use serde::Serialize;

use crate::contextuality::kappa;
use crate::coset::{
    low_index_subgroups_with, table_to_permutations, CosetError, CosetTable, LowIndexOptions,
};
use crate::dessin::{
    modular_invariants, passport, signature, DessinSignature, ModularInvariants, Passport,
};
use crate::geometry::{
    build_defined_geometries_by_size, build_defined_geometry, build_stabilized_geometry,
    classify_generalized_polygon, classify_gu, graph_stats, CliqueSelection, DefinedOptions,
    GeometryError, GeometryMode, IncidenceGeometry, Spectrum, SrgParams,
};
use crate::perm::{group_from, OrbitalStructure};
use crate::textio::{PermutationInput, Presentation};

pub const SCHEMA_VERSION: u32 = 1;

pub const FLAG_NO_GEOMETRY: &str = "no non-trivial geometry";
pub const FLAG_BUDGET: &str = "budget-exceeded";
pub const FLAG_FINGERPRINT_ONLY: &str = "fingerprint-only";

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    /// Low-index bound for presentations.
    pub max_index: usize,
    pub node_budget: u64,
    /// `Maximal` emits one defined geometry per maximal-clique size.
    pub defined: DefinedOptions,
    /// Compute the contextuality ratio when a coset table is available.
    pub kappa: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            max_index: 30,
            node_budget: crate::coset::DEFAULT_NODE_BUDGET,
            defined: DefinedOptions {
                selection: CliqueSelection::Maximal,
                ..DefinedOptions::default()
            },
            kappa: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub schema_version: u32,
    pub group: String,
    /// The index, with a letter suffix when several classes share it.
    pub label: String,
    pub index: usize,
    pub rank: Option<usize>,
    pub subdegrees: Vec<usize>,
    pub m: Option<usize>,
    pub signature: Option<DessinSignature>,
    /// Cycle types of black vertices, white vertices and faces.
    pub passport: Option<[Vec<usize>; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modular: Option<ModularInvariants>,
    pub classes: Vec<ClassRow>,
    pub geometries: Vec<GeometryRow>,
    pub flags: Vec<String>,
    pub errors: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRow {
    pub order: u128,
    pub valency: usize,
    pub suborbits: Vec<usize>,
    pub fingerprint_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigRow {
    pub p: usize,
    /// `(lines through a point, points)`.
    pub degrees: Vec<(usize, usize)>,
    pub l: usize,
    /// `(points on a line, lines)`.
    pub sizes: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KappaRow {
    pub value: String,
    pub exact: String,
    pub edges: u64,
    pub contextual_edges: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeometryRow {
    pub class: usize,
    pub mode: GeometryMode,
    /// The stabilized geometry when it is a partial linear space with lines
    /// of at least three points, the defined one otherwise.
    pub preferred: bool,
    pub configuration: String,
    pub config: ConfigRow,
    pub partial_linear: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub srg: Option<SrgParams>,
    pub spectrum: Option<Spectrum>,
    pub diameter: Option<usize>,
    pub girth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gu: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polygon: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<KappaRow>,
}

impl ReportRow {
    fn new(group: &str, index: usize) -> Self {
        ReportRow {
            schema_version: SCHEMA_VERSION,
            group: group.to_string(),
            label: index.to_string(),
            index,
            rank: None,
            subdegrees: Vec::new(),
            m: None,
            signature: None,
            passport: None,
            modular: None,
            classes: Vec::new(),
            geometries: Vec::new(),
            flags: Vec::new(),
            errors: Vec::new(),
        }
    }

    fn flag(&mut self, f: &str) {
        if !self.flags.iter().any(|x| x == f) {
            self.flags.push(f.to_string());
        }
    }
}

fn passport_parts(p: Passport) -> [Vec<usize>; 3] {
    [p.black.0, p.white.0, p.faces.0]
}

/// Runs every stage on one permutation representation. Failures of single
/// stages are recorded on the row.
pub fn analyze(
    group: &str,
    input: &PermutationInput,
    table: Option<&CosetTable>,
    opts: &PipelineOptions,
) -> ReportRow {
    let mut row = ReportRow::new(group, input.degree);
    match signature(input) {
        Ok(s) => row.signature = Some(s),
        Err(e) => row.errors.push(e.to_string()),
    }
    if let Ok(p) = passport(input) {
        row.passport = Some(passport_parts(p));
    }
    row.modular = modular_invariants(input).ok();
    if input.degree < 2 {
        row.rank = Some(1);
        row.subdegrees = vec![1];
        row.flag(FLAG_NO_GEOMETRY);
        return row;
    }
    let g = group_from(input);
    let orbitals = match OrbitalStructure::new(&g) {
        Ok(o) => o,
        Err(e) => {
            row.errors.push(e.to_string());
            return row;
        }
    };
    let profile = orbitals.rank_profile();
    row.rank = Some(profile.rank);
    row.subdegrees = profile.subdegrees;
    let cls = match crate::perm::classify_with(&orbitals) {
        Ok(c) => c,
        Err(e) => {
            row.errors.push(e.to_string());
            return row;
        }
    };
    row.m = Some(cls.m);
    if cls.fingerprint_only {
        row.flag(FLAG_FINGERPRINT_ONLY);
    }
    row.classes = cls
        .classes
        .iter()
        .map(|c| ClassRow {
            order: c.order,
            valency: c.valency,
            suborbits: c
                .suborbits
                .iter()
                .map(|&s| orbitals.suborbits()[s].len())
                .collect(),
            fingerprint_only: c.fingerprint.is_approximate(),
        })
        .collect();
    if profile.rank <= 2 {
        row.flag(FLAG_NO_GEOMETRY);
        return row;
    }
    for k in 0..cls.classes.len() {
        let stabilized = build_stabilized_geometry(&g, &orbitals, &cls, k, false);
        let defined = match opts.defined.selection {
            CliqueSelection::Maximum => {
                build_defined_geometry(&g, &orbitals, &cls, k, &opts.defined).map(|d| vec![d])
            }
            CliqueSelection::Maximal => {
                build_defined_geometries_by_size(&g, &orbitals, &cls, k, opts.defined.budget)
            }
        };
        let prefer_stabilized = matches!(&stabilized, Ok(geo) if geo.partial_linear
            && geo.configuration().line_sizes.iter().all(|&(s, _)| s >= 3));
        let push = |row: &mut ReportRow,
                    built: Result<Vec<IncidenceGeometry>, GeometryError>,
                    preferred: bool| {
            match built {
                Ok(geos) => {
                    for (i, geo) in geos.iter().enumerate() {
                        let r = geometry_row(geo, k, preferred && i == 0, table, opts);
                        row.geometries.push(r);
                    }
                }
                Err(GeometryError::TrivialClass(_)) => {}
                Err(e) => {
                    if matches!(e, GeometryError::CliqueBudgetExceeded(_)) {
                        row.flag(FLAG_BUDGET);
                    }
                    row.errors.push(format!("class {k}: {e}"));
                }
            }
        };
        push(&mut row, stabilized.map(|s| vec![s]), prefer_stabilized);
        push(&mut row, defined, !prefer_stabilized);
    }
    row
}

fn geometry_row(
    geo: &IncidenceGeometry,
    class: usize,
    preferred: bool,
    table: Option<&CosetTable>,
    opts: &PipelineOptions,
) -> GeometryRow {
    let conf = geo.configuration();
    let stats = graph_stats(geo).ok();
    GeometryRow {
        class,
        mode: geo.mode,
        preferred,
        configuration: conf.to_string(),
        config: ConfigRow {
            p: conf.points,
            degrees: conf.point_degrees.clone(),
            l: conf.lines,
            sizes: conf.line_sizes.clone(),
        },
        partial_linear: geo.partial_linear,
        srg: stats.as_ref().and_then(|s| s.srg),
        spectrum: stats.as_ref().and_then(|s| s.spectrum.clone()),
        diameter: stats.as_ref().and_then(|s| s.diameter),
        girth: stats.as_ref().and_then(|s| s.girth),
        gu: classify_gu(geo).ok().and_then(|c| c.u),
        polygon: classify_generalized_polygon(geo).map(|p| p.to_string()),
        kappa: table
            .filter(|_| opts.kappa)
            .and_then(|t| kappa(t, geo).ok())
            .map(|k| {
                let (p, q) = k.ratio();
                KappaRow {
                    value: k.rounded(),
                    exact: format!("{p}/{q}"),
                    edges: k.edges,
                    contextual_edges: k.contextual_edges,
                }
            }),
    }
}

/// The permutation representation a pipeline run uses for a coset table:
/// `b` colours the black vertices, `a` the white ones.
pub fn table_representation(t: &CosetTable) -> PermutationInput {
    table_to_permutations(t).reversed()
}

/// Low-index search followed by [`analyze`] on every class found.
pub fn run_presentation(
    group: &str,
    p: &Presentation,
    opts: &PipelineOptions,
) -> Result<Vec<ReportRow>, CosetError> {
    let tables = low_index_subgroups_with(
        p,
        &LowIndexOptions {
            max_index: opts.max_index,
            node_budget: opts.node_budget,
        },
    )?;
    let mut rows: Vec<ReportRow> = tables
        .iter()
        .map(|t| analyze(group, &table_representation(t), Some(t), opts))
        .collect();
    assign_labels(&mut rows);
    Ok(rows)
}

/// Suffixes `_a`, `_b`, ... on indices that occur more than once.
pub fn assign_labels(rows: &mut [ReportRow]) {
    let mut i = 0;
    while i < rows.len() {
        let j = i + rows[i..]
            .iter()
            .take_while(|r| r.index == rows[i].index)
            .count();
        if j - i > 1 {
            for (k, r) in rows[i..j].iter_mut().enumerate() {
                r.label = format!("{}_{}", r.index, (b'a' + (k % 26) as u8) as char);
            }
        }
        i = j;
    }
}

pub fn emit_json(rows: &[ReportRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

/// Fixed-width table, one line per geometry.
pub fn emit_text(rows: &[ReportRow]) -> String {
    let header = [
        "group",
        "index",
        "r",
        "m",
        "subdegrees",
        "signature",
        "class",
        "mode",
        "geometry",
        "graph",
        "u",
        "polygon",
        "kappa",
        "flags",
    ];
    let mut lines: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    let opt = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
    for r in rows {
        let mut flags = r.flags.clone();
        flags.extend(r.errors.iter().map(|e| format!("error: {e}")));
        let head = vec![
            r.group.clone(),
            r.label.clone(),
            opt(r.rank),
            opt(r.m),
            r.subdegrees
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(","),
            r.signature.map_or("-".to_string(), |s| s.to_string()),
        ];
        if r.geometries.is_empty() {
            let mut l = head;
            l.extend(["-", "-", "-", "-", "-", "-", "-"].map(String::from));
            l.push(flags.join("; "));
            lines.push(l);
            continue;
        }
        for (i, g) in r.geometries.iter().enumerate() {
            let mut l = if i == 0 {
                head.clone()
            } else {
                vec![String::new(); head.len()]
            };
            let graph = match (&g.srg, &g.spectrum) {
                (Some(s), _) => s.to_string(),
                (None, Some(sp)) => sp.to_string(),
                _ => "-".to_string(),
            };
            let mode = if g.preferred {
                format!("{}*", g.mode)
            } else {
                g.mode.to_string()
            };
            l.extend([
                format!("{} ({})", g.class, r.classes[g.class].order),
                mode,
                g.configuration.clone(),
                graph,
                opt(g.gu),
                g.polygon.clone().unwrap_or_else(|| "-".to_string()),
                g.kappa
                    .as_ref()
                    .map_or("-".to_string(), |k| k.value.clone()),
                if i == 0 {
                    flags.join("; ")
                } else {
                    String::new()
                },
            ]);
            lines.push(l);
        }
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            lines
                .iter()
                .map(|l| l[c].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for l in &lines {
        let mut line = String::new();
        for (c, cell) in l.iter().enumerate() {
            let _ = write!(line, "{cell:<w$}  ", w = widths[c]);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
