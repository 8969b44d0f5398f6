//! Regression runs of the catalog: computed rows against expected values.

use std::fmt;

use serde::Serialize;

use crate::catalog::{CatalogEntry, ExpectedGeometry, ExpectedRow, GroupSource, LoadedCatalog};
use crate::pipeline::{analyze, run_presentation, GeometryRow, PipelineOptions, ReportRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    Mismatch,
    NotComputableAtBudget,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
            Verdict::NotComputableAtBudget => "not-computable-at-budget",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldCheck {
    pub field: String,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
    /// A failed soft check is a warning.
    pub soft: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub group: String,
    pub source: String,
    /// Expected label, or the index.
    pub label: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Label of the computed row compared against.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matched: Option<String>,
    pub checks: Vec<FieldCheck>,
}

impl RowCheck {
    pub fn warnings(&self) -> impl Iterator<Item = &FieldCheck> {
        self.checks.iter().filter(|c| c.soft && !c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &FieldCheck> {
        self.checks.iter().filter(|c| !c.soft && !c.ok)
    }

    fn not_computable(entry: &CatalogEntry, exp: &ExpectedRow, reason: String) -> RowCheck {
        RowCheck {
            group: entry.name.clone(),
            source: exp.source.clone(),
            label: exp.label.clone().unwrap_or_else(|| exp.index.to_string()),
            verdict: Verdict::NotComputableAtBudget,
            reason: Some(reason),
            matched: None,
            checks: Vec::new(),
        }
    }
}

impl fmt::Display for RowCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<24} {} {} ({})",
            self.verdict, self.group, self.label, self.source
        )?;
        if let Some(r) = &self.reason {
            write!(f, ": {r}")?;
        }
        for c in self.failures() {
            write!(
                f,
                "\n    {}: expected {}, computed {}",
                c.field, c.expected, c.computed
            )?;
        }
        for c in self.warnings() {
            write!(
                f,
                "\n    warning {}: expected {}, computed {}",
                c.field, c.expected, c.computed
            )?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct CheckOptions {
    pub pipeline: PipelineOptions,
    /// Also run entries marked `extended`.
    pub extended: bool,
}

/// Computed rows of one entry, or the reason there are none.
pub fn entry_rows(
    cat: &LoadedCatalog,
    entry: &CatalogEntry,
    opts: &CheckOptions,
) -> Result<Vec<ReportRow>, String> {
    if entry.extended && !opts.extended {
        return Err("extended entry; pass --extended to run it".to_string());
    }
    match cat.source(entry).map_err(|e| e.to_string())? {
        GroupSource::Unavailable => Err(entry
            .note
            .clone()
            .unwrap_or_else(|| "no representation available".to_string())),
        GroupSource::Permutations(input) => {
            Ok(vec![analyze(&entry.name, &input, None, &opts.pipeline)])
        }
        GroupSource::Presentation(p) => {
            let mut po = opts.pipeline.clone();
            po.max_index = entry.max_index.unwrap_or(po.max_index);
            run_presentation(&entry.name, &p, &po).map_err(|e| e.to_string())
        }
    }
}

/// Checks every expected row of one entry against freshly computed rows.
pub fn check_entry(
    cat: &LoadedCatalog,
    entry: &CatalogEntry,
    opts: &CheckOptions,
) -> Vec<RowCheck> {
    let rows = entry_rows(cat, entry, opts);
    entry
        .expect
        .iter()
        .map(|exp| match &rows {
            Err(reason) => RowCheck::not_computable(entry, exp, reason.clone()),
            Ok(_) if entry.max_index.is_some_and(|m| exp.index > m) => RowCheck::not_computable(
                entry,
                exp,
                format!("index above max_index {}", entry.max_index.unwrap()),
            ),
            Ok(rows) => compare(&entry.name, exp, rows),
        })
        .collect()
}

pub fn check_catalog(cat: &LoadedCatalog, opts: &CheckOptions) -> Vec<RowCheck> {
    cat.catalog
        .groups
        .iter()
        .flat_map(|e| check_entry(cat, e, opts))
        .collect()
}

fn field(name: &str, expected: String, computed: String, soft: bool) -> FieldCheck {
    FieldCheck {
        field: name.to_string(),
        ok: expected == computed,
        expected,
        computed,
        soft,
    }
}

fn show<T: fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "none".to_string(), |x| x.to_string())
}

fn list<T: fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn geometry_matches(exp: &ExpectedGeometry, g: &GeometryRow) -> bool {
    g.configuration == exp.config
        && exp
            .srg
            .as_ref()
            .is_none_or(|s| g.srg.is_some_and(|x| x.to_string() == *s))
        && exp
            .spectrum
            .as_ref()
            .is_none_or(|s| g.spectrum.as_ref().is_some_and(|x| x.to_string() == *s))
        && exp
            .polygon
            .as_ref()
            .is_none_or(|p| g.polygon.as_ref() == Some(p))
        && exp.u.is_none_or(|u| g.gu == Some(u))
}

fn describe(g: &GeometryRow) -> String {
    let mut s = g.configuration.clone();
    if let Some(srg) = g.srg {
        s += &format!(" {srg}");
    }
    if let Some(sp) = &g.spectrum {
        s += &format!(" {sp}");
    }
    if let Some(p) = &g.polygon {
        s += &format!(" {p}");
    }
    if let Some(u) = g.gu {
        s += &format!(" u={u}");
    }
    s
}

fn check_row(exp: &ExpectedRow, row: &ReportRow) -> Vec<FieldCheck> {
    let mut out = Vec::new();
    if let Some(r) = exp.rank {
        out.push(field("rank", r.to_string(), show(row.rank), false));
    }
    if let Some(m) = exp.m {
        out.push(field("m", m.to_string(), show(row.m), false));
    }
    if let Some(s) = &exp.subdegrees {
        out.push(field("subdegrees", list(s), list(&row.subdegrees), false));
    }
    if let Some(s) = &exp.signature {
        out.push(field("signature", s.clone(), show(row.signature), false));
    }
    if let Some(p) = &exp.passport {
        let computed = row.passport.as_ref().map(|[b, w, f]| {
            crate::dessin::Passport {
                black: crate::dessin::Partition(b.clone()),
                white: crate::dessin::Partition(w.clone()),
                faces: crate::dessin::Partition(f.clone()),
            }
            .to_string()
        });
        out.push(field("passport", p.clone(), show(computed), false));
    }
    if let Some(orders) = &exp.stabilizer_orders {
        let mut e = orders.clone();
        e.sort_unstable();
        let mut c: Vec<u128> = row.classes.iter().map(|c| c.order).collect();
        c.sort_unstable();
        out.push(field("stabilizer orders", list(&e), list(&c), false));
    }
    for eg in &exp.geometries {
        match row.geometries.iter().find(|g| geometry_matches(eg, g)) {
            Some(g) => {
                out.push(field(
                    "geometry",
                    eg.config.clone(),
                    g.configuration.clone(),
                    false,
                ));
                if let Some(k) = &eg.kappa {
                    let computed = g.kappa.as_ref().map(|k| k.value.clone());
                    out.push(field(
                        &format!("kappa {}", eg.config),
                        k.clone(),
                        show(computed),
                        true,
                    ));
                }
            }
            None => {
                let mut wanted = eg.config.clone();
                for extra in [&eg.srg, &eg.spectrum, &eg.polygon].into_iter().flatten() {
                    wanted += &format!(" {extra}");
                }
                if let Some(u) = eg.u {
                    wanted += &format!(" u={u}");
                }
                let got: Vec<String> = row
                    .geometries
                    .iter()
                    .filter(|g| g.configuration == eg.config)
                    .map(describe)
                    .collect();
                let computed = if got.is_empty() {
                    let all: Vec<&str> = row
                        .geometries
                        .iter()
                        .map(|g| g.configuration.as_str())
                        .collect();
                    format!("none of {}", all.join(" "))
                } else {
                    got.join("; ")
                };
                out.push(FieldCheck {
                    field: "geometry".to_string(),
                    expected: wanted,
                    computed,
                    ok: false,
                    soft: false,
                });
            }
        }
    }
    out
}

/// Compares one expected row with the best computed row of the same index
/// (and signature, when given).
pub fn compare(group: &str, exp: &ExpectedRow, rows: &[ReportRow]) -> RowCheck {
    let candidates: Vec<&ReportRow> = rows
        .iter()
        .filter(|r| r.index == exp.index)
        .filter(|r| {
            exp.signature
                .as_ref()
                .is_none_or(|s| r.signature.is_some_and(|x| x.to_string() == *s))
        })
        .collect();
    let label = exp.label.clone().unwrap_or_else(|| exp.index.to_string());
    let best = candidates
        .iter()
        .map(|r| (check_row(exp, r), *r))
        .min_by_key(|(c, _)| c.iter().filter(|f| !f.ok && !f.soft).count());
    match best {
        None => RowCheck {
            group: group.to_string(),
            source: exp.source.clone(),
            label,
            verdict: Verdict::Mismatch,
            reason: Some(match &exp.signature {
                Some(s) => format!("no computed row of index {} with signature {s}", exp.index),
                None => format!("no computed row of index {}", exp.index),
            }),
            matched: None,
            checks: Vec::new(),
        },
        Some((checks, row)) => RowCheck {
            group: group.to_string(),
            source: exp.source.clone(),
            label,
            verdict: if checks.iter().all(|c| c.ok || c.soft) {
                Verdict::Match
            } else {
                Verdict::Mismatch
            },
            reason: None,
            matched: Some(row.label.clone()),
            checks,
        },
    }
}
