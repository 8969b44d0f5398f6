//! Reference catalog: named groups with their input files and the values a
//! run is expected to reproduce.
//!
//! The catalog is a `catalog.toml` file next to the `.grp` and `.perm`
//! files it names. A copy of the shipped catalog is embedded in the
//! library; [`Catalog::load`] reads a user directory instead.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::textio::{
    parse_permutations, parse_presentation, ParseError, PermutationInput, Presentation,
};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog: {0}")]
    Syntax(String),
    #[error("catalog entry {entry:?}: {reason}")]
    Invalid { entry: String, reason: String },
    #[error("catalog entry {entry:?}: cannot read {file}: {reason}")]
    MissingFile {
        entry: String,
        file: String,
        reason: String,
    },
    #[error("catalog entry {entry:?}: {file}: {source}")]
    Parse {
        entry: String,
        file: String,
        #[source]
        source: ParseError,
    },
    #[error("no catalog entry named {0:?}")]
    UnknownEntry(String),
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Catalog {
    #[serde(rename = "group", default)]
    pub groups: Vec<CatalogEntry>,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub name: String,
    pub presentation: Option<String>,
    pub permutations: Option<String>,
    /// Low-index bound for presentations.
    pub max_index: Option<usize>,
    /// Only run on request.
    #[serde(default)]
    pub extended: bool,
    pub note: Option<String>,
    #[serde(default)]
    pub expect: Vec<ExpectedRow>,
}

/// Values for one permutation representation, each copied from `source`.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedRow {
    pub source: String,
    pub label: Option<String>,
    pub index: usize,
    pub rank: Option<usize>,
    pub m: Option<usize>,
    pub subdegrees: Option<Vec<usize>>,
    /// `(B,W,F,g)`.
    pub signature: Option<String>,
    pub passport: Option<String>,
    pub stabilizer_orders: Option<Vec<u128>>,
    #[serde(default)]
    pub geometries: Vec<ExpectedGeometry>,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedGeometry {
    /// `[p_a, l_b]` as printed by the geometry module.
    pub config: String,
    pub srg: Option<String>,
    pub spectrum: Option<String>,
    pub polygon: Option<String>,
    pub u: Option<usize>,
    /// Three decimals; compared softly.
    pub kappa: Option<String>,
}

/// The parsed input of a catalog entry.
#[derive(Clone, Debug)]
pub enum GroupSource {
    Presentation(Presentation),
    Permutations(PermutationInput),
    /// Listed for reference only.
    Unavailable,
}

const EMBEDDED: &[(&str, &str)] = &[
    (
        "catalog.toml",
        include_str!("../../../catalog/catalog.toml"),
    ),
    ("A5.grp", include_str!("../../../catalog/A5.grp")),
    ("A6.grp", include_str!("../../../catalog/A6.grp")),
    ("S4_3.grp", include_str!("../../../catalog/S4_3.grp")),
    ("S6_2.grp", include_str!("../../../catalog/S6_2.grp")),
    ("Hurwitz.grp", include_str!("../../../catalog/Hurwitz.grp")),
    ("A5_10.perm", include_str!("../../../catalog/A5_10.perm")),
    ("A8_35.perm", include_str!("../../../catalog/A8_35.perm")),
];

/// Where entry files are read from.
#[derive(Clone, Debug)]
enum Origin {
    Embedded,
    Directory(PathBuf),
}

/// A catalog together with the place its files live.
#[derive(Clone, Debug)]
pub struct LoadedCatalog {
    pub catalog: Catalog,
    origin: Origin,
}

impl Catalog {
    /// Parses and validates `catalog.toml` text.
    pub fn parse(text: &str) -> Result<Catalog, CatalogError> {
        let catalog: Catalog =
            toml::from_str(text).map_err(|e| CatalogError::Syntax(e.message().to_string()))?;
        catalog.validate()?;
        Ok(catalog)
    }

    fn validate(&self) -> Result<(), CatalogError> {
        let mut names = std::collections::HashSet::new();
        for e in &self.groups {
            let invalid = |reason: &str| CatalogError::Invalid {
                entry: e.name.clone(),
                reason: reason.to_string(),
            };
            if e.name.trim().is_empty() {
                return Err(invalid("empty name"));
            }
            if !names.insert(e.name.as_str()) {
                return Err(invalid("duplicate name"));
            }
            if e.presentation.is_some() && e.permutations.is_some() {
                return Err(invalid(
                    "give a presentation or a permutation file, not both",
                ));
            }
            if e.presentation.is_some() && e.max_index.is_none() {
                return Err(invalid("a presentation needs max_index"));
            }
            for row in &e.expect {
                if row.source.trim().is_empty() {
                    return Err(invalid("every expected row needs a source"));
                }
                if row.index == 0 {
                    return Err(invalid("index must be positive"));
                }
            }
        }
        Ok(())
    }

    pub fn embedded() -> LoadedCatalog {
        LoadedCatalog {
            catalog: Catalog::parse(EMBEDDED[0].1).expect("embedded catalog is valid"),
            origin: Origin::Embedded,
        }
    }

    /// Reads `dir/catalog.toml`; entry files are resolved against `dir`.
    pub fn load(dir: &Path) -> Result<LoadedCatalog, CatalogError> {
        let path = dir.join("catalog.toml");
        let text = std::fs::read_to_string(&path).map_err(|e| CatalogError::MissingFile {
            entry: String::new(),
            file: path.display().to_string(),
            reason: e.to_string(),
        })?;
        Ok(LoadedCatalog {
            catalog: Catalog::parse(&text)?,
            origin: Origin::Directory(dir.to_path_buf()),
        })
    }
}

impl LoadedCatalog {
    pub fn entry(&self, name: &str) -> Result<&CatalogEntry, CatalogError> {
        self.catalog
            .groups
            .iter()
            .find(|e| e.name.eq_ignore_ascii_case(name))
            .ok_or_else(|| CatalogError::UnknownEntry(name.to_string()))
    }

    fn read(&self, entry: &CatalogEntry, file: &str) -> Result<String, CatalogError> {
        let missing = |reason: String| CatalogError::MissingFile {
            entry: entry.name.clone(),
            file: file.to_string(),
            reason,
        };
        match &self.origin {
            Origin::Embedded => EMBEDDED
                .iter()
                .find(|(n, _)| *n == file)
                .map(|(_, t)| t.to_string())
                .ok_or_else(|| missing("not embedded".to_string())),
            Origin::Directory(dir) => {
                std::fs::read_to_string(dir.join(file)).map_err(|e| missing(e.to_string()))
            }
        }
    }

    /// Reads and parses the entry's input file.
    pub fn source(&self, entry: &CatalogEntry) -> Result<GroupSource, CatalogError> {
        let parse_err = |file: &str, source| CatalogError::Parse {
            entry: entry.name.clone(),
            file: file.to_string(),
            source,
        };
        if let Some(f) = &entry.presentation {
            let text = self.read(entry, f)?;
            return parse_presentation(&text)
                .map(GroupSource::Presentation)
                .map_err(|e| parse_err(f, e));
        }
        if let Some(f) = &entry.permutations {
            let text = self.read(entry, f)?;
            return parse_permutations(&text)
                .map(GroupSource::Permutations)
                .map_err(|e| parse_err(f, e));
        }
        Ok(GroupSource::Unavailable)
    }
}
