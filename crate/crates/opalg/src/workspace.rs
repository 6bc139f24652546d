//! Named-object workspaces loaded from JSON.
//!
//! A workspace file declares matrices, algebras, and module actions under
//! names that command invocations can refer to.  The schema:
//!
//! ```json
//! {
//!   "tolerance": { "rank_rel": 1e-9, "match_abs": 1e-8 },
//!   "matrices": {
//!     "T": { "rows": 1, "cols": 1, "entries": [[0.5, 0.0]] }
//!   },
//!   "algebras": {
//!     "A": { "generators": ["T"], "mode": "unital" }
//!   },
//!   "representations": {
//!     "H": { "t2": { "T": "T" } },
//!     "K": { "t2": { "kind": "b", "dim": 2 } },
//!     "U": { "ux": { "alpha": ["T"] } },
//!     "R": { "algebra": "A" }
//!   }
//! }
//! ```
//!
//! Matrix entries are `[re, im]` pairs in row-major order — the same layout
//! the library's own serialization produces, so emitted matrices can be fed
//! back in.  Representations come in three forms: an action of a named
//! algebra (`algebra`, acting on its own underlying space by default, or
//! through explicit `images` listing one matrix per basis element in basis
//! order), a two-block action given by its corner matrix (or by a one-sided
//! kind), and a corner-space action given by its defining tuple.  Every
//! resolution error names the offending key path.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::algebra::MatrixAlgebra;
use crate::error::{Error, Result};
use crate::families::{t2, ux};
use crate::hilbmod::Representation;
use crate::linalg::{CMatrix, Tolerance};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WorkspaceFile {
    #[serde(default)]
    tolerance: Option<ToleranceEntry>,
    #[serde(default)]
    matrices: BTreeMap<String, MatrixEntry>,
    #[serde(default)]
    algebras: BTreeMap<String, AlgebraEntry>,
    #[serde(default)]
    representations: BTreeMap<String, RepresentationEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ToleranceEntry {
    #[serde(default)]
    rank_rel: Option<f64>,
    #[serde(default)]
    match_abs: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixEntry {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraEntry {
    generators: Vec<String>,
    #[serde(default)]
    mode: ClosureMode,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum ClosureMode {
    #[default]
    Plain,
    Unital,
    Star,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RepresentationEntry {
    TwoBlock {
        t2: TwoBlockEntry,
    },
    CornerSpace {
        ux: CornerSpaceEntry,
    },
    Images {
        algebra: String,
        #[serde(default)]
        images: Option<Vec<String>>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TwoBlockEntry {
    #[serde(rename = "T", default)]
    t: Option<String>,
    #[serde(default)]
    kind: Option<t2::T2Kind>,
    #[serde(default)]
    dim: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CornerSpaceEntry {
    alpha: Vec<String>,
}

/// A fully resolved workspace: every named object validated and built.
pub struct Workspace {
    tolerance: Tolerance,
    matrices: BTreeMap<String, CMatrix>,
    algebras: BTreeMap<String, Arc<MatrixAlgebra>>,
    representations: BTreeMap<String, Representation>,
}

impl Workspace {
    /// An empty workspace carrying only a tolerance; lets commands that
    /// need no named objects run without a file.
    pub fn empty(tolerance: Tolerance) -> Self {
        Workspace {
            tolerance,
            matrices: BTreeMap::new(),
            algebras: BTreeMap::new(),
            representations: BTreeMap::new(),
        }
    }

    /// Loads and resolves a workspace file.  `rank_override` and
    /// `match_override` take precedence over the file's tolerance block.
    pub fn load(
        path: &Path,
        rank_override: Option<f64>,
        match_override: Option<f64>,
    ) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Workspace(format!("cannot read {}: {e}", path.display()))
        })?;
        Self::from_json(&text, rank_override, match_override)
    }

    /// Parses and resolves workspace JSON.
    pub fn from_json(
        text: &str,
        rank_override: Option<f64>,
        match_override: Option<f64>,
    ) -> Result<Self> {
        let file: WorkspaceFile = serde_json::from_str(text)
            .map_err(|e| Error::Workspace(format!("invalid workspace JSON: {e}")))?;

        let defaults = Tolerance::default();
        let rank_rel = rank_override
            .or(file.tolerance.as_ref().and_then(|t| t.rank_rel))
            .unwrap_or(defaults.rank_rel);
        let match_abs = match_override
            .or(file.tolerance.as_ref().and_then(|t| t.match_abs))
            .unwrap_or(defaults.match_abs);
        let tolerance = Tolerance::new(rank_rel, match_abs)?;

        let mut matrices = BTreeMap::new();
        for (name, entry) in &file.matrices {
            matrices.insert(name.clone(), resolve_matrix(name, entry)?);
        }

        let mut ws = Workspace {
            tolerance,
            matrices,
            algebras: BTreeMap::new(),
            representations: BTreeMap::new(),
        };

        for (name, entry) in &file.algebras {
            let gens = ws.matrix_list(&entry.generators, &format!("algebras.{name}"))?;
            let algebra = match entry.mode {
                ClosureMode::Plain => MatrixAlgebra::generate(&gens, tolerance),
                ClosureMode::Unital => MatrixAlgebra::generate_unital(&gens, tolerance),
                ClosureMode::Star => MatrixAlgebra::star_closure(&gens, tolerance),
            }
            .map_err(|e| Error::Workspace(format!("algebras.{name}: {e}")))?;
            ws.algebras.insert(name.clone(), Arc::new(algebra));
        }

        for (name, entry) in &file.representations {
            let rep = ws.resolve_representation(name, entry)?;
            ws.representations.insert(name.clone(), rep);
        }
        Ok(ws)
    }

    fn resolve_representation(
        &self,
        name: &str,
        entry: &RepresentationEntry,
    ) -> Result<Representation> {
        let context = format!("representations.{name}");
        match entry {
            RepresentationEntry::TwoBlock { t2: block } => {
                let algebra = t2::t2_algebra(self.tolerance)?;
                match (&block.t, block.kind) {
                    (Some(t_name), kind) => {
                        if matches!(kind, Some(k) if k != t2::T2Kind::A) {
                            return Err(Error::Workspace(format!(
                                "{context}: a corner matrix fixes kind 'a'; drop the kind field"
                            )));
                        }
                        let t = self.matrix_in(t_name, &context)?;
                        t2::build_t2(&algebra, t, self.tolerance)
                            .map_err(|e| Error::Workspace(format!("{context}: {e}")))
                    }
                    (None, Some(kind)) => {
                        t2::build_t2_kind(&algebra, kind, None, block.dim, self.tolerance)
                            .map_err(|e| Error::Workspace(format!("{context}: {e}")))
                    }
                    (None, None) => Err(Error::Workspace(format!(
                        "{context}: a two-block action needs either a corner matrix T or a kind"
                    ))),
                }
            }
            RepresentationEntry::CornerSpace { ux: corner } => {
                let alphas = self.matrix_list(&corner.alpha, &context)?;
                let algebra = ux::ux_algebra(alphas.len(), self.tolerance)
                    .map_err(|e| Error::Workspace(format!("{context}: {e}")))?;
                ux::build_ux(&algebra, &alphas, self.tolerance)
                    .map_err(|e| Error::Workspace(format!("{context}: {e}")))
            }
            RepresentationEntry::Images { algebra, images } => {
                let algebra = self
                    .algebra(algebra)
                    .map_err(|e| Error::Workspace(format!("{context}: {e}")))?;
                match images {
                    None => Ok(Representation::identity_rep(Arc::clone(algebra))),
                    Some(names) => {
                        let images = self.matrix_list(names, &context)?;
                        Representation::new(Arc::clone(algebra), images, self.tolerance)
                            .map_err(|e| Error::Workspace(format!("{context}: {e}")))
                    }
                }
            }
        }
    }

    fn matrix_in(&self, name: &str, context: &str) -> Result<&CMatrix> {
        self.matrices.get(name).ok_or_else(|| {
            Error::Workspace(format!(
                "{context}: unknown matrix '{name}' (available: {})",
                keys_or_none(&self.matrices)
            ))
        })
    }

    fn matrix_list(&self, names: &[String], context: &str) -> Result<Vec<CMatrix>> {
        names
            .iter()
            .map(|n| self.matrix_in(n, context).cloned())
            .collect()
    }

    /// The workspace tolerance after all overrides.
    pub fn tolerance(&self) -> Tolerance {
        self.tolerance
    }

    /// Looks up a named matrix.
    pub fn matrix(&self, name: &str) -> Result<&CMatrix> {
        self.matrices.get(name).ok_or_else(|| {
            Error::Workspace(format!(
                "unknown matrix '{name}' (available: {})",
                keys_or_none(&self.matrices)
            ))
        })
    }

    /// Looks up several named matrices.
    pub fn matrices(&self, names: &[String]) -> Result<Vec<CMatrix>> {
        names.iter().map(|n| self.matrix(n).cloned()).collect()
    }

    /// Looks up a named algebra.
    pub fn algebra(&self, name: &str) -> Result<&Arc<MatrixAlgebra>> {
        self.algebras.get(name).ok_or_else(|| {
            Error::Workspace(format!(
                "unknown algebra '{name}' (available: {})",
                keys_or_none(&self.algebras)
            ))
        })
    }

    /// Looks up a named representation.
    pub fn representation(&self, name: &str) -> Result<&Representation> {
        self.representations.get(name).ok_or_else(|| {
            Error::Workspace(format!(
                "unknown representation '{name}' (available: {})",
                keys_or_none(&self.representations)
            ))
        })
    }
}

fn resolve_matrix(name: &str, entry: &MatrixEntry) -> Result<CMatrix> {
    let expected = entry.rows * entry.cols;
    if entry.entries.len() != expected {
        return Err(Error::Workspace(format!(
            "matrices.{name}: {} entries given, but a {}x{} matrix needs {expected}",
            entry.entries.len(),
            entry.rows,
            entry.cols
        )));
    }
    let data = entry
        .entries
        .iter()
        .map(|[re, im]| num_complex::Complex64::new(*re, *im))
        .collect();
    CMatrix::new(entry.rows, entry.cols, data)
        .map_err(|e| Error::Workspace(format!("matrices.{name}: {e}")))
}

fn keys_or_none<V>(map: &BTreeMap<String, V>) -> String {
    if map.is_empty() {
        "none".into()
    } else {
        map.keys().cloned().collect::<Vec<_>>().join(", ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolves_every_kind_of_object() {
        let text = r#"{
            "tolerance": { "match_abs": 1e-7 },
            "matrices": {
                "half": { "rows": 1, "cols": 1, "entries": [[0.5, 0.0]] },
                "corner": { "rows": 2, "cols": 2,
                            "entries": [[0.0,0.0],[1.0,0.0],[0.0,0.0],[0.0,0.0]] }
            },
            "algebras": {
                "upper": { "generators": ["corner"], "mode": "unital" }
            },
            "representations": {
                "flat": { "t2": { "T": "half" } },
                "left": { "t2": { "kind": "b", "dim": 2 } },
                "cs": { "ux": { "alpha": ["half"] } },
                "idact": { "algebra": "upper" }
            }
        }"#;
        let ws = Workspace::from_json(text, None, None).unwrap();
        assert_eq!(ws.tolerance().match_abs, 1e-7);
        assert_eq!(ws.matrix("half").unwrap().rows(), 1);
        // Unital closure of a square-zero generator: span{I, E12}.
        assert_eq!(ws.algebra("upper").unwrap().dim(), 2);
        assert_eq!(ws.representation("flat").unwrap().dim_h(), 2);
        assert_eq!(ws.representation("left").unwrap().dim_h(), 2);
        assert_eq!(ws.representation("cs").unwrap().dim_h(), 2);
        assert_eq!(ws.representation("idact").unwrap().dim_h(), 2);
    }

    #[test]
    fn flag_overrides_beat_the_file() {
        let text = r#"{ "tolerance": { "rank_rel": 1e-6, "match_abs": 1e-6 } }"#;
        let ws = Workspace::from_json(text, Some(1e-10), None).unwrap();
        assert_eq!(ws.tolerance().rank_rel, 1e-10);
        assert_eq!(ws.tolerance().match_abs, 1e-6);
    }

    #[test]
    fn errors_carry_key_paths() {
        let bad_count = r#"{ "matrices": { "m": { "rows": 2, "cols": 2, "entries": [[1.0,0.0]] } } }"#;
        let err = Workspace::from_json(bad_count, None, None).err().unwrap();
        assert!(err.to_string().contains("matrices.m"), "{err}");

        let bad_ref = r#"{
            "matrices": { "a": { "rows": 1, "cols": 1, "entries": [[1.0,0.0]] } },
            "representations": { "r": { "t2": { "T": "missing" } } }
        }"#;
        let err = Workspace::from_json(bad_ref, None, None).err().unwrap();
        let msg = err.to_string();
        assert!(msg.contains("representations.r") && msg.contains("missing"), "{msg}");

        let not_json = "{";
        let err = Workspace::from_json(not_json, None, None).err().unwrap();
        assert!(matches!(err, Error::Workspace(_)));

        let empty = Workspace::from_json("{}", None, None).unwrap();
        assert!(empty.matrix("x").is_err());
    }

    #[test]
    fn two_block_entries_validate_kind_and_corner_consistency() {
        let conflicting = r#"{
            "matrices": { "t": { "rows": 1, "cols": 1, "entries": [[0.5,0.0]] } },
            "representations": { "r": { "t2": { "T": "t", "kind": "b" } } }
        }"#;
        assert!(Workspace::from_json(conflicting, None, None).is_err());

        let neither = r#"{ "representations": { "r": { "t2": {} } } }"#;
        assert!(Workspace::from_json(neither, None, None).is_err());
    }
}
