//! Dataset manifests (TOML).
//!
//! ```toml
//! dataset = "drugbank_interaction"
//! domain = "chemogenomics"
//! source = "drugbank_interaction.tsv"
//!
//! [provenance]
//! what = "drug-target interactions"
//! when = "2009-11"
//! where = "https://www.drugbank.ca"
//! why = "approved drug targets"
//! who = "DrugBank"
//!
//! [[columns]]
//! column = "id"
//! role = "subject-id"
//! kind = "record"
//!
//! [[columns]]
//! column = "DBID"
//! predicate = "drugbank_interaction:DBID"
//! role = "object-id"
//! kind = "drug-local"
//! dataset = "drugbank_drug"
//! ```
//!
//! `dataset` on a column names the graph owning dataset-local identifiers
//! (defaults to the manifest's own dataset). `keep_local = true` emits the
//! kind-local IRI even when a hub mapping exists; the sameAs link is
//! written either way.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::identifier::IdKind;
use super::IngestError;
use crate::namespace::Namespaces;
use crate::provenance::{Domain, GraphInfo, ProvenanceRecord};
use crate::term::{Datatype, Iri};
use crate::vocab;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    SubjectId,
    ObjectId,
    Literal,
    Affinity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColumnSpec {
    pub column: String,
    #[serde(default)]
    pub predicate: Option<String>,
    pub role: Role,
    #[serde(default)]
    pub kind: Option<IdKind>,
    #[serde(default)]
    pub datatype: Option<String>,
    #[serde(default)]
    pub keep_local: bool,
    #[serde(default)]
    pub dataset: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetManifest {
    pub dataset: String,
    pub domain: Domain,
    #[serde(default)]
    pub source: Option<String>,
    #[serde(default)]
    pub prefixes: BTreeMap<String, String>,
    pub provenance: ProvenanceRecord,
    pub columns: Vec<ColumnSpec>,
}

/// A column with its predicate resolved and its role checked.
#[derive(Debug, Clone)]
pub(super) struct ResolvedColumn {
    pub column: String,
    pub index: usize,
    pub role: Role,
    pub predicate: Option<Iri>,
    pub kind: Option<IdKind>,
    pub datatype: Datatype,
    pub keep_local: bool,
    pub dataset: String,
}

impl DatasetManifest {
    pub fn from_toml(text: &str) -> Result<Self, IngestError> {
        let manifest: DatasetManifest =
            toml::from_str(text).map_err(|e| IngestError::Manifest(e.to_string()))?;
        manifest.validate()?;
        Ok(manifest)
    }

    pub fn from_file(path: &Path) -> Result<Self, IngestError> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn graph(&self) -> Iri {
        vocab::graph_iri(&self.dataset)
    }

    pub fn graph_info(&self) -> GraphInfo {
        GraphInfo::new(self.graph(), Some(self.domain), self.provenance.clone())
    }

    pub fn validate(&self) -> Result<(), IngestError> {
        let bad = |m: String| Err(IngestError::Manifest(m));
        if self.dataset.is_empty()
            || !self
                .dataset
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        {
            return bad(format!("dataset name {:?} must be [A-Za-z0-9_-]+", self.dataset));
        }
        self.provenance
            .validate()
            .map_err(|e| IngestError::Manifest(e.to_string()))?;
        let subjects = self.columns.iter().filter(|c| c.role == Role::SubjectId).count();
        if subjects != 1 {
            return bad(format!("expected exactly one subject-id column, found {subjects}"));
        }
        for c in &self.columns {
            let needs_kind = matches!(c.role, Role::SubjectId | Role::ObjectId);
            if needs_kind != c.kind.is_some() {
                return bad(format!(
                    "column {}: kind is {} for role {:?}",
                    c.column,
                    if needs_kind { "required" } else { "not allowed" },
                    c.role
                ));
            }
            if (c.role == Role::SubjectId) == c.predicate.is_some() {
                return bad(format!(
                    "column {}: subject-id columns take no predicate, all others need one",
                    c.column
                ));
            }
            if let Some(dt) = &c.datatype {
                if c.role != Role::Literal {
                    return bad(format!("column {}: datatype only applies to literals", c.column));
                }
                if Datatype::from_name(dt).is_none() {
                    return bad(format!("column {}: unknown datatype {dt:?}", c.column));
                }
            }
        }
        Ok(())
    }

    /// Prefix table for predicate names: the store's, overlaid with the
    /// manifest's own `[prefixes]`.
    pub fn namespaces(&self, base: &Namespaces) -> Namespaces {
        let mut ns = base.clone();
        for (p, n) in &self.prefixes {
            ns.insert(p, n);
        }
        ns
    }

    pub(super) fn resolve_columns(
        &self,
        header: &[String],
        base: &Namespaces,
    ) -> Result<Vec<ResolvedColumn>, IngestError> {
        let ns = self.namespaces(base);
        self.columns
            .iter()
            .map(|c| {
                let index = header
                    .iter()
                    .position(|h| h == &c.column)
                    .ok_or_else(|| IngestError::MissingColumn(c.column.clone()))?;
                let predicate = c
                    .predicate
                    .as_deref()
                    .map(|p| {
                        ns.resolve(p)
                            .map_err(|e| IngestError::Manifest(format!("predicate {p:?}: {e}")))
                    })
                    .transpose()?;
                Ok(ResolvedColumn {
                    column: c.column.clone(),
                    index,
                    role: c.role,
                    predicate,
                    kind: c.kind,
                    datatype: c
                        .datatype
                        .as_deref()
                        .and_then(Datatype::from_name)
                        .unwrap_or(Datatype::String),
                    keep_local: c.keep_local,
                    dataset: c.dataset.clone().unwrap_or_else(|| self.dataset.clone()),
                })
            })
            .collect()
    }
}
