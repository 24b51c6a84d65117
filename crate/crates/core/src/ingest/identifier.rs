//! Identifier normalization and hub mapping.
//!
//! Compounds are keyed by PubChem CID and proteins by UniProt accession.
//! GI numbers and gene symbols are converted through the `gi2uniprot` and
//! `gene2uniprot` mapping tables when they are loaded.

use std::fmt;

use percent_encoding::{utf8_percent_encode, AsciiSet, NON_ALPHANUMERIC};
use serde::{Deserialize, Serialize};

use super::IngestError;
use crate::store::Store;
use crate::term::{Iri, Term};
use crate::vocab;

/// Characters kept verbatim in identifier path segments.
const SEGMENT: &AsciiSet = &NON_ALPHANUMERIC.remove(b'-').remove(b'_').remove(b'.').remove(b'~');

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdKind {
    Cid,
    Uniprot,
    Gi,
    GeneSymbol,
    Pdb,
    Pathway,
    DrugLocal,
    DiseaseName,
    SideEffectName,
    /// Row identifier local to a dataset.
    Record,
}

impl IdKind {
    pub fn name(self) -> &'static str {
        match self {
            IdKind::Cid => "cid",
            IdKind::Uniprot => "uniprot",
            IdKind::Gi => "gi",
            IdKind::GeneSymbol => "gene-symbol",
            IdKind::Pdb => "pdb",
            IdKind::Pathway => "pathway",
            IdKind::DrugLocal => "drug-local",
            IdKind::DiseaseName => "disease-name",
            IdKind::SideEffectName => "side-effect-name",
            IdKind::Record => "record",
        }
    }

    /// Kinds whose IRIs live under a dataset graph rather than an entity
    /// namespace.
    pub fn is_dataset_local(self) -> bool {
        matches!(self, IdKind::DrugLocal | IdKind::Record)
    }

    /// `(table dataset, key predicate, hub predicate)` for kinds with a
    /// conversion table.
    fn mapping_table(self) -> Option<(&'static str, &'static str, &'static str)> {
        match self {
            IdKind::Gi => Some(("gi2uniprot", "gi", "uniprot")),
            IdKind::GeneSymbol => Some(("gene2uniprot", "gene", "uniprot")),
            _ => None,
        }
    }
}

impl fmt::Display for IdKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of mapping one raw identifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappedId {
    /// Kind-local IRI.
    pub local: Iri,
    /// Hub IRI from a mapping table, if one applies.
    pub hub: Option<Iri>,
}

impl MappedId {
    /// Hub form when known, else the local form.
    pub fn preferred(&self) -> &Iri {
        self.hub.as_ref().unwrap_or(&self.local)
    }
}

fn encode(value: &str) -> String {
    utf8_percent_encode(value, SEGMENT).to_string()
}

fn normalize_name(value: &str) -> String {
    value.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

/// Canonical text of a raw identifier, or `None` if it is unusable.
pub fn normalize_value(kind: IdKind, value: &str) -> Option<String> {
    let v = value.trim();
    if v.is_empty() {
        return None;
    }
    let out = match kind {
        IdKind::Cid => {
            let digits = v
                .strip_prefix("CID")
                .or_else(|| v.strip_prefix("cid"))
                .unwrap_or(v)
                .trim_start_matches([':', ' ']);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            let trimmed = digits.trim_start_matches('0');
            if trimmed.is_empty() { "0" } else { trimmed }.to_string()
        }
        IdKind::Gi => {
            let digits = v.strip_prefix("gi|").or_else(|| v.strip_prefix("GI:")).unwrap_or(v);
            if !digits.bytes().all(|b| b.is_ascii_digit()) || digits.is_empty() {
                return None;
            }
            digits.to_string()
        }
        IdKind::Uniprot | IdKind::GeneSymbol | IdKind::Pdb => v.to_uppercase(),
        IdKind::DiseaseName | IdKind::SideEffectName => normalize_name(v),
        IdKind::Pathway | IdKind::DrugLocal | IdKind::Record => v.to_string(),
    };
    Some(out)
}

/// Kind-local IRI for a normalized value. `dataset` names the owning graph
/// of dataset-local kinds.
pub fn local_iri(kind: IdKind, normalized: &str, dataset: &str) -> Iri {
    let ns = match kind {
        IdKind::Cid => vocab::entity_namespace("cid"),
        IdKind::Uniprot => vocab::entity_namespace("uniprot"),
        IdKind::Gi => vocab::entity_namespace("gi"),
        IdKind::GeneSymbol => vocab::entity_namespace("gene"),
        IdKind::Pdb => vocab::entity_namespace("pdb"),
        IdKind::Pathway => vocab::entity_namespace("pathway"),
        IdKind::DiseaseName => vocab::entity_namespace("disease"),
        IdKind::SideEffectName => vocab::entity_namespace("side_effect"),
        IdKind::DrugLocal => format!("{}/drug/", vocab::graph_iri(dataset)),
        IdKind::Record => format!("{}/record/", vocab::graph_iri(dataset)),
    };
    Iri::new(format!("{ns}{}", encode(normalized))).expect("encoded identifiers are IRI-safe")
}

/// Maps a raw identifier to its IRI, consulting mapping tables already in
/// `store`. Tables are never consulted while loading the table's own graph.
pub fn map_identifier(
    store: &Store,
    kind: IdKind,
    value: &str,
    dataset: &str,
) -> Result<MappedId, IngestError> {
    let normalized = normalize_value(kind, value).ok_or_else(|| IngestError::BadId {
        kind,
        value: value.to_string(),
    })?;
    let local = local_iri(kind, &normalized, dataset);
    let hub = match kind.mapping_table() {
        Some((table, _, _)) if table == dataset => None,
        Some((table, key, target)) => lookup_hub(store, &local, table, key, target),
        None => None,
    };
    Ok(MappedId { local, hub })
}

/// Smallest hub IRI reachable from `local` through one mapping record.
fn lookup_hub(store: &Store, local: &Iri, table: &str, key: &str, target: &str) -> Option<Iri> {
    let local_id = store.iri_id(local)?;
    let key_p = store.iri_id(&vocab::predicate(table, key))?;
    let target_p = store.iri_id(&vocab::predicate(table, target))?;
    store
        .match_ids(None, Some(key_p), Some(local_id), None)
        .into_iter()
        .flat_map(|rec| store.match_ids(Some(rec[0]), Some(target_p), None, None))
        .filter_map(|q| match store.term(q[2]) {
            Term::Iri(iri) => Some(iri.clone()),
            Term::Literal(_) => None,
        })
        .min()
}
