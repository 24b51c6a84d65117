use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::LitError;
use crate::ingest::{local_iri, normalize_value, read_tsv, IdKind};
use crate::term::Iri;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntityKind {
    Compound,
    Gene,
    Disease,
    SideEffect,
}

impl EntityKind {
    pub const ALL: [EntityKind; 4] = [
        EntityKind::Compound,
        EntityKind::Gene,
        EntityKind::Disease,
        EntityKind::SideEffect,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EntityKind::Compound => "compound",
            EntityKind::Gene => "gene",
            EntityKind::Disease => "disease",
            EntityKind::SideEffect => "side_effect",
        }
    }

    fn id_kind(self) -> IdKind {
        match self {
            EntityKind::Compound => IdKind::Cid,
            EntityKind::Gene => IdKind::Uniprot,
            EntityKind::Disease => IdKind::DiseaseName,
            EntityKind::SideEffect => IdKind::SideEffectName,
        }
    }
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EntityKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().replace('-', "_").to_lowercase();
        EntityKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown entity kind {s:?}"))
    }
}

/// Case fold used for both dictionary terms and documents; one char in,
/// one char out, so character offsets survive folding.
pub fn fold_char(c: char) -> char {
    c.to_lowercase().next().unwrap_or(c)
}

/// Trim, collapse internal whitespace to single spaces, fold case.
pub fn normalize_term(term: &str) -> String {
    term.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .chars()
        .map(fold_char)
        .collect()
}

/// Normalized surface terms of one entity kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dictionary {
    pub kind: EntityKind,
    entries: BTreeMap<String, Iri>,
}

impl Dictionary {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, term: &str) -> Option<&Iri> {
        self.entries.get(&normalize_term(term))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &Iri)> {
        self.entries.iter().map(|(t, i)| (t.as_str(), i))
    }

    /// Reads a two-column `term<TAB>id` file with a header row.
    pub fn from_tsv(kind: EntityKind, reader: impl Read) -> Result<Self, LitError> {
        let table = read_tsv(reader).map_err(|e| LitError::Dictionary(e.to_string()))?;
        let rows: Vec<(String, String)> = table
            .rows
            .into_iter()
            .filter(|r| r.len() >= 2)
            .map(|r| (r[0].clone(), r[1].clone()))
            .collect();
        build_dictionary(kind, &rows)
    }
}

/// Entity IRI for a dictionary id: absolute IRIs are kept, bare ids go into
/// the kind's entity namespace.
pub fn entity_iri(kind: EntityKind, id: &str) -> Result<Iri, LitError> {
    let id = id.trim();
    if id.contains("://") || id.starts_with("urn:") {
        return Iri::new(id).map_err(|e| LitError::Dictionary(e.to_string()));
    }
    let ik = kind.id_kind();
    let normalized = normalize_value(ik, id)
        .ok_or_else(|| LitError::Dictionary(format!("bad {kind} id {id:?}")))?;
    Ok(local_iri(ik, &normalized, ""))
}

pub fn build_dictionary(kind: EntityKind, rows: &[(String, String)]) -> Result<Dictionary, LitError> {
    if rows.is_empty() {
        return Err(LitError::Dictionary(format!("{kind} term table is empty")));
    }
    let mut entries: BTreeMap<String, Iri> = BTreeMap::new();
    for (term, id) in rows {
        let t = normalize_term(term);
        if t.is_empty() {
            return Err(LitError::Dictionary(format!("empty term for id {id:?}")));
        }
        let iri = entity_iri(kind, id)?;
        match entries.get(&t) {
            Some(existing) if *existing != iri => {
                return Err(LitError::DictConflict {
                    kind,
                    term: t,
                    ids: vec![existing.to_string(), iri.to_string()],
                })
            }
            Some(_) => {}
            None => {
                entries.insert(t, iri);
            }
        }
    }
    Ok(Dictionary { kind, entries })
}
