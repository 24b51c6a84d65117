//! Per-dataset provenance and the graph registry entry.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::term::{Iri, Literal, Term};
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("provenance field `{0}` must not be empty")]
pub struct ProvenanceError(pub &'static str);

/// What, when, where, why and who of one ingested dataset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceRecord {
    pub what: String,
    pub when: String,
    #[serde(rename = "where")]
    pub where_: String,
    pub why: String,
    pub who: String,
}

impl ProvenanceRecord {
    pub fn new(
        what: impl Into<String>,
        when: impl Into<String>,
        where_: impl Into<String>,
        why: impl Into<String>,
        who: impl Into<String>,
    ) -> Result<Self, ProvenanceError> {
        let record = ProvenanceRecord {
            what: what.into(),
            when: when.into(),
            where_: where_.into(),
            why: why.into(),
            who: who.into(),
        };
        record.validate()?;
        Ok(record)
    }

    pub fn validate(&self) -> Result<(), ProvenanceError> {
        for (name, value) in self.fields() {
            if value.trim().is_empty() {
                return Err(ProvenanceError(name));
            }
        }
        Ok(())
    }

    pub fn fields(&self) -> [(&'static str, &str); 5] {
        [
            ("what", &self.what),
            ("when", &self.when),
            ("where", &self.where_),
            ("why", &self.why),
            ("who", &self.who),
        ]
    }

    /// The five `(graph, prov:field, "value")` statements.
    pub fn statements(&self, graph: &Iri) -> Vec<(Iri, Iri, Term)> {
        self.fields()
            .iter()
            .map(|(name, value)| {
                (
                    graph.clone(),
                    vocab::prov(name),
                    Term::Literal(Literal::string(*value)),
                )
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Chemical,
    Chemogenomics,
    Biological,
    Systems,
    Phenotype,
    Literature,
}

impl Domain {
    pub const ALL: [Domain; 6] = [
        Domain::Chemical,
        Domain::Chemogenomics,
        Domain::Biological,
        Domain::Systems,
        Domain::Phenotype,
        Domain::Literature,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Domain::Chemical => "chemical",
            Domain::Chemogenomics => "chemogenomics",
            Domain::Biological => "biological",
            Domain::Systems => "systems",
            Domain::Phenotype => "phenotype",
            Domain::Literature => "literature",
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Domain {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Domain::ALL
            .into_iter()
            .find(|d| d.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown domain tag {s:?}"))
    }
}

/// A registered named graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInfo {
    pub graph: Iri,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<Domain>,
    pub provenance: ProvenanceRecord,
}

impl GraphInfo {
    pub fn new(graph: Iri, domain: Option<Domain>, provenance: ProvenanceRecord) -> Self {
        GraphInfo {
            graph,
            domain,
            provenance,
        }
    }
}
