//! Prefix table used to expand and compact prefixed names.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::term::{Iri, TermError};
use crate::vocab;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Namespaces {
    prefixes: BTreeMap<String, String>,
}

impl Namespaces {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The built-in vocabulary: W3C prefixes, entity hubs and the dataset
    /// predicate namespaces.
    pub fn standard() -> Self {
        let mut ns = Self::empty();
        ns.insert("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#");
        ns.insert("rdfs", "http://www.w3.org/2000/01/rdf-schema#");
        ns.insert("owl", "http://www.w3.org/2002/07/owl#");
        ns.insert("xsd", crate::term::XSD);
        for kind in vocab::ENTITY_PREFIXES {
            ns.insert(kind, &vocab::entity_namespace(kind));
        }
        for dataset in vocab::DATASET_PREFIXES {
            ns.insert(dataset, &vocab::dataset_namespace(dataset));
        }
        ns.insert("prov", vocab::PROV_NS);
        ns.insert("graph", &format!("{}graph/", vocab::BASE));
        ns
    }

    pub fn insert(&mut self, prefix: &str, namespace: &str) {
        self.prefixes
            .insert(prefix.to_string(), namespace.to_string());
    }

    pub fn get(&self, prefix: &str) -> Option<&str> {
        self.prefixes.get(prefix).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.prefixes.iter().map(|(p, n)| (p.as_str(), n.as_str()))
    }

    pub fn extend(&mut self, other: &Namespaces) {
        for (p, n) in other.iter() {
            self.insert(p, n);
        }
    }

    /// Expand `prefix:local`; `None` when the prefix is not registered.
    pub fn expand(&self, prefix: &str, local: &str) -> Option<String> {
        self.get(prefix).map(|ns| format!("{ns}{local}"))
    }

    /// Accepts `<iri>`, a prefixed name, or an absolute IRI.
    pub fn resolve(&self, text: &str) -> Result<Iri, TermError> {
        let text = text.trim();
        if let Some(inner) = text.strip_prefix('<').and_then(|t| t.strip_suffix('>')) {
            return Iri::new(inner);
        }
        if let Some((prefix, local)) = text.split_once(':') {
            if let Some(expanded) = self.expand(prefix, local) {
                return Iri::new(expanded);
            }
        }
        Iri::new(text)
    }

    /// Split an IRI into `(prefix, local)` using the longest matching
    /// namespace.
    pub fn split<'a>(&'a self, iri: &'a Iri) -> Option<(&'a str, &'a str)> {
        self.prefixes
            .iter()
            .filter(|(_, ns)| iri.as_str().starts_with(ns.as_str()))
            .max_by_key(|(_, ns)| ns.len())
            .map(|(p, ns)| (p.as_str(), &iri.as_str()[ns.len()..]))
    }

    pub fn compact(&self, iri: &Iri) -> String {
        match self.split(iri) {
            Some((p, local)) if is_plain_local(local) => format!("{p}:{local}"),
            _ => format!("<{iri}>"),
        }
    }
}

fn is_plain_local(local: &str) -> bool {
    !local.is_empty()
        && !local.ends_with('.')
        && local
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
}
