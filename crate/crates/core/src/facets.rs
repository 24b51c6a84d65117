//! Facet counts over the entities of one graph.
//!
//! An entity is any subject in the graph other than the graph IRI itself
//! (which carries provenance). Values match filters by their lexical text,
//! so a bucket's `value` can be fed straight back as a filter.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::store::{Store, StoreError, TermId};
use crate::term::{Iri, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetFilter {
    pub predicate: Iri,
    pub value: String,
}

impl FacetFilter {
    pub fn new(predicate: Iri, value: impl Into<String>) -> Self {
        FacetFilter {
            predicate,
            value: value.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetBucket {
    pub value: String,
    pub term: Term,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetResult {
    pub field: Iri,
    /// Entities passing every filter, with or without the field.
    pub total: usize,
    /// Sorted by term. An entity with several values for the field counts
    /// once in each of their buckets.
    pub buckets: Vec<FacetBucket>,
}

impl FacetResult {
    pub fn count_of(&self, value: &str) -> usize {
        self.buckets.iter().find(|b| b.value == value).map_or(0, |b| b.count)
    }
}

/// Entities of `graph` that pass every filter, as store ids.
pub fn filtered_entities(store: &Store, graph: &Iri, filters: &[FacetFilter]) -> Result<BTreeSet<TermId>, StoreError> {
    if store.graph_info(graph).is_none() {
        return Err(StoreError::GraphUnknown(graph.clone()));
    }
    let Some(g) = store.iri_id(graph) else {
        return Ok(BTreeSet::new());
    };
    let mut entities: BTreeSet<TermId> = store
        .match_ids(None, None, None, Some(g))
        .into_iter()
        .map(|q| q[0])
        .filter(|&s| s != g)
        .collect();
    for f in filters {
        let Some(p) = store.iri_id(&f.predicate) else {
            return Ok(BTreeSet::new());
        };
        let passing: BTreeSet<TermId> = store
            .match_ids(None, Some(p), None, Some(g))
            .into_iter()
            .filter(|q| store.term(q[2]).text() == f.value)
            .map(|q| q[0])
            .collect();
        entities.retain(|s| passing.contains(s));
    }
    Ok(entities)
}

pub fn facet_counts(
    store: &Store,
    graph: &Iri,
    field: &Iri,
    filters: &[FacetFilter],
) -> Result<FacetResult, StoreError> {
    let entities = filtered_entities(store, graph, filters)?;
    let mut counts: BTreeMap<TermId, BTreeSet<TermId>> = BTreeMap::new();
    if let (Some(g), Some(p)) = (store.iri_id(graph), store.iri_id(field)) {
        for q in store.match_ids(None, Some(p), None, Some(g)) {
            if entities.contains(&q[0]) {
                counts.entry(q[2]).or_default().insert(q[0]);
            }
        }
    }
    let mut buckets: Vec<FacetBucket> = counts
        .into_iter()
        .map(|(v, subjects)| {
            let term = store.term(v).clone();
            FacetBucket {
                value: term.text().to_string(),
                term,
                count: subjects.len(),
            }
        })
        .collect();
    buckets.sort_by(|a, b| a.term.cmp(&b.term));
    Ok(FacetResult {
        field: field.clone(),
        total: entities.len(),
        buckets,
    })
}
