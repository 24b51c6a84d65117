//! Abstract corpus, the entity → document index, and the literature graph.

use std::collections::{BTreeMap, BTreeSet};
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use super::extract::Mention;
use super::LitError;
use crate::provenance::{Domain, GraphInfo, ProvenanceRecord};
use crate::store::{Pattern, Store, StoreError, Triple};
use crate::term::{Iri, Literal};
use crate::vocab;

pub const LITERATURE_DATASET: &str = "literature";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbstractDoc {
    pub pmid: u64,
    pub year: i32,
    pub title: String,
    #[serde(default)]
    pub body: String,
}

impl AbstractDoc {
    pub fn new(pmid: u64, year: i32, title: &str, body: &str) -> Self {
        AbstractDoc {
            pmid,
            year,
            title: title.to_string(),
            body: body.to_string(),
        }
    }

    /// The text mention offsets refer to.
    pub fn text(&self) -> String {
        format!("{}\n{}", self.title, self.body)
    }
}

/// JSON lines, one document per line; blank lines are ignored.
pub fn read_corpus(reader: impl BufRead) -> Result<Vec<AbstractDoc>, LitError> {
    let mut docs = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| LitError::Corpus {
            line: i + 1,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let doc: AbstractDoc = serde_json::from_str(&line).map_err(|e| LitError::Corpus {
            line: i + 1,
            message: e.to_string(),
        })?;
        if !seen.insert(doc.pmid) {
            return Err(LitError::DuplicatePmid(doc.pmid));
        }
        docs.push(doc);
    }
    Ok(docs)
}

/// Resolved entity → documents mentioning it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CorpusIndex {
    postings: BTreeMap<Iri, BTreeSet<u64>>,
}

static EMPTY: BTreeSet<u64> = BTreeSet::new();

impl CorpusIndex {
    /// Mention entities are resolved through the store's sameAs classes.
    pub fn build(store: &Store, mentions: &[Mention]) -> Self {
        let mut postings: BTreeMap<Iri, BTreeSet<u64>> = BTreeMap::new();
        for m in mentions {
            postings
                .entry(store.resolve_entity(&m.entity))
                .or_default()
                .insert(m.pmid);
        }
        CorpusIndex { postings }
    }

    /// Rebuilds the index from a literature graph previously written by
    /// [`load_literature`].
    pub fn from_store(store: &Store) -> Self {
        let mut postings: BTreeMap<Iri, BTreeSet<u64>> = BTreeMap::new();
        let pattern = Pattern::any()
            .predicate(lit_pred("mentions"))
            .graph(vocab::graph_iri(LITERATURE_DATASET));
        for t in store.matches(&pattern) {
            let (Some(pmid), Some(e)) = (t.subject.local_name().parse::<u64>().ok(), t.object.as_iri()) else {
                continue;
            };
            postings.entry(store.resolve_entity(e)).or_default().insert(pmid);
        }
        CorpusIndex { postings }
    }

    pub fn len(&self) -> usize {
        self.postings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.postings.is_empty()
    }

    /// Documents for an already-resolved entity.
    pub fn documents(&self, entity: &Iri) -> &BTreeSet<u64> {
        self.postings.get(entity).unwrap_or(&EMPTY)
    }

    pub fn contains(&self, entity: &Iri) -> bool {
        self.postings.contains_key(entity)
    }

    pub fn entities(&self) -> impl Iterator<Item = (&Iri, &BTreeSet<u64>)> {
        self.postings.iter()
    }
}

/// Precision and recall of extracted `(pmid, entity)` pairs against a gold
/// set. Both are 1.0 when the respective denominator is empty.
pub fn precision_recall(found: &[Mention], gold: &BTreeSet<(u64, Iri)>) -> (f64, f64) {
    let got: BTreeSet<(u64, Iri)> = found.iter().map(|m| (m.pmid, m.entity.clone())).collect();
    let hit = got.intersection(gold).count() as f64;
    let p = if got.is_empty() { 1.0 } else { hit / got.len() as f64 };
    let r = if gold.is_empty() { 1.0 } else { hit / gold.len() as f64 };
    (p, r)
}

pub fn document_iri(pmid: u64) -> Iri {
    Iri::new(format!("{}{pmid}", vocab::entity_namespace("pmid"))).expect("pmid IRIs are valid")
}

fn lit_pred(local: &str) -> Iri {
    vocab::predicate(LITERATURE_DATASET, local)
}

/// Document metadata and `mentions` links for the literature graph.
pub fn mentions_to_triples(docs: &[AbstractDoc], mentions: &[Mention]) -> Vec<Triple> {
    let g = vocab::graph_iri(LITERATURE_DATASET);
    let mut out = Vec::new();
    for d in docs {
        let s = document_iri(d.pmid);
        out.push(Triple::new(s.clone(), lit_pred("title"), Literal::string(&d.title), g.clone()));
        out.push(Triple::new(s, lit_pred("year"), Literal::integer(d.year as i64), g.clone()));
    }
    let pairs: BTreeSet<(u64, &Iri)> = mentions.iter().map(|m| (m.pmid, &m.entity)).collect();
    for (pmid, e) in pairs {
        out.push(Triple::new(document_iri(pmid), lit_pred("mentions"), e.clone(), g.clone()));
    }
    out
}

/// Registers the literature graph and inserts its statements. Returns the
/// number of new statements.
pub fn load_literature(store: &mut Store, docs: &[AbstractDoc], mentions: &[Mention]) -> Result<usize, StoreError> {
    let g = vocab::graph_iri(LITERATURE_DATASET);
    let prov = ProvenanceRecord::new(
        "abstract corpus",
        "local",
        "dictionary extraction",
        "1",
        "text mining",
    )
    .expect("fixed provenance is complete");
    store.register_graph(GraphInfo::new(g.clone(), Some(Domain::Literature), prov.clone()));
    let mut added = 0;
    for (s, p, o) in prov.statements(&g) {
        added += store.insert(&Triple::new(s, p, o, g.clone()))? as usize;
    }
    for t in mentions_to_triples(docs, mentions) {
        added += store.insert(&t)? as usize;
    }
    Ok(added)
}
