//! Literature cross-validation: dictionary mentions in an abstract corpus,
//! an entity → document index, pairwise support reports, and path ranking.

mod corpus;
mod dictionary;
mod extract;
mod rank;
mod validate;

pub use corpus::{
    document_iri, load_literature, mentions_to_triples, precision_recall, read_corpus, AbstractDoc,
    CorpusIndex, LITERATURE_DATASET,
};
pub use dictionary::{build_dictionary, entity_iri, normalize_term, Dictionary, EntityKind};
pub use extract::{extract_mentions, Extractor, Mention};
pub use rank::{rank_paths_by_literature, PathLiteratureScore};
pub use validate::{associations, cross_validate, AssociationTemplates, ValidationReport};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LitError {
    #[error("dictionary: {0}")]
    Dictionary(String),
    #[error("{kind} term {term:?} maps to several ids: {}", ids.join(", "))]
    DictConflict {
        kind: EntityKind,
        term: String,
        ids: Vec<String>,
    },
    #[error("corpus line {line}: {message}")]
    Corpus { line: usize, message: String },
    #[error("duplicate pmid {0}")]
    DuplicatePmid(u64),
}
