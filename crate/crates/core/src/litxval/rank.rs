//! Ordering link paths by how much literature backs their chains.

use std::collections::BTreeSet;

use serde::Serialize;

use super::corpus::CorpusIndex;
use crate::linkpath::{LinkPath, LinkResult};
use crate::store::Store;
use crate::term::Iri;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathLiteratureScore {
    pub path: LinkPath,
    /// Distinct documents co-mentioning two consecutive chain entities.
    pub score: usize,
}

/// Scores every executed path. Chain elements are resolved; elements that
/// no document mentions (records, literals) are dropped before pairing, so
/// "consecutive" means adjacent among the indexed entities. Sorted by score
/// descending, then node sequence.
pub fn rank_paths_by_literature(store: &Store, index: &CorpusIndex, result: &LinkResult) -> Vec<PathLiteratureScore> {
    let mut out: Vec<PathLiteratureScore> = result
        .runs
        .iter()
        .map(|run| {
            let mut docs: BTreeSet<u64> = BTreeSet::new();
            for chain in &run.chains {
                let entities: Vec<Iri> = chain
                    .iter()
                    .filter_map(|t| t.as_iri())
                    .map(|i| store.resolve_entity(i))
                    .filter(|i| index.contains(i))
                    .collect();
                for w in entities.windows(2) {
                    if w[0] != w[1] {
                        docs.extend(index.documents(&w[0]).intersection(index.documents(&w[1])));
                    }
                }
            }
            PathLiteratureScore {
                path: run.path.clone(),
                score: docs.len(),
            }
        })
        .collect();
    out.sort_by(|a, b| b.score.cmp(&a.score).then_with(|| a.path.nodes.cmp(&b.path.nodes)));
    out
}
