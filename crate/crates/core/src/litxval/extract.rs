//! Dictionary mention extraction: one trie over every dictionary, greedy
//! leftmost-longest matches that start and end on word boundaries.

use std::collections::HashMap;

use serde::Serialize;

use super::corpus::AbstractDoc;
use super::dictionary::{fold_char, Dictionary, EntityKind};
use crate::exec::Execution;
use crate::term::Iri;

/// A dictionary hit. Offsets count chars in `title + "\n" + body`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Mention {
    pub pmid: u64,
    pub start: usize,
    pub end: usize,
    pub kind: EntityKind,
    pub entity: Iri,
    pub term: String,
}

#[derive(Default, Debug, Clone)]
struct Node {
    next: HashMap<char, usize>,
    /// Index into `Extractor::targets` of the winning dictionary entry.
    target: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Extractor {
    nodes: Vec<Node>,
    targets: Vec<(EntityKind, Iri, String)>,
}

fn is_word(c: char) -> bool {
    c.is_alphanumeric()
}

impl Extractor {
    /// Dictionaries earlier in the slice win when two share a term.
    pub fn new(dicts: &[Dictionary]) -> Self {
        let mut ex = Extractor {
            nodes: vec![Node::default()],
            targets: Vec::new(),
        };
        for d in dicts {
            for (term, iri) in d.entries() {
                let mut at = 0;
                for c in term.chars() {
                    at = match ex.nodes[at].next.get(&c) {
                        Some(&n) => n,
                        None => {
                            ex.nodes.push(Node::default());
                            let n = ex.nodes.len() - 1;
                            ex.nodes[at].next.insert(c, n);
                            n
                        }
                    };
                }
                if ex.nodes[at].target.is_none() {
                    ex.targets.push((d.kind, iri.clone(), term.to_string()));
                    ex.nodes[at].target = Some(ex.targets.len() - 1);
                }
            }
        }
        ex
    }

    pub fn term_count(&self) -> usize {
        self.targets.len()
    }

    /// Longest dictionary match starting at `start`, as (end, target).
    fn longest_at(&self, chars: &[char], start: usize) -> Option<(usize, usize)> {
        let mut at = 0;
        let mut i = start;
        let mut best = None;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() {
                // A whitespace run in the text matches one space in a term.
                let Some(&n) = self.nodes[at].next.get(&' ') else { break };
                at = n;
                while i < chars.len() && chars[i].is_whitespace() {
                    i += 1;
                }
                continue;
            }
            let Some(&n) = self.nodes[at].next.get(&fold_char(c)) else { break };
            at = n;
            i += 1;
            if let Some(t) = self.nodes[at].target {
                if i == chars.len() || !is_word(chars[i]) || !is_word(chars[i - 1]) {
                    best = Some((i, t));
                }
            }
        }
        best
    }

    pub fn extract_text(&self, pmid: u64, text: &str) -> Vec<Mention> {
        let chars: Vec<char> = text.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let boundary = i == 0 || !is_word(chars[i - 1]) || !is_word(chars[i]);
            if boundary && !chars[i].is_whitespace() {
                if let Some((end, t)) = self.longest_at(&chars, i) {
                    let (kind, entity, term) = &self.targets[t];
                    out.push(Mention {
                        pmid,
                        start: i,
                        end,
                        kind: *kind,
                        entity: entity.clone(),
                        term: term.clone(),
                    });
                    i = end;
                    continue;
                }
            }
            i += 1;
        }
        out
    }

    pub fn extract(&self, doc: &AbstractDoc) -> Vec<Mention> {
        self.extract_text(doc.pmid, &doc.text())
    }

    /// Mentions for a whole corpus, ordered by (pmid, start) regardless of
    /// execution mode.
    pub fn extract_corpus(&self, docs: &[AbstractDoc], exec: Execution) -> Vec<Mention> {
        let mut out: Vec<Mention> = exec.map(docs, |d| self.extract(d)).into_iter().flatten().collect();
        out.sort();
        out
    }
}

pub fn extract_mentions(doc: &AbstractDoc, dicts: &[Dictionary]) -> Vec<Mention> {
    Extractor::new(dicts).extract(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::litxval::build_dictionary;

    fn dict(kind: EntityKind, xs: &[(&str, &str)]) -> Dictionary {
        let rows: Vec<_> = xs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        build_dictionary(kind, &rows).unwrap()
    }

    fn dicts() -> Vec<Dictionary> {
        vec![
            dict(EntityKind::Compound, &[("doxazosin", "3157"), ("aspirin", "2244")]),
            dict(EntityKind::SideEffect, &[("necrosis", "necrosis"), ("hepatic necrosis", "hepatic necrosis")]),
            dict(EntityKind::Gene, &[("ADRA1A", "P35348"), ("aspirin", "P99999")]),
        ]
    }

    fn spans(text: &str) -> Vec<(usize, usize, EntityKind)> {
        Extractor::new(&dicts())
            .extract_text(1, text)
            .into_iter()
            .map(|m| (m.start, m.end, m.kind))
            .collect()
    }

    #[test]
    fn two_mentions() {
        let doc = AbstractDoc::new(1, 2001, "Doxazosin induced necrosis in rats", "");
        let ms = extract_mentions(&doc, &dicts());
        assert_eq!(ms.len(), 2);
        assert_eq!((ms[0].start, ms[0].end), (0, 9));
        assert_eq!(ms[1].entity.as_str(), "http://lodchem.org/id/side_effect/necrosis");
    }

    #[test]
    fn empty_text() {
        assert!(spans("").is_empty());
    }

    #[test]
    fn longest_match_wins() {
        assert_eq!(spans("acute hepatic  necrosis"), vec![(6, 23, EntityKind::SideEffect)]);
    }

    #[test]
    fn word_boundaries() {
        assert!(spans("nonnecrosis necrosisX").is_empty());
        assert_eq!(spans("(necrosis)"), vec![(1, 9, EntityKind::SideEffect)]);
    }

    #[test]
    fn first_dictionary_wins_ties() {
        assert_eq!(spans("ASPIRIN"), vec![(0, 7, EntityKind::Compound)]);
    }

    #[test]
    fn offsets_are_chars() {
        assert_eq!(spans("ümlaut necrosis"), vec![(7, 15, EntityKind::SideEffect)]);
    }

    #[test]
    fn title_and_body_joined() {
        let doc = AbstractDoc::new(7, 2001, "Doxazosin", "necrosis");
        let ms = Extractor::new(&dicts()).extract(&doc);
        assert_eq!(ms.iter().map(|m| m.start).collect::<Vec<_>>(), vec![0, 10]);
    }

    #[test]
    fn corpus_modes_agree() {
        let docs: Vec<_> = (0..50)
            .map(|i| AbstractDoc::new(100 - i, 2000, "aspirin and necrosis", "doxazosin ADRA1A"))
            .collect();
        let ex = Extractor::new(&dicts());
        let a = ex.extract_corpus(&docs, Execution::Sequential);
        let b = ex.extract_corpus(&docs, Execution::Parallel);
        assert_eq!(a, b);
        assert_eq!(a.len(), 200);
        assert_eq!(a[0].pmid, 51);
    }
}
