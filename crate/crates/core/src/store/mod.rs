//! Indexed quad store.
//!
//! Terms are interned to dense ids. Every statement lives in three
//! permutation indexes (SPO, POS, OSP, each with the graph id as the last
//! component), so any combination of bound positions is a prefix range scan.
//! `owl:sameAs` statements additionally feed a union-find structure used by
//! [`Store::resolve_entity`]; links are resolved virtually, triples are never
//! rewritten.

mod ntriples;
mod persist;
mod sameas;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::Bound;

use thiserror::Error;

pub use ntriples::{parse_document, parse_line};

use crate::namespace::Namespaces;
use crate::provenance::GraphInfo;
use crate::term::{Iri, Term, TermError};
use crate::vocab;
use sameas::SameAs;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("graph {0} is not registered")]
    GraphUnknown(Iri),
    #[error(transparent)]
    BadIri(#[from] TermError),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("registry: {0}")]
    Registry(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Dense id of an interned term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermId(u32);

impl TermId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A statement in a named graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Iri,
    pub predicate: Iri,
    pub object: Term,
    pub graph: Iri,
}

impl Triple {
    pub fn new(subject: Iri, predicate: Iri, object: impl Into<Term>, graph: Iri) -> Self {
        Triple {
            subject,
            predicate,
            object: object.into(),
            graph,
        }
    }

    /// N-Triples line, without the graph.
    pub fn to_ntriples(&self) -> String {
        format!(
            "<{}> <{}> {} .",
            self.subject, self.predicate, self.object
        )
    }
}

/// A match pattern; `None` matches anything.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Pattern {
    pub subject: Option<Iri>,
    pub predicate: Option<Iri>,
    pub object: Option<Term>,
    pub graph: Option<Iri>,
}

impl Pattern {
    pub fn any() -> Self {
        Self::default()
    }

    pub fn subject(mut self, s: Iri) -> Self {
        self.subject = Some(s);
        self
    }

    pub fn predicate(mut self, p: Iri) -> Self {
        self.predicate = Some(p);
        self
    }

    pub fn object(mut self, o: impl Into<Term>) -> Self {
        self.object = Some(o.into());
        self
    }

    pub fn graph(mut self, g: Iri) -> Self {
        self.graph = Some(g);
        self
    }
}

/// `[subject, predicate, object, graph]` ids.
pub type QuadIds = [TermId; 4];

type Index = BTreeSet<[u32; 4]>;

/// Maps a quad read from a permuted index back to s, p, o, g order.
type Unpermute = fn([u32; 4]) -> [u32; 4];

#[derive(Debug, Clone, Default)]
pub struct Store {
    terms: Vec<Term>,
    ids: HashMap<Term, TermId>,
    spo: Index,
    pos: Index,
    osp: Index,
    graphs: BTreeMap<Iri, GraphInfo>,
    namespaces: Namespaces,
    same_as: SameAs,
    same_as_id: Option<TermId>,
}

impl Store {
    /// Empty store with the standard namespace table.
    pub fn new() -> Self {
        Store {
            namespaces: Namespaces::standard(),
            ..Default::default()
        }
    }

    pub fn namespaces(&self) -> &Namespaces {
        &self.namespaces
    }

    pub fn namespaces_mut(&mut self) -> &mut Namespaces {
        &mut self.namespaces
    }

    /// Registers (or re-registers) a named graph.
    pub fn register_graph(&mut self, info: GraphInfo) {
        self.graphs.insert(info.graph.clone(), info);
    }

    pub fn graph_info(&self, graph: &Iri) -> Option<&GraphInfo> {
        self.graphs.get(graph)
    }

    pub fn graphs(&self) -> impl Iterator<Item = &GraphInfo> {
        self.graphs.values()
    }

    pub fn len(&self) -> usize {
        self.spo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spo.is_empty()
    }

    pub fn term(&self, id: TermId) -> &Term {
        &self.terms[id.index()]
    }

    pub fn term_id(&self, term: &Term) -> Option<TermId> {
        self.ids.get(term).copied()
    }

    pub fn iri_id(&self, iri: &Iri) -> Option<TermId> {
        self.term_id(&Term::Iri(iri.clone()))
    }

    fn intern(&mut self, term: &Term) -> TermId {
        if let Some(id) = self.ids.get(term) {
            return *id;
        }
        let id = TermId(u32::try_from(self.terms.len()).expect("term dictionary overflow"));
        self.terms.push(term.clone());
        self.ids.insert(term.clone(), id);
        id
    }

    /// Inserts `t`; returns `true` if it was not already present.
    pub fn insert(&mut self, t: &Triple) -> Result<bool, StoreError> {
        if !self.graphs.contains_key(&t.graph) {
            return Err(StoreError::GraphUnknown(t.graph.clone()));
        }
        let s = self.intern(&Term::Iri(t.subject.clone()));
        let p = self.intern(&Term::Iri(t.predicate.clone()));
        let o = self.intern(&t.object);
        let g = self.intern(&Term::Iri(t.graph.clone()));
        if !self.spo.insert([s.0, p.0, o.0, g.0]) {
            return Ok(false);
        }
        self.pos.insert([p.0, o.0, s.0, g.0]);
        self.osp.insert([o.0, s.0, p.0, g.0]);

        if t.predicate.as_str() == vocab::OWL_SAME_AS && t.object.as_iri().is_some() {
            self.same_as_id = Some(p);
            let terms = &self.terms;
            self.same_as.union(s, o, |a, b| {
                rank_key(&terms[a.index()]).cmp(&rank_key(&terms[b.index()]))
            });
        }
        Ok(true)
    }

    /// Id-level scan. Results come in index order; callers that need a
    /// stable order sort by term.
    pub fn match_ids(
        &self,
        s: Option<TermId>,
        p: Option<TermId>,
        o: Option<TermId>,
        g: Option<TermId>,
    ) -> Vec<QuadIds> {
        let mut out = Vec::new();
        self.scan(s, p, o, |quad| {
            if g.is_none_or(|g| g == quad[3]) {
                out.push(quad);
            }
            true
        });
        out
    }

    /// Number of statements matching the bound positions, capped at `cap`.
    pub fn count_ids(
        &self,
        s: Option<TermId>,
        p: Option<TermId>,
        o: Option<TermId>,
        cap: usize,
    ) -> usize {
        let mut n = 0;
        self.scan(s, p, o, |_| {
            n += 1;
            n < cap
        });
        n
    }

    fn scan(
        &self,
        s: Option<TermId>,
        p: Option<TermId>,
        o: Option<TermId>,
        mut visit: impl FnMut(QuadIds) -> bool,
    ) {
        let raw = |x: Option<TermId>| x.map(|t| t.0);
        let (index, prefix, unpermute): (&Index, Vec<u32>, Unpermute) =
            match (raw(s), raw(p), raw(o)) {
                (Some(s), Some(p), Some(o)) => (&self.spo, vec![s, p, o], |q| q),
                (Some(s), Some(p), None) => (&self.spo, vec![s, p], |q| q),
                (Some(s), None, None) => (&self.spo, vec![s], |q| q),
                (None, Some(p), Some(o)) => (&self.pos, vec![p, o], |q| [q[2], q[0], q[1], q[3]]),
                (None, Some(p), None) => (&self.pos, vec![p], |q| [q[2], q[0], q[1], q[3]]),
                (Some(s), None, Some(o)) => (&self.osp, vec![o, s], |q| [q[1], q[2], q[0], q[3]]),
                (None, None, Some(o)) => (&self.osp, vec![o], |q| [q[1], q[2], q[0], q[3]]),
                (None, None, None) => (&self.spo, vec![], |q| q),
            };
        let mut lo = [0u32; 4];
        let mut hi = [u32::MAX; 4];
        lo[..prefix.len()].copy_from_slice(&prefix);
        hi[..prefix.len()].copy_from_slice(&prefix);
        for quad in index.range((Bound::Included(lo), Bound::Included(hi))) {
            let q = unpermute(*quad);
            if !visit([TermId(q[0]), TermId(q[1]), TermId(q[2]), TermId(q[3])]) {
                break;
            }
        }
    }

    /// All statements agreeing with the bound positions of `pattern`, sorted
    /// by (subject, predicate, object, graph).
    pub fn matches(&self, pattern: &Pattern) -> Vec<Triple> {
        let lookup_iri = |x: &Option<Iri>| match x {
            None => Some(None),
            Some(iri) => self.iri_id(iri).map(Some),
        };
        let (Some(s), Some(p), Some(g)) = (
            lookup_iri(&pattern.subject),
            lookup_iri(&pattern.predicate),
            lookup_iri(&pattern.graph),
        ) else {
            return Vec::new();
        };
        let o = match &pattern.object {
            None => None,
            Some(term) => match self.term_id(term) {
                Some(id) => Some(id),
                None => return Vec::new(),
            },
        };
        let mut out: Vec<Triple> = self
            .match_ids(s, p, o, g)
            .into_iter()
            .map(|q| self.triple(q))
            .collect();
        out.sort();
        out
    }

    pub fn triple(&self, q: QuadIds) -> Triple {
        let iri = |id: TermId| match self.term(id) {
            Term::Iri(iri) => iri.clone(),
            Term::Literal(_) => unreachable!("only objects may be literals"),
        };
        Triple {
            subject: iri(q[0]),
            predicate: iri(q[1]),
            object: self.term(q[2]).clone(),
            graph: iri(q[3]),
        }
    }

    pub fn contains(&self, t: &Triple) -> bool {
        let ids = (
            self.iri_id(&t.subject),
            self.iri_id(&t.predicate),
            self.term_id(&t.object),
            self.iri_id(&t.graph),
        );
        match ids {
            (Some(s), Some(p), Some(o), Some(g)) => self.spo.contains(&[s.0, p.0, o.0, g.0]),
            _ => false,
        }
    }

    /// Canonical representative of `e`'s `owl:sameAs` class: hub namespaces
    /// first, then lexicographically smallest IRI.
    pub fn resolve_entity(&self, e: &Iri) -> Iri {
        match self.iri_id(e) {
            Some(id) => match self.term(self.same_as.representative(id)) {
                Term::Iri(iri) => iri.clone(),
                Term::Literal(_) => e.clone(),
            },
            None => e.clone(),
        }
    }

    pub fn resolve_term(&self, t: &Term) -> Term {
        match t {
            Term::Iri(iri) => Term::Iri(self.resolve_entity(iri)),
            lit => lit.clone(),
        }
    }

    /// Id-level counterpart of [`Store::resolve_entity`].
    pub fn resolve_id(&self, id: TermId) -> TermId {
        self.same_as.representative(id)
    }

    /// Every IRI known to be the same entity as `e`, `e` included, sorted.
    pub fn same_as_class(&self, e: &Iri) -> Vec<Iri> {
        let Some(id) = self.iri_id(e) else {
            return vec![e.clone()];
        };
        let mut members: Vec<Iri> = self
            .same_as
            .members(id)
            .into_iter()
            .filter_map(|m| self.term(m).as_iri().cloned())
            .collect();
        members.sort();
        members
    }

    /// Sorted, deduplicated N-Triples for one graph or the whole store.
    pub fn export_graph(&self, graph: Option<&Iri>) -> String {
        let g = match graph {
            Some(iri) => match self.iri_id(iri) {
                Some(id) => Some(id),
                None => return String::new(),
            },
            None => None,
        };
        let lines: BTreeSet<String> = self
            .match_ids(None, None, None, g)
            .into_iter()
            .map(|q| self.triple(q).to_ntriples())
            .collect();
        let mut doc = String::new();
        for line in lines {
            doc.push_str(&line);
            doc.push('\n');
        }
        doc
    }

    /// Parses the whole document before inserting anything; a bad line
    /// leaves the store untouched. Returns the number of new statements.
    pub fn import_graph(&mut self, doc: &str, graph: &Iri) -> Result<usize, StoreError> {
        if !self.graphs.contains_key(graph) {
            return Err(StoreError::GraphUnknown(graph.clone()));
        }
        let parsed = parse_document(doc)?;
        let mut added = 0;
        for (s, p, o) in parsed {
            if self.insert(&Triple::new(s, p, o, graph.clone()))? {
                added += 1;
            }
        }
        Ok(added)
    }
}

fn rank_key(term: &Term) -> (u8, &str) {
    match term {
        Term::Iri(iri) => (vocab::hub_rank(iri), iri.as_str()),
        Term::Literal(l) => (u8::MAX, l.lexical()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::provenance::ProvenanceRecord;
    use crate::term::Literal;

    fn iri(s: &str) -> Iri {
        Iri::new(s).unwrap()
    }

    fn store_with_graph() -> (Store, Iri) {
        let mut store = Store::new();
        let g = vocab::graph_iri("test");
        store.register_graph(GraphInfo::new(
            g.clone(),
            None,
            ProvenanceRecord::new("a", "b", "c", "d", "e").unwrap(),
        ));
        (store, g)
    }

    #[test]
    fn insert_is_idempotent() {
        let (mut store, g) = store_with_graph();
        let t = Triple::new(iri("urn:a"), iri("urn:p"), Literal::integer(1), g);
        assert!(store.insert(&t).unwrap());
        assert!(!store.insert(&t).unwrap());
        assert_eq!(store.len(), 1);
    }

    #[test]
    fn unregistered_graph_rejected() {
        let mut store = Store::new();
        let t = Triple::new(iri("urn:a"), iri("urn:p"), iri("urn:b"), iri("urn:g"));
        assert!(matches!(store.insert(&t), Err(StoreError::GraphUnknown(_))));
    }

    #[test]
    fn empty_store_matches_nothing() {
        let store = Store::new();
        assert!(store.matches(&Pattern::any()).is_empty());
        assert_eq!(store.export_graph(None), "");
    }

    #[test]
    fn every_access_path() {
        let (mut store, g) = store_with_graph();
        for (s, p, o) in [("a", "p", "b"), ("a", "q", "c"), ("d", "p", "b"), ("b", "p", "a")] {
            store
                .insert(&Triple::new(
                    iri(&format!("urn:{s}")),
                    iri(&format!("urn:{p}")),
                    iri(&format!("urn:{o}")),
                    g.clone(),
                ))
                .unwrap();
        }
        let n = |pat: Pattern| store.matches(&pat).len();
        assert_eq!(n(Pattern::any().subject(iri("urn:a"))), 2);
        assert_eq!(n(Pattern::any().predicate(iri("urn:p"))), 3);
        assert_eq!(n(Pattern::any().object(iri("urn:b"))), 2);
        assert_eq!(
            n(Pattern::any().subject(iri("urn:a")).object(iri("urn:b"))),
            1
        );
        assert_eq!(
            n(Pattern::any().predicate(iri("urn:p")).object(iri("urn:b"))),
            2
        );
        assert_eq!(n(Pattern::any().graph(g.clone())), 4);
        assert_eq!(n(Pattern::any().subject(iri("urn:zzz"))), 0);
    }

    #[test]
    fn bio2rdf_same_as_link_resolves() {
        let (mut store, g) = store_with_graph();
        let drug = iri("http://lodchem.org/graph/drugbank/drug/DB01224");
        let external = iri("http://bio2rdf.org/drugbank_drugs:DB01224");
        store
            .insert(&Triple::new(drug.clone(), vocab::same_as(), external.clone(), g))
            .unwrap();
        assert_eq!(store.resolve_entity(&external), drug);
        assert_eq!(store.same_as_class(&drug), vec![external, drug]);
    }

    #[test]
    fn hub_namespace_wins() {
        let (mut store, g) = store_with_graph();
        let gi = iri("http://lodchem.org/id/gi/12345");
        let uniprot = iri("http://lodchem.org/id/uniprot/P00533");
        store
            .insert(&Triple::new(gi.clone(), vocab::same_as(), uniprot.clone(), g))
            .unwrap();
        assert_eq!(store.resolve_entity(&gi), uniprot);
        assert_eq!(store.resolve_entity(&uniprot), uniprot);
        let lone = iri("urn:lonely");
        assert_eq!(store.resolve_entity(&lone), lone);
    }

    #[test]
    fn transitive_chain() {
        let (mut store, g) = store_with_graph();
        let (a, b, c) = (iri("urn:c"), iri("urn:b"), iri("urn:a"));
        store
            .insert(&Triple::new(a.clone(), vocab::same_as(), b.clone(), g.clone()))
            .unwrap();
        store
            .insert(&Triple::new(b.clone(), vocab::same_as(), c.clone(), g))
            .unwrap();
        assert_eq!(store.resolve_entity(&a), store.resolve_entity(&c));
        assert_eq!(store.resolve_entity(&a), c);
    }

    #[test]
    fn single_triple_export_line() {
        let (mut store, g) = store_with_graph();
        store
            .insert(&Triple::new(iri("urn:a"), iri("urn:p"), Literal::decimal(0.5), g))
            .unwrap();
        let doc = store.export_graph(None);
        assert_eq!(doc.lines().count(), 1);
        assert!(doc.lines().next().unwrap().ends_with(" ."));
    }

    #[test]
    fn import_reports_bad_line_and_is_atomic() {
        let (mut store, g) = store_with_graph();
        let mut doc = String::new();
        for i in 0..10 {
            if i == 6 {
                doc.push_str("<urn:s> <urn:p> oops .\n");
            } else {
                doc.push_str(&format!("<urn:s{i}> <urn:p> \"{i}\" .\n"));
            }
        }
        match store.import_graph(&doc, &g) {
            Err(StoreError::Parse { line, .. }) => assert_eq!(line, 7),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(store.is_empty());
        assert_eq!(store.import_graph("", &g).unwrap(), 0);
    }

    #[test]
    fn reimport_adds_nothing() {
        let (mut store, g) = store_with_graph();
        store
            .insert(&Triple::new(iri("urn:a"), iri("urn:p"), Literal::string("x y"), g.clone()))
            .unwrap();
        let doc = store.export_graph(Some(&g));
        assert_eq!(store.import_graph(&doc, &g).unwrap(), 0);
    }
}
