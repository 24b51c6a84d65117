//! Node/edge documents for network visualization.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use percent_encoding::percent_decode_str;
use serde::Serialize;

use crate::linkpath::{LinkResult, SchemaGraph};
use crate::litxval::{document_iri, ValidationReport};
use crate::store::Store;
use crate::term::Iri;
use crate::vocab;

const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Drug,
    Protein,
    SideEffect,
    Pathway,
    Disease,
    Gene,
    Compound,
    Document,
}

impl FromStr for NodeKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "drug" => NodeKind::Drug,
            "protein" => NodeKind::Protein,
            "side_effect" | "side-effect" => NodeKind::SideEffect,
            "pathway" => NodeKind::Pathway,
            "disease" => NodeKind::Disease,
            "gene" => NodeKind::Gene,
            "compound" => NodeKind::Compound,
            "document" => NodeKind::Document,
            other => return Err(format!("unknown node kind {other:?}")),
        })
    }
}

/// Kind implied by an entity IRI's namespace.
pub fn kind_of_iri(iri: &Iri) -> Option<NodeKind> {
    let rest = iri.as_str().strip_prefix(vocab::BASE)?.strip_prefix("id/")?;
    let segment = rest.split('/').next()?;
    Some(match segment {
        "compound" => NodeKind::Compound,
        "uniprot" => NodeKind::Protein,
        "gene" | "gi" => NodeKind::Gene,
        "pathway" => NodeKind::Pathway,
        "disease" => NodeKind::Disease,
        "side_effect" => NodeKind::SideEffect,
        "pubmed" => NodeKind::Document,
        _ => return None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NetworkNode {
    pub id: Iri,
    pub label: String,
    pub kind: NodeKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NetworkEdge {
    pub source: Iri,
    pub target: Iri,
    pub relation: String,
    /// Contributing link paths in bracket notation.
    pub paths: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct NetworkDoc {
    pub nodes: Vec<NetworkNode>,
    pub edges: Vec<NetworkEdge>,
}

impl NetworkDoc {
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: &Iri) -> Option<&NetworkNode> {
        self.nodes.iter().find(|n| &n.id == id)
    }

    /// Edges touching `id`.
    pub fn degree(&self, id: &Iri) -> usize {
        self.edges
            .iter()
            .filter(|e| &e.source == id || &e.target == id)
            .count()
    }
}

/// `rdfs:label` if the store has one, else the decoded local name.
pub fn label_of(store: &Store, iri: &Iri) -> String {
    if let (Some(s), Some(p)) = (store.iri_id(iri), Iri::new(RDFS_LABEL).ok().and_then(|l| store.iri_id(&l))) {
        if let Some(q) = store.match_ids(Some(s), Some(p), None, None).first() {
            return store.term(q[2]).text().to_string();
        }
    }
    percent_decode_str(iri.local_name()).decode_utf8_lossy().into_owned()
}

#[derive(Default)]
struct Builder {
    nodes: BTreeMap<Iri, NodeKind>,
    edges: BTreeMap<(Iri, Iri, String), BTreeSet<String>>,
}

impl Builder {
    fn finish(self, store: &Store) -> NetworkDoc {
        NetworkDoc {
            nodes: self
                .nodes
                .into_iter()
                .map(|(id, kind)| NetworkNode {
                    label: label_of(store, &id),
                    id,
                    kind,
                })
                .collect(),
            edges: self
                .edges
                .into_iter()
                .map(|((source, target, relation), paths)| NetworkEdge {
                    source,
                    target,
                    relation,
                    paths: paths.into_iter().collect(),
                })
                .collect(),
        }
    }
}

/// Entities on typed schema nodes become network nodes; consecutive ones
/// along a chain are joined by an edge labelled with the sources walked
/// between them. With `focus`, only chains through that entity are used.
pub fn network_from_links(store: &Store, g: &SchemaGraph, result: &LinkResult, focus: Option<&Iri>) -> NetworkDoc {
    let focus = focus.map(|f| store.resolve_entity(f));
    let mut b = Builder::default();
    for run in &result.runs {
        let path = run.path.to_string();
        for chain in &run.chains {
            // (position in path, resolved entity, kind)
            let typed: Vec<(usize, Iri, NodeKind)> = chain
                .iter()
                .enumerate()
                .filter_map(|(i, t)| {
                    let kind = g.kind(&run.path.nodes[i])?.parse().ok()?;
                    let iri = t.as_iri()?;
                    Some((i, store.resolve_entity(iri), kind))
                })
                .collect();
            if let Some(f) = &focus {
                if !typed.iter().any(|(_, e, _)| e == f) {
                    continue;
                }
            }
            for (_, e, k) in &typed {
                b.nodes.entry(e.clone()).or_insert(*k);
            }
            for w in typed.windows(2) {
                let ((i, a, _), (j, c, _)) = (&w[0], &w[1]);
                if a == c {
                    continue;
                }
                let relation = if j - i == 1 {
                    format!("{}-{}", run.path.nodes[*i], run.path.nodes[*j])
                } else {
                    run.path.nodes[i + 1..*j].join("/")
                };
                b.edges
                    .entry((a.clone(), c.clone(), relation))
                    .or_default()
                    .insert(path.clone());
            }
        }
    }
    b.finish(store)
}

/// The pair plus each supporting document, linked by `mentioned_in`.
pub fn network_from_validation(store: &Store, report: &ValidationReport) -> NetworkDoc {
    let mut b = Builder::default();
    for e in [&report.a, &report.b] {
        if let Some(k) = kind_of_iri(e) {
            b.nodes.insert(e.clone(), k);
        }
    }
    let present: Vec<Iri> = b.nodes.keys().cloned().collect();
    for &pmid in &report.all {
        let doc = document_iri(pmid);
        b.nodes.insert(doc.clone(), NodeKind::Document);
        for e in &present {
            let supports = if *e == report.a {
                report.both.contains(&pmid) || report.a_with_b_associations.contains(&pmid)
            } else {
                report.both.contains(&pmid) || report.b_with_a_associations.contains(&pmid)
            };
            if supports {
                b.edges
                    .entry((e.clone(), doc.clone(), "mentioned_in".to_string()))
                    .or_default();
            }
        }
    }
    b.finish(store)
}

/// All statements with the resolved entity (or any sameAs alias) as
/// subject or object.
pub fn describe(store: &Store, entity: &Iri) -> Vec<crate::store::Triple> {
    let mut out = BTreeSet::new();
    for member in store.same_as_class(&store.resolve_entity(entity)) {
        let Some(id) = store.iri_id(&member) else { continue };
        for q in store.match_ids(Some(id), None, None, None) {
            out.insert(q);
        }
        for q in store.match_ids(None, None, Some(id), None) {
            out.insert(q);
        }
    }
    out.into_iter().map(|q| store.triple(q)).collect()
}
