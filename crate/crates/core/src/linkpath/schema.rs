use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::namespace::Namespaces;
use crate::term::Iri;

/// The shipped data-source graph.
pub const BUILTIN_SCHEMA: &str = include_str!("../../fixtures/schema.toml");

/// Side marker meaning "the node's own value is the join key".
pub const SELF: &str = "self";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("schema descriptor: {0}")]
    Parse(String),
    #[error("node {0:?} declared twice")]
    DuplicateNode(String),
    #[error("edge {edge} names unknown node {node:?}")]
    UnknownNode { edge: String, node: String },
    #[error("edge {0} is a self-loop")]
    SelfLoop(String),
    #[error("edge {edge}: {message}")]
    BadEdge { edge: String, message: String },
    #[error("class {0:?} has no sources")]
    EmptyClass(String),
    #[error("unknown class {0:?}")]
    UnknownClass(String),
    #[error("path {0} is not a simple path of the schema graph")]
    InvalidPath(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Via {
    Shared,
    Record,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDecl {
    pub name: String,
    #[serde(default)]
    pub kind: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDecl {
    pub between: [String; 2],
    pub predicates: [String; 2],
    #[serde(default)]
    pub via: Option<Via>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDecl {
    pub name: String,
    pub sources: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemaDescriptor {
    #[serde(default)]
    pub prefixes: BTreeMap<String, String>,
    #[serde(default)]
    pub nodes: Vec<NodeDecl>,
    #[serde(default)]
    pub edges: Vec<EdgeDecl>,
    #[serde(default)]
    pub classes: Vec<ClassDecl>,
}

/// How two adjacent sources join, oriented from `a` to `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Join {
    /// `?a p ?b`
    Forward(Iri),
    /// `?b p ?a`
    Backward(Iri),
    /// `?a pa ?k . ?b pb ?k`
    Shared(Iri, Iri),
    /// `?r pa ?a . ?r pb ?b`
    Record(Iri, Iri),
}

impl Join {
    /// The same join seen from the other end.
    pub fn reversed(&self) -> Join {
        match self {
            Join::Forward(p) => Join::Backward(p.clone()),
            Join::Backward(p) => Join::Forward(p.clone()),
            Join::Shared(a, b) => Join::Shared(b.clone(), a.clone()),
            Join::Record(a, b) => Join::Record(b.clone(), a.clone()),
        }
    }
}

/// Entity class mapped to the schema nodes that hold it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassSourceSet {
    pub name: String,
    pub sources: Vec<String>,
}

impl ClassSourceSet {
    pub fn new(name: impl Into<String>, sources: &[&str]) -> Self {
        ClassSourceSet {
            name: name.into(),
            sources: sources.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SchemaGraph {
    nodes: Vec<NodeDecl>,
    index: BTreeMap<String, usize>,
    /// Keyed by `(min, max)` node index, oriented from `min` to `max`.
    edges: BTreeMap<(usize, usize), Join>,
    adjacency: Vec<BTreeSet<usize>>,
    classes: BTreeMap<String, ClassSourceSet>,
}

pub fn build_schema_graph(descriptor: &str) -> Result<SchemaGraph, SchemaError> {
    let desc: SchemaDescriptor =
        toml::from_str(descriptor).map_err(|e| SchemaError::Parse(e.to_string()))?;
    SchemaGraph::from_descriptor(&desc)
}

impl SchemaGraph {
    pub fn builtin() -> SchemaGraph {
        build_schema_graph(BUILTIN_SCHEMA).expect("built-in schema is valid")
    }

    pub fn from_descriptor(desc: &SchemaDescriptor) -> Result<SchemaGraph, SchemaError> {
        let mut ns = Namespaces::standard();
        for (p, n) in &desc.prefixes {
            ns.insert(p, n);
        }
        let mut g = SchemaGraph {
            nodes: Vec::new(),
            index: BTreeMap::new(),
            edges: BTreeMap::new(),
            adjacency: Vec::new(),
            classes: BTreeMap::new(),
        };
        for n in &desc.nodes {
            if n.name.is_empty() {
                return Err(SchemaError::Parse("empty node name".into()));
            }
            if g.index.insert(n.name.clone(), g.nodes.len()).is_some() {
                return Err(SchemaError::DuplicateNode(n.name.clone()));
            }
            g.nodes.push(n.clone());
            g.adjacency.push(BTreeSet::new());
        }
        for e in &desc.edges {
            let label = format!("{}-{}", e.between[0], e.between[1]);
            let ends = e
                .between
                .iter()
                .map(|name| {
                    g.index.get(name).copied().ok_or_else(|| SchemaError::UnknownNode {
                        edge: label.clone(),
                        node: name.clone(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let (a, b) = (ends[0], ends[1]);
            if a == b {
                return Err(SchemaError::SelfLoop(label));
            }
            let join = edge_join(e, &ns).map_err(|message| SchemaError::BadEdge {
                edge: label.clone(),
                message,
            })?;
            let (key, join) = if a < b {
                ((a, b), join)
            } else {
                ((b, a), join.reversed())
            };
            match g.edges.get(&key) {
                Some(existing) if *existing != join => {
                    return Err(SchemaError::BadEdge {
                        edge: label,
                        message: "declared twice with different join predicates".into(),
                    })
                }
                Some(_) => {}
                None => {
                    g.edges.insert(key, join);
                    g.adjacency[a].insert(b);
                    g.adjacency[b].insert(a);
                }
            }
        }
        for c in &desc.classes {
            if c.sources.is_empty() {
                return Err(SchemaError::EmptyClass(c.name.clone()));
            }
            for s in &c.sources {
                if !g.index.contains_key(s) {
                    return Err(SchemaError::UnknownNode {
                        edge: format!("class {}", c.name),
                        node: s.clone(),
                    });
                }
            }
            g.classes.insert(
                c.name.clone(),
                ClassSourceSet {
                    name: c.name.clone(),
                    sources: c.sources.clone(),
                },
            );
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = &str> {
        self.nodes.iter().map(|n| n.name.as_str())
    }

    pub fn contains(&self, node: &str) -> bool {
        self.index.contains_key(node)
    }

    pub fn kind(&self, node: &str) -> Option<&str> {
        self.index
            .get(node)
            .and_then(|&i| self.nodes[i].kind.as_deref())
    }

    /// Neighbors in name order.
    pub fn neighbors(&self, node: &str) -> Vec<&str> {
        let mut out: Vec<&str> = match self.index.get(node) {
            Some(&i) => self.adjacency[i]
                .iter()
                .map(|&j| self.nodes[j].name.as_str())
                .collect(),
            None => Vec::new(),
        };
        out.sort_unstable();
        out
    }

    /// Unordered edge list as name pairs.
    pub fn edges(&self) -> Vec<(&str, &str)> {
        self.edges
            .keys()
            .map(|&(a, b)| (self.nodes[a].name.as_str(), self.nodes[b].name.as_str()))
            .collect()
    }

    /// The join from `a` to `b`, if they are adjacent.
    pub fn join(&self, a: &str, b: &str) -> Option<Join> {
        let (&i, &j) = (self.index.get(a)?, self.index.get(b)?);
        if i < j {
            self.edges.get(&(i, j)).cloned()
        } else {
            self.edges.get(&(j, i)).map(Join::reversed)
        }
    }

    pub fn remove_edge(&mut self, a: &str, b: &str) -> bool {
        let (Some(&i), Some(&j)) = (self.index.get(a), self.index.get(b)) else {
            return false;
        };
        let removed = self.edges.remove(&(i.min(j), i.max(j))).is_some();
        self.adjacency[i].remove(&j);
        self.adjacency[j].remove(&i);
        removed
    }

    pub fn class(&self, name: &str) -> Result<&ClassSourceSet, SchemaError> {
        self.classes
            .get(name)
            .ok_or_else(|| SchemaError::UnknownClass(name.to_string()))
    }

    pub fn classes(&self) -> impl Iterator<Item = &ClassSourceSet> {
        self.classes.values()
    }

    pub(super) fn node_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub(super) fn node_name(&self, i: usize) -> &str {
        &self.nodes[i].name
    }

    pub(super) fn adjacent(&self, i: usize) -> &BTreeSet<usize> {
        &self.adjacency[i]
    }
}

fn edge_join(e: &EdgeDecl, ns: &Namespaces) -> Result<Join, String> {
    let resolve = |p: &str| ns.resolve(p).map_err(|err| format!("predicate {p:?}: {err}"));
    let [pa, pb] = &e.predicates;
    match (pa.as_str() == SELF, pb.as_str() == SELF, e.via) {
        (true, true, _) => Err("both sides are \"self\"".into()),
        (false, true, None) => Ok(Join::Forward(resolve(pa)?)),
        (true, false, None) => Ok(Join::Backward(resolve(pb)?)),
        (false, false, Some(Via::Shared)) => Ok(Join::Shared(resolve(pa)?, resolve(pb)?)),
        (false, false, Some(Via::Record)) => Ok(Join::Record(resolve(pa)?, resolve(pb)?)),
        (false, false, None) => Err("two predicates need via = \"shared\" or \"record\"".into()),
        (_, _, Some(_)) => Err("via only applies when neither side is \"self\"".into()),
    }
}
