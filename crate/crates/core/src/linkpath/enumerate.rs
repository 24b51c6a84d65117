use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::schema::{ClassSourceSet, SchemaError, SchemaGraph};

pub const DEFAULT_MAX_LEN: usize = 10;

/// A simple path through the schema graph, as node names.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinkPath {
    pub nodes: Vec<String>,
}

impl LinkPath {
    pub fn new(nodes: &[&str]) -> Self {
        LinkPath {
            nodes: nodes.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn first(&self) -> &str {
        &self.nodes[0]
    }

    pub fn last(&self) -> &str {
        self.nodes.last().expect("paths are non-empty")
    }

    /// Whether the path is simple, has at least one edge, and follows edges
    /// of `g`.
    pub fn is_valid_in(&self, g: &SchemaGraph) -> bool {
        let distinct: BTreeSet<&String> = self.nodes.iter().collect();
        self.nodes.len() >= 2
            && distinct.len() == self.nodes.len()
            && self.nodes.iter().all(|n| g.contains(n))
            && self.nodes.windows(2).all(|w| g.join(&w[0], &w[1]).is_some())
    }
}

/// Bracket notation, e.g. `[sider, compound_hub, matador]`.
impl fmt::Display for LinkPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.nodes.join(", "))
    }
}

/// All simple paths of at most `max_len` edges from any source of `from` to
/// any source of `to`, sorted by length then node sequence. Empty when both
/// sets describe the same class.
pub fn enumerate_paths(
    g: &SchemaGraph,
    from: &ClassSourceSet,
    to: &ClassSourceSet,
    max_len: usize,
) -> Result<Vec<LinkPath>, SchemaError> {
    for class in [from, to] {
        if class.sources.is_empty() {
            return Err(SchemaError::EmptyClass(class.name.clone()));
        }
        for s in &class.sources {
            if !g.contains(s) {
                return Err(SchemaError::UnknownNode {
                    edge: format!("class {}", class.name),
                    node: s.clone(),
                });
            }
        }
    }
    if from.name == to.name {
        return Ok(Vec::new());
    }
    let targets: BTreeSet<usize> = to.sources.iter().filter_map(|s| g.node_index(s)).collect();
    let mut found = BTreeSet::new();
    for start in from.sources.iter().filter_map(|s| g.node_index(s)) {
        let mut stack = vec![start];
        let mut on_path = vec![false; g.node_count()];
        on_path[start] = true;
        dfs(g, &targets, max_len, &mut stack, &mut on_path, &mut found);
    }
    let mut paths: Vec<LinkPath> = found.into_iter().collect();
    paths.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.nodes.cmp(&b.nodes)));
    Ok(paths)
}

fn dfs(
    g: &SchemaGraph,
    targets: &BTreeSet<usize>,
    max_len: usize,
    stack: &mut Vec<usize>,
    on_path: &mut [bool],
    found: &mut BTreeSet<LinkPath>,
) {
    let here = *stack.last().unwrap();
    if stack.len() >= 2 && targets.contains(&here) {
        found.insert(LinkPath {
            nodes: stack.iter().map(|&i| g.node_name(i).to_string()).collect(),
        });
    }
    if stack.len() > max_len {
        return;
    }
    for &next in g.adjacent(here) {
        if on_path[next] {
            continue;
        }
        on_path[next] = true;
        stack.push(next);
        dfs(g, targets, max_len, stack, on_path, found);
        stack.pop();
        on_path[next] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkpath::schema::build_schema_graph;

    #[test]
    fn single_edge() {
        let g = build_schema_graph(
            "[[nodes]]\nname = \"a\"\n[[nodes]]\nname = \"b\"\n[[edges]]\nbetween = [\"a\", \"b\"]\npredicates = [\"self\", \"rdf:type\"]\n",
        )
        .unwrap();
        let paths = enumerate_paths(
            &g,
            &ClassSourceSet::new("A", &["a"]),
            &ClassSourceSet::new("B", &["b"]),
            DEFAULT_MAX_LEN,
        )
        .unwrap();
        assert_eq!(paths, vec![LinkPath::new(&["a", "b"])]);
        assert_eq!(paths[0].to_string(), "[a, b]");
    }

    #[test]
    fn builtin_side_effect_to_pathway() {
        let g = SchemaGraph::builtin();
        let paths = enumerate_paths(
            &g,
            g.class("Side effect").unwrap(),
            g.class("Pathway").unwrap(),
            DEFAULT_MAX_LEN,
        )
        .unwrap();
        assert_eq!(paths.len(), 14);
        assert_eq!(paths.iter().filter(|p| p.last() == "kegg").count(), 7);
        assert_eq!(paths.iter().filter(|p| p.last() == "reactome").count(), 7);
        assert!(paths.iter().all(|p| p.is_valid_in(&g)));
        assert_eq!(
            paths[0].to_string(),
            "[sider, compound_hub, matador, uniprot_hub, kegg]"
        );
    }

    #[test]
    fn same_class_and_empty_class() {
        let g = SchemaGraph::builtin();
        let pw = g.class("Pathway").unwrap();
        assert!(enumerate_paths(&g, pw, pw, 10).unwrap().is_empty());
        let empty = ClassSourceSet::new("None", &[]);
        assert_eq!(
            enumerate_paths(&g, &empty, pw, 10),
            Err(SchemaError::EmptyClass("None".into()))
        );
    }

    #[test]
    fn hop_bound() {
        let g = SchemaGraph::builtin();
        let (se, pw) = (g.class("Side effect").unwrap(), g.class("Pathway").unwrap());
        assert_eq!(enumerate_paths(&g, se, pw, 4).unwrap().len(), 2);
        assert_eq!(enumerate_paths(&g, se, pw, 5).unwrap().len(), 8);
        assert_eq!(enumerate_paths(&g, se, pw, 6).unwrap().len(), 14);
        assert_eq!(enumerate_paths(&g, se, pw, 3).unwrap().len(), 0);
    }
}
