//! Breadth-first enumeration of simple paths over a bare edge list, and
//! random schema graphs to feed it.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use lodchem::linkpath::{ClassSourceSet, EdgeDecl, NodeDecl, SchemaDescriptor, SchemaGraph};
use rand::Rng;

#[derive(Debug, Clone)]
pub struct RandomGraph {
    pub nodes: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl RandomGraph {
    pub fn generate(rng: &mut impl Rng, max_nodes: usize) -> Self {
        let n = rng.gen_range(1..=max_nodes);
        let density = rng.gen_range(0.1..0.7);
        let nodes = (0..n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(density) {
                    edges.push((a, b));
                }
            }
        }
        RandomGraph { nodes, edges }
    }

    pub fn schema(&self) -> SchemaGraph {
        let desc = SchemaDescriptor {
            prefixes: BTreeMap::from([("ex".to_string(), "http://example.org/".to_string())]),
            nodes: self
                .nodes
                .iter()
                .map(|n| NodeDecl { name: n.clone(), kind: None })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| EdgeDecl {
                    between: [self.nodes[a].clone(), self.nodes[b].clone()],
                    predicates: ["self".to_string(), format!("ex:p{a}_{b}")],
                    via: None,
                })
                .collect(),
            classes: Vec::new(),
        };
        SchemaGraph::from_descriptor(&desc).unwrap()
    }

    pub fn random_class(&self, rng: &mut impl Rng, name: &str) -> ClassSourceSet {
        let mut picked: Vec<&str> = self
            .nodes
            .iter()
            .filter(|_| rng.gen_bool(0.3))
            .map(String::as_str)
            .collect();
        if picked.is_empty() {
            picked.push(&self.nodes[rng.gen_range(0..self.nodes.len())]);
        }
        ClassSourceSet::new(name, &picked)
    }
}

/// Every simple path of 1..=max_len edges from a `from` node to a `to`
/// node, as node-name sequences.
pub fn all_simple_paths(
    nodes: &[String],
    edges: &[(usize, usize)],
    from: &[String],
    to: &[String],
    max_len: usize,
) -> BTreeSet<Vec<String>> {
    let idx = |name: &String| nodes.iter().position(|n| n == name).unwrap();
    let targets: BTreeSet<usize> = to.iter().map(idx).collect();
    let neighbors = |v: usize| -> Vec<usize> {
        edges
            .iter()
            .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
            .collect()
    };
    let mut out = BTreeSet::new();
    let mut queue: VecDeque<Vec<usize>> = from.iter().map(|s| vec![idx(s)]).collect();
    while let Some(path) = queue.pop_front() {
        let last = *path.last().unwrap();
        if path.len() > 1 && targets.contains(&last) {
            out.insert(path.iter().map(|&i| nodes[i].clone()).collect());
        }
        if path.len() - 1 == max_len {
            continue;
        }
        for n in neighbors(last) {
            if !path.contains(&n) {
                let mut longer = path.clone();
                longer.push(n);
                queue.push_back(longer);
            }
        }
    }
    out
}

/// Node list and edge list of a schema graph, for the oracle.
pub fn edge_list(g: &SchemaGraph) -> (Vec<String>, Vec<(usize, usize)>) {
    let nodes: Vec<String> = g.nodes().map(str::to_string).collect();
    let idx = |n: &str| nodes.iter().position(|m| m == n).unwrap();
    let edges = g.edges().into_iter().map(|(a, b)| (idx(a), idx(b))).collect();
    (nodes, edges)
}
