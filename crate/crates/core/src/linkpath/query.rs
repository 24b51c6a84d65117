use std::collections::BTreeSet;

use super::enumerate::LinkPath;
use super::schema::{Join, SchemaError, SchemaGraph};
use crate::term::Iri;

/// SELECT text for one path plus the variable bound to each path node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathQuery {
    pub text: String,
    /// One variable name (without `?`) per path node, in path order.
    pub node_vars: Vec<String>,
}

fn sanitize(name: &str) -> String {
    let mut out: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
        .collect();
    if !out.starts_with(|c: char| c.is_ascii_alphabetic()) {
        out.insert(0, 'n');
    }
    out
}

struct Names(BTreeSet<String>);

impl Names {
    fn fresh(&mut self, base: &str) -> String {
        let base = sanitize(base);
        let mut candidate = base.clone();
        let mut n = 2;
        while !self.0.insert(candidate.clone()) {
            candidate = format!("{base}_{n}");
            n += 1;
        }
        candidate
    }
}

fn pattern(s: &str, p: &Iri, o: &str) -> String {
    format!("  ?{s} <{p}> ?{o} .\n")
}

/// Chains the join predicates of consecutive edges into one basic graph
/// pattern selecting every node variable.
pub fn path_to_query(path: &LinkPath, g: &SchemaGraph) -> Result<PathQuery, SchemaError> {
    if !path.is_valid_in(g) {
        return Err(SchemaError::InvalidPath(path.to_string()));
    }
    let mut names = Names(BTreeSet::new());
    let node_vars: Vec<String> = path.nodes.iter().map(|n| names.fresh(n)).collect();
    let mut body = String::new();
    for (i, w) in path.nodes.windows(2).enumerate() {
        let (a, b) = (&node_vars[i], &node_vars[i + 1]);
        match g.join(&w[0], &w[1]).expect("validated path") {
            Join::Forward(p) => body.push_str(&pattern(a, &p, b)),
            Join::Backward(p) => body.push_str(&pattern(b, &p, a)),
            Join::Shared(pa, pb) => {
                let k = names.fresh(&format!("{}_{}_key", w[0], w[1]));
                body.push_str(&pattern(a, &pa, &k));
                body.push_str(&pattern(b, &pb, &k));
            }
            Join::Record(pa, pb) => {
                let r = names.fresh(&format!("{}_{}_rec", w[0], w[1]));
                body.push_str(&pattern(&r, &pa, a));
                body.push_str(&pattern(&r, &pb, b));
            }
        }
    }
    let select: Vec<String> = node_vars.iter().map(|v| format!("?{v}")).collect();
    Ok(PathQuery {
        text: format!("SELECT DISTINCT {} WHERE {{\n{body}}}", select.join(" ")),
        node_vars,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkpath::schema::build_schema_graph;
    use crate::namespace::Namespaces;
    use crate::sparql::parse_query;

    #[test]
    fn matador_path_query() {
        let g = SchemaGraph::builtin();
        let path = LinkPath::new(&["sider", "compound_hub", "matador", "uniprot_hub", "kegg"]);
        let q = path_to_query(&path, &g).unwrap();
        assert_eq!(q.node_vars, vec!["sider", "compound_hub", "matador", "uniprot_hub", "kegg"]);
        let ast = parse_query(&q.text, &Namespaces::empty()).unwrap();
        assert_eq!(ast.pattern.triples.len(), 6);
        assert!(q.text.contains("?matador <http://lodchem.org/matador/uniprot> ?uniprot_hub"));
        assert!(q.text.contains("?sider_compound_hub_rec <http://lodchem.org/sider/cid> ?compound_hub"));
    }

    #[test]
    fn one_edge_query() {
        let g = build_schema_graph(
            "[[nodes]]\nname = \"a-1\"\n[[nodes]]\nname = \"2b\"\n[[edges]]\nbetween = [\"a-1\", \"2b\"]\npredicates = [\"rdf:type\", \"self\"]\n",
        )
        .unwrap();
        let q = path_to_query(&LinkPath::new(&["a-1", "2b"]), &g).unwrap();
        let ast = parse_query(&q.text, &Namespaces::empty()).unwrap();
        assert_eq!(ast.pattern.triples.len(), 1);
        assert_eq!(ast.header().len(), 2);
        assert_eq!(q.node_vars, vec!["a_1", "n2b"]);
    }

    #[test]
    fn colliding_names_get_suffixes() {
        let g = build_schema_graph(
            "[[nodes]]\nname = \"a-b\"\n[[nodes]]\nname = \"a_b\"\n[[edges]]\nbetween = [\"a-b\", \"a_b\"]\npredicates = [\"rdf:type\", \"self\"]\n",
        )
        .unwrap();
        let q = path_to_query(&LinkPath::new(&["a-b", "a_b"]), &g).unwrap();
        assert_eq!(q.node_vars, vec!["a_b", "a_b_2"]);
    }

    #[test]
    fn invalid_path_rejected() {
        let g = SchemaGraph::builtin();
        assert!(path_to_query(&LinkPath::new(&["sider", "kegg"]), &g).is_err());
    }
}
