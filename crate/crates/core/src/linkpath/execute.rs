use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::enumerate::{enumerate_paths, LinkPath};
use super::query::path_to_query;
use super::schema::{SchemaError, SchemaGraph};
use crate::exec::Execution;
use crate::sparql::{self, ResultTable};
use crate::store::Store;
use crate::term::{Literal, Term};

/// Outcome of running one path's query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathRun {
    pub path: LinkPath,
    pub query: String,
    /// Distinct node-value chains, one term per path node.
    #[serde(skip)]
    pub chains: Vec<Vec<Term>>,
    pub rows: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// One combined answer: a (from, to) entity pair with the paths producing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkRow {
    pub from: Term,
    pub to: Term,
    /// Indexes into [`LinkResult::runs`].
    pub paths: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkResult {
    pub runs: Vec<PathRun>,
    pub rows: Vec<LinkRow>,
}

impl LinkResult {
    pub fn attempted(&self) -> usize {
        self.runs.len()
    }

    pub fn failed(&self) -> Vec<&PathRun> {
        self.runs.iter().filter(|r| r.error.is_some()).collect()
    }

    /// `from`, `to`, `paths` table; the `paths` cell lists the contributing
    /// paths in bracket notation separated by `; `.
    pub fn to_table(&self) -> ResultTable {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let paths: Vec<String> = r.paths.iter().map(|&i| self.runs[i].path.to_string()).collect();
                vec![
                    Some(r.from.clone()),
                    Some(r.to.clone()),
                    Some(Term::Literal(Literal::string(paths.join("; ")))),
                ]
            })
            .collect();
        ResultTable::new(vec!["from".into(), "to".into(), "paths".into()], rows)
    }
}

/// Runs every path's query (in parallel under `exec`), then merges rows on
/// the sameAs-resolved endpoints. A failing path is recorded in its
/// [`PathRun`] and does not stop the others.
pub fn execute_paths(
    store: &Store,
    g: &SchemaGraph,
    paths: &[LinkPath],
    exec: Execution,
) -> LinkResult {
    let runs: Vec<PathRun> = exec.map(paths, |path| run_path(store, g, path));
    let mut merged: BTreeMap<(Term, Term), BTreeSet<usize>> = BTreeMap::new();
    for (i, run) in runs.iter().enumerate() {
        for chain in &run.chains {
            let from = store.resolve_term(&chain[0]);
            let to = store.resolve_term(chain.last().unwrap());
            merged.entry((from, to)).or_default().insert(i);
        }
    }
    let rows = merged
        .into_iter()
        .map(|((from, to), paths)| LinkRow {
            from,
            to,
            paths: paths.into_iter().collect(),
        })
        .collect();
    LinkResult { runs, rows }
}

fn run_path(store: &Store, g: &SchemaGraph, path: &LinkPath) -> PathRun {
    let mut run = PathRun {
        path: path.clone(),
        query: String::new(),
        chains: Vec::new(),
        rows: 0,
        error: None,
    };
    let q = match path_to_query(path, g) {
        Ok(q) => q,
        Err(e) => {
            run.error = Some(e.to_string());
            return run;
        }
    };
    run.query = q.text.clone();
    let table = sparql::parse_query(&q.text, store.namespaces())
        .and_then(|ast| sparql::evaluate_with(&ast, store, Execution::Sequential));
    match table {
        Ok(t) => {
            run.chains = t
                .rows
                .into_iter()
                .filter_map(|r| r.into_iter().collect::<Option<Vec<Term>>>())
                .collect();
            run.rows = run.chains.len();
        }
        Err(e) => run.error = Some(e.to_string()),
    }
    run
}

/// Enumerates the paths between two classes and executes them.
pub fn execute_linkpaths(
    store: &Store,
    g: &SchemaGraph,
    from: &str,
    to: &str,
    max_len: usize,
    exec: Execution,
) -> Result<LinkResult, SchemaError> {
    let paths = enumerate_paths(g, g.class(from)?, g.class(to)?, max_len)?;
    Ok(execute_paths(store, g, &paths, exec))
}
