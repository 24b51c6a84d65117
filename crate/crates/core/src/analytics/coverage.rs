//! How much of a domain each source covers.

use std::collections::BTreeSet;

use serde::Serialize;

use super::AnalyticsError;
use crate::sparql;
use crate::store::{Store, TermId};
use crate::term::{Iri, Term};

/// What counts as one record of a source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KeyExtractor {
    /// Distinct objects of `predicate` (within `graph` if given).
    Values { graph: Option<Iri>, predicate: Iri },
    /// Distinct `(left, right)` object pairs sharing a subject, unordered
    /// when `symmetric` (protein–protein interactions).
    Pairs {
        graph: Option<Iri>,
        left: Iri,
        right: Iri,
        symmetric: bool,
    },
    /// Distinct rows of a SELECT query.
    Query(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SourceCoverage {
    pub name: String,
    pub count: usize,
    /// Share of the union in tenths of a percent, rounded half up.
    pub per_mille: u64,
}

impl SourceCoverage {
    pub fn percentage(&self) -> String {
        format!("{}.{}%", self.per_mille / 10, self.per_mille % 10)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub sources: Vec<SourceCoverage>,
    pub union: usize,
    /// Keys present in every source.
    pub intersection: usize,
}

/// `count / union` in tenths of a percent, rounded half up.
pub fn per_mille(count: usize, union: usize) -> u64 {
    if union == 0 {
        return 0;
    }
    let (c, u) = (count as u64, union as u64);
    (c * 2000 + u) / (2 * u)
}

type Key = Vec<Term>;

fn resolved(store: &Store, id: TermId) -> Term {
    store.term(store.resolve_id(id)).clone()
}

pub fn extract_keys(store: &Store, ex: &KeyExtractor) -> Result<BTreeSet<Key>, AnalyticsError> {
    let graph_id = |g: &Option<Iri>| match g {
        None => Ok(None),
        Some(g) => store.iri_id(g).map(Some).ok_or(()),
    };
    let mut keys = BTreeSet::new();
    match ex {
        KeyExtractor::Values { graph, predicate } => {
            let (Ok(g), Some(p)) = (graph_id(graph), store.iri_id(predicate)) else {
                return Ok(keys);
            };
            for q in store.match_ids(None, Some(p), None, g) {
                keys.insert(vec![resolved(store, q[2])]);
            }
        }
        KeyExtractor::Pairs {
            graph,
            left,
            right,
            symmetric,
        } => {
            let (Ok(g), Some(l), Some(r)) = (graph_id(graph), store.iri_id(left), store.iri_id(right)) else {
                return Ok(keys);
            };
            for lq in store.match_ids(None, Some(l), None, g) {
                for rq in store.match_ids(Some(lq[0]), Some(r), None, g) {
                    let mut pair = vec![resolved(store, lq[2]), resolved(store, rq[2])];
                    if *symmetric {
                        pair.sort();
                    }
                    keys.insert(pair);
                }
            }
        }
        KeyExtractor::Query(text) => {
            let t = sparql::run_query(store, text)?;
            for row in t.rows {
                keys.insert(
                    row.into_iter()
                        .flatten()
                        .map(|v| store.resolve_term(&v))
                        .collect(),
                );
            }
        }
    }
    Ok(keys)
}

/// Union and intersection over the named sources' key sets.
pub fn coverage_from_keys(named: &[(String, BTreeSet<Key>)]) -> CoverageReport {
    let mut union: BTreeSet<&Key> = BTreeSet::new();
    for (_, keys) in named {
        union.extend(keys.iter());
    }
    let intersection = match named.split_first() {
        Some(((_, first), rest)) => first
            .iter()
            .filter(|k| rest.iter().all(|(_, ks)| ks.contains(*k)))
            .count(),
        None => 0,
    };
    CoverageReport {
        sources: named
            .iter()
            .map(|(name, keys)| SourceCoverage {
                name: name.clone(),
                count: keys.len(),
                per_mille: per_mille(keys.len(), union.len()),
            })
            .collect(),
        union: union.len(),
        intersection,
    }
}

pub fn coverage_report(
    store: &Store,
    sources: &[(String, KeyExtractor)],
) -> Result<CoverageReport, AnalyticsError> {
    if sources.len() < 2 {
        return Err(AnalyticsError::TooFewSources(sources.len()));
    }
    let named = sources
        .iter()
        .map(|(name, ex)| Ok((name.clone(), extract_keys(store, ex)?)))
        .collect::<Result<Vec<_>, AnalyticsError>>()?;
    Ok(coverage_from_keys(&named))
}

/// Tab-separated distribution table. With one report the columns are
/// `# of records` and `percentage`; with several, each report gets a
/// labelled pair of columns. Source names come from the first report.
pub fn render_table(columns: &[(&str, &CoverageReport)]) -> String {
    let mut out = String::new();
    let Some((_, first)) = columns.first() else {
        return out;
    };
    if columns.len() == 1 {
        out.push_str("Data source\t# of records\tpercentage\n");
    } else {
        out.push_str("Data source");
        for (label, _) in columns {
            out.push_str(&format!("\t{label}\t"));
        }
        out.push('\n');
        for _ in columns {
            out.push_str("\t# of records\tpercentage");
        }
        out.push('\n');
    }
    for (i, src) in first.sources.iter().enumerate() {
        out.push_str(&src.name);
        for (_, report) in columns {
            match report.sources.get(i) {
                Some(s) => out.push_str(&format!("\t{}\t{}", s.count, s.percentage())),
                None => out.push_str("\t\t"),
            }
        }
        out.push('\n');
    }
    out.push_str("ALL");
    for (_, report) in columns {
        out.push_str(&format!("\t{}\t", report.union));
    }
    out.push('\n');
    out
}
