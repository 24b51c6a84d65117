//! Manifest-driven loading of tab-separated source files.

mod affinity;
mod identifier;
mod manifest;

use std::io::Read;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

pub use affinity::{format_affinity, parse_affinity, Affinity, AffinityError, AffinityOp, DEFAULT_UNIT};
pub use identifier::{local_iri, map_identifier, normalize_value, IdKind, MappedId};
pub use manifest::{ColumnSpec, DatasetManifest, Role};

use crate::store::{Store, StoreError, Triple};
use crate::term::{Iri, Literal, Term};
use crate::vocab;
use manifest::ResolvedColumn;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("source has no column {0:?}")]
    MissingColumn(String),
    #[error("bad {kind} identifier {value:?}")]
    BadId { kind: IdKind, value: String },
    #[error(transparent)]
    Affinity(#[from] AffinityError),
    #[error("column {column}: {message}")]
    Value { column: String, message: String },
    #[error("tsv: {0}")]
    Tsv(#[from] csv::Error),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A parsed TSV file: header plus rows of raw cells.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str], rows: &[&[&str]]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: rows
                .iter()
                .map(|r| r.iter().map(|s| s.to_string()).collect())
                .collect(),
        }
    }
}

pub fn read_tsv(reader: impl Read) -> Result<Table, IngestError> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(b'\t')
        .quoting(false)
        .flexible(true)
        .from_reader(reader);
    let header = rdr.headers()?.iter().map(|h| h.trim().to_string()).collect();
    let mut rows = Vec::new();
    for rec in rdr.records() {
        rows.push(rec?.iter().map(str::to_string).collect());
    }
    Ok(Table { header, rows })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowError {
    /// 1-based data row (the header is row 0).
    pub row: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoadReport {
    pub dataset: String,
    pub graph: Iri,
    pub rows: usize,
    /// Rows that produced a subject.
    pub subjects: usize,
    pub skipped: usize,
    /// Statements newly added to the store, provenance included.
    pub added: usize,
    pub provenance_added: usize,
    pub same_as_links: usize,
    pub errors: Vec<RowError>,
}

impl LoadReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{}: {} rows, {} subjects, {} skipped, {} statements added ({} provenance, {} sameAs rows)\n",
            self.dataset,
            self.rows,
            self.subjects,
            self.skipped,
            self.added,
            self.provenance_added,
            self.same_as_links
        );
        for e in &self.errors {
            s.push_str(&format!("  row {}: {}\n", e.row, e.message));
        }
        s
    }
}

/// Loads `table` into `store` under the manifest's graph, registering the
/// graph if needed. Row failures are recorded and skipped; only manifest
/// problems (unknown columns, bad predicates) abort the load.
pub fn load_dataset(
    store: &mut Store,
    manifest: &DatasetManifest,
    table: &Table,
) -> Result<LoadReport, IngestError> {
    manifest.validate()?;
    let columns = manifest.resolve_columns(&table.header, store.namespaces())?;
    let graph = manifest.graph();
    store.register_graph(manifest.graph_info());

    let mut report = LoadReport {
        dataset: manifest.dataset.clone(),
        graph: graph.clone(),
        rows: table.rows.len(),
        subjects: 0,
        skipped: 0,
        added: 0,
        provenance_added: 0,
        same_as_links: 0,
        errors: Vec::new(),
    };
    for (s, p, o) in manifest.provenance.statements(&graph) {
        if store.insert(&Triple::new(s, p, o, graph.clone()))? {
            report.provenance_added += 1;
        }
    }
    report.added = report.provenance_added;

    for (i, row) in table.rows.iter().enumerate() {
        match row_statements(store, &columns, row, &graph) {
            Ok((triples, links)) => {
                report.subjects += 1;
                report.same_as_links += links;
                for t in &triples {
                    if store.insert(t)? {
                        report.added += 1;
                    }
                }
            }
            Err(e) => {
                report.skipped += 1;
                report.errors.push(RowError {
                    row: i + 1,
                    message: e.to_string(),
                });
            }
        }
    }
    Ok(report)
}

/// Reads a manifest and its `source` TSV (relative to the manifest file).
pub fn load_manifest_file(store: &mut Store, path: &Path) -> Result<LoadReport, IngestError> {
    let manifest = DatasetManifest::from_file(path)?;
    let source = manifest
        .source
        .as_deref()
        .ok_or_else(|| IngestError::Manifest("no source file given".into()))?;
    let tsv = path.parent().unwrap_or(Path::new(".")).join(source);
    let table = read_tsv(std::fs::File::open(tsv)?)?;
    load_dataset(store, &manifest, &table)
}

/// Loads every `*.toml` manifest in `dir`, in file-name order.
pub fn load_manifest_dir(store: &mut Store, dir: &Path) -> Result<Vec<LoadReport>, IngestError> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    paths.sort();
    paths.iter().map(|p| load_manifest_file(store, p)).collect()
}

/// All statements for one row, or the first error. Nothing is inserted
/// here, so a failing row leaves the store untouched.
fn row_statements(
    store: &Store,
    columns: &[ResolvedColumn],
    row: &[String],
    graph: &Iri,
) -> Result<(Vec<Triple>, usize), IngestError> {
    let cell = |c: &ResolvedColumn| row.get(c.index).map(|s| s.trim()).unwrap_or("");
    let mut out = Vec::new();
    let mut links = 0;
    let mut id_term = |c: &ResolvedColumn, value: &str, out: &mut Vec<Triple>| {
        let kind = c.kind.expect("validated: id columns have a kind");
        let mapped = map_identifier(store, kind, value, &c.dataset)?;
        if let Some(hub) = &mapped.hub {
            links += 1;
            out.push(Triple::new(
                mapped.local.clone(),
                vocab::same_as(),
                hub.clone(),
                graph.clone(),
            ));
        }
        Ok::<Iri, IngestError>(if c.keep_local {
            mapped.local
        } else {
            mapped.preferred().clone()
        })
    };

    let subject_col = columns
        .iter()
        .find(|c| c.role == Role::SubjectId)
        .expect("validated: one subject column");
    let subject = id_term(subject_col, cell(subject_col), &mut out)?;

    for c in columns.iter().filter(|c| c.role != Role::SubjectId) {
        let value = cell(c);
        if value.is_empty() {
            continue;
        }
        let pred = c.predicate.clone().expect("validated: non-subject columns have a predicate");
        match c.role {
            Role::ObjectId => {
                let o = id_term(c, value, &mut out)?;
                out.push(Triple::new(subject.clone(), pred, o, graph.clone()));
            }
            Role::Literal => {
                let lit = Literal::new(value, c.datatype).map_err(|e| IngestError::Value {
                    column: c.column.clone(),
                    message: e.to_string(),
                })?;
                out.push(Triple::new(subject.clone(), pred, lit, graph.clone()));
            }
            Role::Affinity => {
                let a = parse_affinity(value)?;
                let op_p = Iri::new(format!("{pred}_operator")).expect("suffix keeps IRI valid");
                let val_p = Iri::new(format!("{pred}_value")).expect("suffix keeps IRI valid");
                out.push(Triple::new(
                    subject.clone(),
                    op_p,
                    Literal::string(a.operator.symbol()),
                    graph.clone(),
                ));
                out.push(Triple::new(
                    subject.clone(),
                    val_p,
                    Term::Literal(Literal::decimal(a.value)),
                    graph.clone(),
                ));
                if a.unit != DEFAULT_UNIT {
                    let unit_p = Iri::new(format!("{pred}_unit")).expect("suffix keeps IRI valid");
                    out.push(Triple::new(subject.clone(), unit_p, Literal::string(a.unit), graph.clone()));
                }
            }
            Role::SubjectId => unreachable!(),
        }
    }
    Ok((out, links))
}
