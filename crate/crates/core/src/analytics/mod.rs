//! Scoring and reporting built on the store and query layer.

mod adr;
mod coverage;
mod disease;

pub use adr::{
    efficient_genes, efficient_genes_via_query, rank_pathways, rank_pathways_via_query,
    ranking_query, side_effects_named, EfficientGeneSet, PathwayScore, SideEffect, MIN_DRUGS,
    MIN_GENES,
};
pub use coverage::{
    coverage_from_keys, coverage_report, extract_keys, per_mille, render_table, CoverageReport,
    KeyExtractor, SourceCoverage,
};
pub use disease::{chemicals_of, disease_chemicals, SourceCatalog};

use thiserror::Error;

use crate::sparql::QueryError;

#[derive(Debug, Error)]
pub enum AnalyticsError {
    #[error("unknown source {0:?}")]
    UnknownSource(String),
    #[error("coverage needs at least two sources, got {0}")]
    TooFewSources(usize),
    #[error("bad pattern: {0}")]
    Pattern(String),
    #[error(transparent)]
    Query(#[from] QueryError),
}
