//! Linked-data integration engine for systems chemical biology.
//!
//! Datasets are loaded into an indexed quad store ([`store`]) through
//! declarative manifests ([`ingest`]), queried with a SPARQL subset
//! ([`sparql`]), connected automatically by enumerating paths over a schema
//! graph of data sources ([`linkpath`]), scored ([`analytics`]) and checked
//! against a literature corpus ([`litxval`]).

pub mod analytics;
pub mod exec;
pub mod facets;
pub mod ingest;
pub mod linkpath;
pub mod litxval;
pub mod namespace;
pub mod network;
pub mod provenance;
pub mod sparql;
pub mod store;
pub mod term;
pub mod vocab;

pub use exec::Execution;
pub use namespace::Namespaces;
pub use provenance::{Domain, GraphInfo, ProvenanceRecord};
pub use store::{Pattern, Store, StoreError, TermId, Triple};
pub use term::{Datatype, Iri, Literal, Term};
