//! Link path generation: a graph over data sources, entity classes mapped to
//! the sources that hold them, enumeration of every simple path between two
//! classes, and execution of each path as a chained query.
//!
//! The relation between classes `A` (sources `A1..Am`) and `B` (sources
//! `B1..Bn`) is the union over all `(Ai, Bj)` of the simple paths joining
//! them.

mod enumerate;
mod execute;
mod query;
mod schema;

pub use enumerate::{enumerate_paths, LinkPath, DEFAULT_MAX_LEN};
pub use execute::{execute_linkpaths, execute_paths, LinkResult, LinkRow, PathRun};
pub use query::{path_to_query, PathQuery};
pub use schema::{
    build_schema_graph, ClassDecl, ClassSourceSet, EdgeDecl, Join, NodeDecl, SchemaDescriptor,
    SchemaError, SchemaGraph, Via, BUILTIN_SCHEMA, SELF,
};
