//! SELECT-only SPARQL subset: basic graph patterns, `FILTER` comparisons and
//! `regex`, `UNION`, `COUNT(...) AS ?alias`, `GROUP BY`, `ORDER BY` and
//! `LIMIT`.
//!
//! Grammar accepted by [`parse_query`]:
//!
//! ```text
//! query      := prefix* SELECT DISTINCT? projection WHERE? group
//!               (GROUP BY var+)? (ORDER BY key+)? (LIMIT int)?
//! prefix     := PREFIX pname: <iri>
//! projection := '*' | (var | '(' COUNT '(' DISTINCT? ('*' | var) ')' AS var ')')+
//! group      := '{' (triples | FILTER filter | group (UNION group)* | '.')* '}'
//! triples    := term verb objects (';' verb objects)*      verb := term | 'a'
//! filter     := '(' var op const ')' | '(' const op var ')' | regex(var, "re" [, "i"])
//! key        := var | ASC(var) | DESC(var)
//! ```
//!
//! Evaluation uses set semantics: every solution is distinct, and a query
//! that groups without aggregates is a projection with duplicates removed.
//! Rows come out in a deterministic order (sorted by value) before
//! `ORDER BY` and `LIMIT` are applied.

mod ast;
mod eval;
mod lexer;
mod parser;
mod results;

pub use ast::*;
pub use eval::evaluate_with;
pub use parser::parse_query;
pub use results::ResultTable;

use crate::exec::Execution;
use crate::store::Store;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QueryError {
    #[error("syntax error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unknown prefix '{prefix}:' at byte {position}")]
    Prefix { prefix: String, position: usize },
    #[error("invalid query: {0}")]
    Invalid(String),
    #[error("evaluation error: {0}")]
    Eval(String),
}

impl QueryError {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        QueryError::Parse {
            position,
            message: message.into(),
        }
    }

    pub fn position(&self) -> Option<usize> {
        match self {
            QueryError::Parse { position, .. } | QueryError::Prefix { position, .. } => {
                Some(*position)
            }
            _ => None,
        }
    }
}

pub fn evaluate(ast: &QueryAst, store: &Store) -> Result<ResultTable, QueryError> {
    evaluate_with(ast, store, Execution::default())
}

/// Parses `text` against the store's namespace table and evaluates it.
pub fn run_query(store: &Store, text: &str) -> Result<ResultTable, QueryError> {
    evaluate(&parse_query(text, store.namespaces())?, store)
}

#[cfg(test)]
mod tests;
