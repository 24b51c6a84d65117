use serde::Serialize;

use crate::term::Term;

/// Query answer: a header of variable names (without `?`) and rows of
/// optional terms in header order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ResultTable {
    #[serde(rename = "head")]
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<Term>>>,
}

impl ResultTable {
    pub fn new(header: Vec<String>, rows: Vec<Vec<Option<Term>>>) -> Self {
        ResultTable { header, rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        let name = name.strip_prefix('?').unwrap_or(name);
        self.header.iter().position(|h| h == name)
    }

    /// Values of one column, skipping unbound cells.
    pub fn values(&self, name: &str) -> Vec<&Term> {
        match self.column(name) {
            Some(c) => self.rows.iter().filter_map(|r| r[c].as_ref()).collect(),
            None => Vec::new(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("result table serializes")
    }

    /// Tab-separated, header line of `?var` names, cells in N-Triples term
    /// syntax, unbound cells empty.
    pub fn to_tsv(&self) -> String {
        let mut out = self
            .header
            .iter()
            .map(|h| format!("?{h}"))
            .collect::<Vec<_>>()
            .join("\t");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| c.as_ref().map(Term::to_string).unwrap_or_default())
                .collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }
}
