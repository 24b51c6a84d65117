use std::collections::BTreeSet;
use std::fmt;

use crate::term::{Datatype, Iri, Literal, Term};

/// A variable name, without the leading `?`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub String);

impl Var {
    pub fn new(name: impl Into<String>) -> Self {
        Var(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "?{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternTerm {
    Var(Var),
    Iri(Iri),
    Literal(Literal),
}

impl PatternTerm {
    pub fn var(&self) -> Option<&Var> {
        match self {
            PatternTerm::Var(v) => Some(v),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn new(subject: PatternTerm, predicate: PatternTerm, object: PatternTerm) -> Self {
        TriplePattern {
            subject,
            predicate,
            object,
        }
    }

    pub fn positions(&self) -> [&PatternTerm; 3] {
        [&self.subject, &self.predicate, &self.object]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CompareOp {
    Lt,
    Gt,
    Le,
    Ge,
    Eq,
    Ne,
}

impl CompareOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CompareOp::Lt => "<",
            CompareOp::Gt => ">",
            CompareOp::Le => "<=",
            CompareOp::Ge => ">=",
            CompareOp::Eq => "=",
            CompareOp::Ne => "!=",
        }
    }

    /// The operator with its operands swapped (`5 < ?x` is `?x > 5`).
    pub fn flipped(self) -> Self {
        match self {
            CompareOp::Lt => CompareOp::Gt,
            CompareOp::Gt => CompareOp::Lt,
            CompareOp::Le => CompareOp::Ge,
            CompareOp::Ge => CompareOp::Le,
            op => op,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FilterExpr {
    Compare {
        var: Var,
        op: CompareOp,
        value: Term,
    },
    /// Unanchored regular-expression search over a string literal.
    Regex {
        var: Var,
        pattern: String,
        case_insensitive: bool,
    },
}

impl FilterExpr {
    pub fn var(&self) -> &Var {
        match self {
            FilterExpr::Compare { var, .. } | FilterExpr::Regex { var, .. } => var,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GroupPattern {
    pub triples: Vec<TriplePattern>,
    pub filters: Vec<FilterExpr>,
    /// Each entry is one `{..} UNION {..} ...` chain; a lone nested group is
    /// a chain of length one.
    pub unions: Vec<Vec<GroupPattern>>,
}

impl GroupPattern {
    pub fn is_empty(&self) -> bool {
        self.triples.is_empty() && self.unions.is_empty()
    }

    /// Variables in scope, in order of first appearance.
    pub fn variables(&self) -> Vec<Var> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.collect_vars(&mut seen, &mut out);
        out
    }

    fn collect_vars(&self, seen: &mut BTreeSet<Var>, out: &mut Vec<Var>) {
        for t in &self.triples {
            for v in t.positions().into_iter().filter_map(PatternTerm::var) {
                if seen.insert(v.clone()) {
                    out.push(v.clone());
                }
            }
        }
        for chain in &self.unions {
            for branch in chain {
                branch.collect_vars(seen, out);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CountArg {
    Star,
    Var(Var),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProjectionItem {
    Var(Var),
    Count {
        arg: CountArg,
        distinct: bool,
        alias: Var,
    },
}

impl ProjectionItem {
    pub fn output_var(&self) -> &Var {
        match self {
            ProjectionItem::Var(v) => v,
            ProjectionItem::Count { alias, .. } => alias,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Projection {
    All,
    Items(Vec<ProjectionItem>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderKey {
    pub var: Var,
    pub descending: bool,
}

/// A parsed SELECT query.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QueryAst {
    pub distinct: bool,
    pub projection: Projection,
    pub pattern: GroupPattern,
    pub group_by: Vec<Var>,
    pub order_by: Vec<OrderKey>,
    pub limit: Option<usize>,
}

impl QueryAst {
    pub fn has_aggregates(&self) -> bool {
        match &self.projection {
            Projection::All => false,
            Projection::Items(items) => items
                .iter()
                .any(|i| matches!(i, ProjectionItem::Count { .. })),
        }
    }

    pub fn is_grouped(&self) -> bool {
        !self.group_by.is_empty() || self.has_aggregates()
    }

    /// Column names of the result table.
    pub fn header(&self) -> Vec<Var> {
        match &self.projection {
            Projection::Items(items) => items.iter().map(|i| i.output_var().clone()).collect(),
            Projection::All if self.is_grouped() => self.group_by.clone(),
            Projection::All => self.pattern.variables(),
        }
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, t: &PatternTerm) -> fmt::Result {
    match t {
        PatternTerm::Var(v) => write!(f, "{v}"),
        PatternTerm::Iri(iri) => write!(f, "<{iri}>"),
        PatternTerm::Literal(l) => write_literal(f, l),
    }
}

fn write_literal(f: &mut fmt::Formatter<'_>, l: &Literal) -> fmt::Result {
    match l.datatype() {
        Datatype::Integer => f.write_str(l.lexical()),
        Datatype::Decimal if l.lexical().contains('.') => f.write_str(l.lexical()),
        Datatype::Boolean => f.write_str(l.lexical()),
        Datatype::String => write_string(f, l.lexical()),
        Datatype::Decimal => {
            write_string(f, l.lexical())?;
            write!(f, "^^<{}>", l.datatype().iri())
        }
    }
}

fn write_string(f: &mut fmt::Formatter<'_>, s: &str) -> fmt::Result {
    f.write_str("\"")?;
    for c in s.chars() {
        match c {
            '"' => f.write_str("\\\"")?,
            '\\' => f.write_str("\\\\")?,
            '\n' => f.write_str("\\n")?,
            '\r' => f.write_str("\\r")?,
            '\t' => f.write_str("\\t")?,
            c => write!(f, "{c}")?,
        }
    }
    f.write_str("\"")
}

fn write_value(f: &mut fmt::Formatter<'_>, t: &Term) -> fmt::Result {
    match t {
        Term::Iri(iri) => write!(f, "<{iri}>"),
        Term::Literal(l) => write_literal(f, l),
    }
}

impl GroupPattern {
    fn write(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let pad = "  ".repeat(depth);
        f.write_str("{\n")?;
        for t in &self.triples {
            write!(f, "{pad}  ")?;
            for (i, pos) in t.positions().into_iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write_term(f, pos)?;
            }
            f.write_str(" .\n")?;
        }
        for chain in &self.unions {
            write!(f, "{pad}  ")?;
            for (i, branch) in chain.iter().enumerate() {
                if i > 0 {
                    f.write_str(" UNION ")?;
                }
                branch.write(f, depth + 1)?;
            }
            f.write_str("\n")?;
        }
        for filter in &self.filters {
            write!(f, "{pad}  FILTER ")?;
            match filter {
                FilterExpr::Compare { var, op, value } => {
                    write!(f, "({var} {} ", op.symbol())?;
                    write_value(f, value)?;
                    f.write_str(")")?;
                }
                FilterExpr::Regex {
                    var,
                    pattern,
                    case_insensitive,
                } => {
                    write!(f, "regex({var}, ")?;
                    write_string(f, pattern)?;
                    if *case_insensitive {
                        f.write_str(", \"i\"")?;
                    }
                    f.write_str(")")?;
                }
            }
            f.write_str("\n")?;
        }
        write!(f, "{pad}}}")
    }
}

/// Canonical text; parsing it back yields an equal AST.
impl fmt::Display for QueryAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SELECT ")?;
        if self.distinct {
            f.write_str("DISTINCT ")?;
        }
        match &self.projection {
            Projection::All => f.write_str("*")?,
            Projection::Items(items) => {
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    match item {
                        ProjectionItem::Var(v) => write!(f, "{v}")?,
                        ProjectionItem::Count {
                            arg,
                            distinct,
                            alias,
                        } => {
                            f.write_str("(COUNT(")?;
                            if *distinct {
                                f.write_str("DISTINCT ")?;
                            }
                            match arg {
                                CountArg::Star => f.write_str("*")?,
                                CountArg::Var(v) => write!(f, "{v}")?,
                            }
                            write!(f, ") AS {alias})")?;
                        }
                    }
                }
            }
        }
        f.write_str(" WHERE ")?;
        self.pattern.write(f, 0)?;
        if !self.group_by.is_empty() {
            f.write_str("\nGROUP BY")?;
            for v in &self.group_by {
                write!(f, " {v}")?;
            }
        }
        if !self.order_by.is_empty() {
            f.write_str("\nORDER BY")?;
            for key in &self.order_by {
                if key.descending {
                    write!(f, " DESC({})", key.var)?;
                } else {
                    write!(f, " ASC({})", key.var)?;
                }
            }
        }
        if let Some(limit) = self.limit {
            write!(f, "\nLIMIT {limit}")?;
        }
        Ok(())
    }
}
