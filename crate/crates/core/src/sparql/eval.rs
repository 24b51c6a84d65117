use std::collections::{BTreeMap, BTreeSet, HashMap};

use regex::{Regex, RegexBuilder};

use super::ast::*;
use super::results::ResultTable;
use super::QueryError;
use crate::exec::Execution;
use crate::store::{Store, TermId};
use crate::term::{value_order, Datatype, Literal, Term};

/// Row batches smaller than this are extended on the calling thread.
const MIN_PARALLEL_ROWS: usize = 256;
/// Upper bound when estimating a pattern's selectivity.
const ESTIMATE_CAP: usize = 10_000;

type Row = Vec<Option<TermId>>;

pub(super) fn compile_regex(pattern: &str, case_insensitive: bool) -> Result<Regex, String> {
    RegexBuilder::new(pattern)
        .case_insensitive(case_insensitive)
        .build()
        .map_err(|e| format!("bad regex: {e}"))
}

pub fn evaluate_with(
    ast: &QueryAst,
    store: &Store,
    exec: Execution,
) -> Result<ResultTable, QueryError> {
    let vars = ast.pattern.variables();
    let slots: HashMap<Var, usize> = vars.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let ev = Evaluator {
        store,
        slots: &slots,
        width: vars.len(),
        exec,
    };
    let plan = ev.prepare(&ast.pattern)?;
    let solutions = match plan {
        Some(plan) => ev.run(&plan, vec![vec![None; vars.len()]]),
        None => Vec::new(),
    };

    let header = ast.header();
    let mut rows: Vec<Vec<Option<Term>>> = if ast.is_grouped() {
        group_rows(ast, &slots, &solutions, store)
    } else {
        let cols: Vec<usize> = header.iter().map(|v| slots[v]).collect();
        solutions
            .iter()
            .map(|r| cols.iter().map(|&c| r[c].map(|id| store.term(id).clone())).collect())
            .collect()
    };
    rows.sort();
    rows.dedup();
    if !ast.order_by.is_empty() {
        let keys: Vec<(usize, bool)> = ast
            .order_by
            .iter()
            .map(|k| (header.iter().position(|v| *v == k.var).unwrap(), k.descending))
            .collect();
        rows.sort_by(|a, b| {
            for &(col, desc) in &keys {
                let ord = value_order(a[col].as_ref(), b[col].as_ref());
                let ord = if desc { ord.reverse() } else { ord };
                if ord.is_ne() {
                    return ord;
                }
            }
            std::cmp::Ordering::Equal
        });
    }
    if let Some(limit) = ast.limit {
        rows.truncate(limit);
    }
    Ok(ResultTable::new(
        header.into_iter().map(|v| v.0).collect(),
        rows,
    ))
}

fn group_rows(
    ast: &QueryAst,
    slots: &HashMap<Var, usize>,
    solutions: &[Row],
    store: &Store,
) -> Vec<Vec<Option<Term>>> {
    let key_cols: Vec<usize> = ast.group_by.iter().map(|v| slots[v]).collect();
    let mut groups: BTreeMap<Vec<Option<TermId>>, Vec<&Row>> = BTreeMap::new();
    for row in solutions {
        let key = key_cols.iter().map(|&c| row[c]).collect();
        groups.entry(key).or_default().push(row);
    }
    let items: Vec<ProjectionItem> = match &ast.projection {
        Projection::Items(items) => items.clone(),
        Projection::All => ast.group_by.iter().cloned().map(ProjectionItem::Var).collect(),
    };
    groups
        .into_iter()
        .map(|(key, members)| {
            items
                .iter()
                .map(|item| match item {
                    ProjectionItem::Var(v) => {
                        let i = ast.group_by.iter().position(|g| g == v).unwrap();
                        key[i].map(|id| store.term(id).clone())
                    }
                    ProjectionItem::Count { arg, distinct, .. } => {
                        let n = match arg {
                            CountArg::Star if *distinct => {
                                members.iter().collect::<BTreeSet<_>>().len()
                            }
                            CountArg::Star => members.len(),
                            CountArg::Var(v) => {
                                let c = slots[v];
                                let bound = members.iter().filter_map(|r| r[c]);
                                if *distinct {
                                    bound.collect::<BTreeSet<_>>().len()
                                } else {
                                    bound.count()
                                }
                            }
                        };
                        Some(Term::Literal(Literal::integer(n as i64)))
                    }
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
enum Slot {
    Const(TermId),
    Var(usize),
}

struct CompiledFilter {
    slot: usize,
    test: FilterTest,
}

enum FilterTest {
    Compare(CompareOp, Term),
    Regex(Regex),
}

/// A group with constants resolved to ids and variables to slots.
struct Plan {
    triples: Vec<[Slot; 3]>,
    /// Constant-only selectivity estimate per triple.
    estimates: Vec<usize>,
    filters: Vec<CompiledFilter>,
    unions: Vec<Vec<Plan>>,
}

struct Evaluator<'a> {
    store: &'a Store,
    slots: &'a HashMap<Var, usize>,
    width: usize,
    exec: Execution,
}

impl Evaluator<'_> {
    /// `Ok(None)` when a constant is absent from the store, so the group
    /// cannot match anything.
    fn prepare(&self, group: &GroupPattern) -> Result<Option<Plan>, QueryError> {
        if group.is_empty() {
            return Err(QueryError::Eval("group pattern has no triple patterns".into()));
        }
        let scope: BTreeSet<Var> = group.variables().into_iter().collect();
        let mut filters = Vec::new();
        for f in &group.filters {
            if !scope.contains(f.var()) {
                return Err(QueryError::Eval(format!(
                    "filter variable {} is not bound in its group",
                    f.var()
                )));
            }
            let test = match f {
                FilterExpr::Compare { op, value, .. } => FilterTest::Compare(*op, value.clone()),
                FilterExpr::Regex {
                    pattern,
                    case_insensitive,
                    ..
                } => FilterTest::Regex(
                    compile_regex(pattern, *case_insensitive).map_err(QueryError::Eval)?,
                ),
            };
            filters.push(CompiledFilter {
                slot: self.slots[f.var()],
                test,
            });
        }

        let mut triples = Vec::new();
        let mut estimates = Vec::new();
        let mut satisfiable = true;
        for t in &group.triples {
            let mut compiled = [Slot::Var(0); 3];
            for (i, pos) in t.positions().into_iter().enumerate() {
                compiled[i] = match pos {
                    PatternTerm::Var(v) => Slot::Var(self.slots[v]),
                    PatternTerm::Iri(iri) => match self.store.iri_id(iri) {
                        Some(id) => Slot::Const(id),
                        None => {
                            satisfiable = false;
                            Slot::Var(0)
                        }
                    },
                    PatternTerm::Literal(l) => match self.store.term_id(&Term::Literal(l.clone())) {
                        Some(id) => Slot::Const(id),
                        None => {
                            satisfiable = false;
                            Slot::Var(0)
                        }
                    },
                };
            }
            let c = |s: Slot| match s {
                Slot::Const(id) => Some(id),
                Slot::Var(_) => None,
            };
            estimates.push(self.store.count_ids(
                c(compiled[0]),
                c(compiled[1]),
                c(compiled[2]),
                ESTIMATE_CAP,
            ));
            triples.push(compiled);
        }

        let mut unions = Vec::new();
        for chain in &group.unions {
            let mut branches = Vec::new();
            for branch in chain {
                if let Some(plan) = self.prepare(branch)? {
                    branches.push(plan);
                }
            }
            if branches.is_empty() {
                satisfiable = false;
            }
            unions.push(branches);
        }
        Ok(satisfiable.then_some(Plan {
            triples,
            estimates,
            filters,
            unions,
        }))
    }

    fn run(&self, plan: &Plan, seed: Vec<Row>) -> Vec<Row> {
        let mut rows = seed;
        if rows.is_empty() {
            return rows;
        }
        let mut bound: BTreeSet<usize> = (0..self.width).filter(|&i| rows.iter().all(|r| r[i].is_some())).collect();
        let mut applied = vec![false; plan.filters.len()];
        let mut remaining: Vec<usize> = (0..plan.triples.len()).collect();

        while !remaining.is_empty() {
            let pick = *remaining
                .iter()
                .min_by_key(|&&i| {
                    let bound_positions = plan.triples[i]
                        .iter()
                        .filter(|s| match s {
                            Slot::Const(_) => true,
                            Slot::Var(v) => bound.contains(v),
                        })
                        .count();
                    (std::cmp::Reverse(bound_positions), plan.estimates[i], i)
                })
                .unwrap();
            remaining.retain(|&i| i != pick);
            let triple = plan.triples[pick];
            rows = self
                .exec
                .flat_map(&rows, MIN_PARALLEL_ROWS, |row| self.extend(row, triple));
            for s in triple {
                if let Slot::Var(v) = s {
                    bound.insert(v);
                }
            }
            self.apply_filters(plan, &mut rows, &mut applied, |slot| bound.contains(&slot));
            rows.sort_unstable();
            rows.dedup();
            if rows.is_empty() {
                return rows;
            }
        }

        for chain in &plan.unions {
            let mut joined = Vec::new();
            for branch in chain {
                joined.extend(self.run(branch, rows.clone()));
            }
            joined.sort_unstable();
            joined.dedup();
            rows = joined;
        }
        self.apply_filters(plan, &mut rows, &mut applied, |_| true);
        rows
    }

    fn apply_filters(
        &self,
        plan: &Plan,
        rows: &mut Vec<Row>,
        applied: &mut [bool],
        ready: impl Fn(usize) -> bool,
    ) {
        for (i, f) in plan.filters.iter().enumerate() {
            if applied[i] || !ready(f.slot) {
                continue;
            }
            applied[i] = true;
            rows.retain(|r| match r[f.slot] {
                Some(id) => filter_passes(&f.test, self.store.term(id)),
                None => false,
            });
        }
    }

    fn extend(&self, row: &Row, triple: [Slot; 3]) -> Vec<Row> {
        let value = |s: Slot| match s {
            Slot::Const(id) => Some(id),
            Slot::Var(v) => row[v],
        };
        let quads = self
            .store
            .match_ids(value(triple[0]), value(triple[1]), value(triple[2]), None);
        let mut out = Vec::with_capacity(quads.len());
        'quads: for q in quads {
            let mut next = row.clone();
            for (slot, id) in triple.iter().zip(q) {
                if let Slot::Var(v) = *slot {
                    match next[v] {
                        Some(existing) if existing != id => continue 'quads,
                        _ => next[v] = Some(id),
                    }
                }
            }
            out.push(next);
        }
        out
    }
}

fn filter_passes(test: &FilterTest, term: &Term) -> bool {
    match test {
        FilterTest::Regex(re) => match term {
            Term::Literal(l) if l.datatype() == Datatype::String => re.is_match(l.lexical()),
            _ => false,
        },
        FilterTest::Compare(op, value) => compare(term, *op, value),
    }
}

/// Comparison with type-error-excludes semantics.
pub(crate) fn compare(left: &Term, op: CompareOp, right: &Term) -> bool {
    use std::cmp::Ordering;
    let ord: Option<Ordering> = match (left, right) {
        (Term::Iri(a), Term::Iri(b)) => {
            return match op {
                CompareOp::Eq => a == b,
                CompareOp::Ne => a != b,
                _ => false,
            }
        }
        (Term::Literal(a), Term::Literal(b)) => match (a.numeric(), b.numeric()) {
            (Some(x), Some(y)) => x.compare(y),
            _ if a.datatype() == b.datatype() => match a.datatype() {
                // "false" < "true" lexically as well
                Datatype::String | Datatype::Boolean => Some(a.lexical().cmp(b.lexical())),
                _ => None,
            },
            _ => None,
        },
        _ => None,
    };
    let Some(ord) = ord else { return false };
    match op {
        CompareOp::Lt => ord.is_lt(),
        CompareOp::Gt => ord.is_gt(),
        CompareOp::Le => ord.is_le(),
        CompareOp::Ge => ord.is_ge(),
        CompareOp::Eq => ord.is_eq(),
        CompareOp::Ne => ord.is_ne(),
    }
}
