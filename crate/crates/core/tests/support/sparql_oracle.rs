//! Random queries over random stores, with a brute-force evaluator that
//! works from the query description rather than from parsed text.

use std::collections::{BTreeMap, BTreeSet};

use lodchem::{GraphInfo, Iri, Literal, ProvenanceRecord, Store, Term, Triple};
use rand::seq::SliceRandom;
use rand::Rng;

pub const GRAPH: &str = "http://example.org/g";

fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

fn node(i: usize) -> Term {
    Term::Iri(iri(&format!("http://example.org/n{i}")))
}

fn pred(i: usize) -> Term {
    Term::Iri(iri(&format!("http://example.org/p{i}")))
}

const WORDS: [&str; 6] = ["alpha", "beta", "gamma", "Alpine", "delta", "beta2"];

fn random_object(rng: &mut impl Rng) -> Term {
    match rng.gen_range(0..3) {
        0 => node(rng.gen_range(0..8)),
        1 => Term::Literal(Literal::integer(rng.gen_range(0..10))),
        _ => Term::Literal(Literal::string(*WORDS.choose(rng).unwrap())),
    }
}

pub fn random_triples(rng: &mut impl Rng, max: usize) -> Vec<(Term, Term, Term)> {
    let n = if max == 0 { 0 } else { rng.gen_range(max / 2..=max) };
    let mut set = BTreeSet::new();
    for _ in 0..n {
        set.insert((node(rng.gen_range(0..8)), pred(rng.gen_range(0..4)), random_object(rng)));
    }
    set.into_iter().collect()
}

pub fn store_of(triples: &[(Term, Term, Term)]) -> Store {
    let mut store = Store::new();
    let g = iri(GRAPH);
    store.register_graph(GraphInfo::new(
        g.clone(),
        None,
        ProvenanceRecord::new("random", "now", "here", "oracle", "tests").unwrap(),
    ));
    for (s, p, o) in triples {
        store
            .insert(&Triple::new(
                s.as_iri().unwrap().clone(),
                p.as_iri().unwrap().clone(),
                o.clone(),
                g.clone(),
            ))
            .unwrap();
    }
    store
}

#[derive(Debug, Clone, PartialEq)]
pub enum Slot {
    Var(&'static str),
    Const(Term),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Op {
    Lt,
    Le,
    Eq,
    Ne,
    Gt,
    Ge,
}

impl Op {
    fn symbol(self) -> &'static str {
        match self {
            Op::Lt => "<",
            Op::Le => "<=",
            Op::Eq => "=",
            Op::Ne => "!=",
            Op::Gt => ">",
            Op::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Filter {
    Cmp(&'static str, Op, Term),
    /// Case-insensitive substring search.
    Contains(&'static str, String),
}

#[derive(Debug, Clone, Default)]
pub struct Group {
    pub patterns: Vec<[Slot; 3]>,
    pub filters: Vec<Filter>,
    pub union: Vec<Group>,
}

#[derive(Debug, Clone)]
pub enum Select {
    All,
    Vars(Vec<&'static str>),
    /// `?key (COUNT(arg) AS ?n)`; `None` means `COUNT(*)`.
    Count { key: &'static str, arg: Option<&'static str>, distinct: bool },
}

#[derive(Debug, Clone)]
pub struct RandomQuery {
    pub select: Select,
    pub group: Group,
}

/// Node variables; the last one only ever appears in object position.
const VARS: [&str; 4] = ["a", "b", "c", "x"];
const BRANCH_VARS: [&str; 5] = ["a", "b", "c", "d", "x"];

fn random_slot(rng: &mut impl Rng, position: usize, vars: &[&'static str]) -> Slot {
    if position == 1 {
        // predicates get their own variable so joins stay satisfiable
        return if rng.gen_bool(0.3) {
            Slot::Var("p")
        } else {
            Slot::Const(pred(rng.gen_range(0..4)))
        };
    }
    let pool = if position == 0 { &vars[..vars.len() - 1] } else { vars };
    if rng.gen_bool(0.75) {
        return Slot::Var(pool.choose(rng).copied().unwrap());
    }
    Slot::Const(match position {
        0 => node(rng.gen_range(0..8)),
        _ => random_object(rng),
    })
}

fn group_vars(g: &Group) -> BTreeSet<&'static str> {
    let mut out = BTreeSet::new();
    for p in &g.patterns {
        for s in p {
            if let Slot::Var(v) = s {
                out.insert(*v);
            }
        }
    }
    out
}

fn random_filters(rng: &mut impl Rng, scope: &BTreeSet<&'static str>) -> Vec<Filter> {
    let scope: Vec<&'static str> = scope.iter().copied().collect();
    if scope.is_empty() {
        return Vec::new();
    }
    let ops = [Op::Lt, Op::Le, Op::Eq, Op::Ne, Op::Gt, Op::Ge];
    let mut out = Vec::new();
    for _ in 0..rng.gen_range(0..=2usize).saturating_sub(rng.gen_range(0..=1)) {
        let v = *scope.choose(rng).unwrap();
        if rng.gen_bool(0.3) {
            let pat = ["al", "BET", "a", "zz"].choose(rng).unwrap().to_string();
            out.push(Filter::Contains(v, pat));
        } else {
            let op = *ops.choose(rng).unwrap();
            // mostly numeric constants, which every integer object can meet
            let c = if rng.gen_bool(0.6) {
                Term::Literal(Literal::integer(rng.gen_range(0..10)))
            } else {
                random_object(rng)
            };
            out.push(Filter::Cmp(v, op, c));
        }
    }
    out
}

fn random_bgp(rng: &mut impl Rng, n: usize, vars: &[&'static str]) -> Group {
    let mut g = Group::default();
    for _ in 0..n {
        g.patterns.push([random_slot(rng, 0, vars), random_slot(rng, 1, vars), random_slot(rng, 2, vars)]);
    }
    g
}

pub fn random_query(rng: &mut impl Rng) -> RandomQuery {
    let n = rng.gen_range(1..=3);
    let mut group = random_bgp(rng, n, &VARS);
    if rng.gen_bool(0.3) {
        for _ in 0..2 {
            let n = rng.gen_range(1..=2);
            let mut branch = random_bgp(rng, n, &BRANCH_VARS);
            branch.filters = random_filters(rng, &group_vars(&branch));
            group.union.push(branch);
        }
    }
    group.filters = random_filters(rng, &group_vars(&group));
    let mut bound: Vec<&'static str> = group_vars(&group).into_iter().collect();
    for b in &group.union {
        bound.extend(group_vars(b));
    }
    bound.sort();
    bound.dedup();
    let select = if bound.is_empty() || rng.gen_bool(0.3) {
        Select::All
    } else if rng.gen_bool(0.25) {
        let key = *bound.choose(rng).unwrap();
        let arg = if rng.gen_bool(0.5) { Some(*bound.choose(rng).unwrap()) } else { None };
        let distinct = rng.gen_bool(0.5);
        Select::Count { key, arg, distinct }
    } else {
        let mut vs: Vec<&'static str> = Vec::new();
        for v in &bound {
            if rng.gen_bool(0.6) {
                vs.push(v);
            }
        }
        if vs.is_empty() {
            vs.push(bound[0]);
        }
        Select::Vars(vs)
    };
    RandomQuery { select, group }
}

fn render_term(t: &Term) -> String {
    match t {
        Term::Iri(i) => format!("<{i}>"),
        Term::Literal(l) if l.is_numeric() => l.lexical().to_string(),
        Term::Literal(l) => format!("\"{}\"", l.lexical()),
    }
}

fn render_slot(s: &Slot) -> String {
    match s {
        Slot::Var(v) => format!("?{v}"),
        Slot::Const(t) => render_term(t),
    }
}

fn render_group(g: &Group) -> String {
    let mut out = String::from("{ ");
    for p in &g.patterns {
        out.push_str(&format!("{} {} {} . ", render_slot(&p[0]), render_slot(&p[1]), render_slot(&p[2])));
    }
    if !g.union.is_empty() {
        let branches: Vec<String> = g.union.iter().map(render_group).collect();
        out.push_str(&branches.join(" UNION "));
        out.push(' ');
    }
    for f in &g.filters {
        match f {
            Filter::Cmp(v, op, t) => out.push_str(&format!("FILTER (?{v} {} {}) ", op.symbol(), render_term(t))),
            Filter::Contains(v, pat) => out.push_str(&format!("FILTER regex(?{v}, \"{pat}\", \"i\") ")),
        }
    }
    out.push('}');
    out
}

impl RandomQuery {
    pub fn text(&self) -> String {
        let body = render_group(&self.group);
        match &self.select {
            Select::All => format!("SELECT * WHERE {body}"),
            Select::Vars(vs) => {
                let vs: Vec<String> = vs.iter().map(|v| format!("?{v}")).collect();
                format!("SELECT DISTINCT {} WHERE {body}", vs.join(" "))
            }
            Select::Count { key, arg, distinct } => {
                let d = if *distinct { "DISTINCT " } else { "" };
                let a = arg.map_or("*".to_string(), |a| format!("?{a}"));
                format!("SELECT ?{key} (COUNT({d}{a}) AS ?n) WHERE {body} GROUP BY ?{key}")
            }
        }
    }
}

pub type Solution = BTreeMap<&'static str, Term>;

fn compatible(a: &Solution, b: &Solution) -> bool {
    a.iter().all(|(k, v)| b.get(k).is_none_or(|w| w == v))
}

fn merge(a: &Solution, b: &Solution) -> Solution {
    let mut m = a.clone();
    m.extend(b.iter().map(|(k, v)| (*k, v.clone())));
    m
}

fn match_pattern(p: &[Slot; 3], t: &(Term, Term, Term), sol: &Solution) -> Option<Solution> {
    let mut out = sol.clone();
    for (slot, value) in p.iter().zip([&t.0, &t.1, &t.2]) {
        match slot {
            Slot::Const(c) => {
                if c != value {
                    return None;
                }
            }
            Slot::Var(v) => match out.get(v) {
                Some(bound) if bound != value => return None,
                Some(_) => {}
                None => {
                    out.insert(v, value.clone());
                }
            },
        }
    }
    Some(out)
}

fn compare(left: &Term, op: Op, right: &Term) -> bool {
    use std::cmp::Ordering;
    let ord: Option<Ordering> = match (left, right) {
        (Term::Iri(a), Term::Iri(b)) => {
            return match op {
                Op::Eq => a == b,
                Op::Ne => a != b,
                _ => false,
            }
        }
        (Term::Literal(a), Term::Literal(b)) => {
            if a.is_numeric() && b.is_numeric() {
                let (x, y): (f64, f64) = (a.lexical().parse().unwrap(), b.lexical().parse().unwrap());
                x.partial_cmp(&y)
            } else if !a.is_numeric() && !b.is_numeric() && a.datatype() == b.datatype() {
                Some(a.lexical().cmp(b.lexical()))
            } else {
                None
            }
        }
        _ => None,
    };
    let Some(ord) = ord else { return false };
    match op {
        Op::Lt => ord.is_lt(),
        Op::Le => ord.is_le(),
        Op::Eq => ord.is_eq(),
        Op::Ne => ord.is_ne(),
        Op::Gt => ord.is_gt(),
        Op::Ge => ord.is_ge(),
    }
}

fn passes(f: &Filter, sol: &Solution) -> bool {
    match f {
        Filter::Cmp(v, op, c) => sol.get(v).is_some_and(|t| compare(t, *op, c)),
        Filter::Contains(v, pat) => match sol.get(v) {
            Some(Term::Literal(l)) if !l.is_numeric() => l.lexical().to_lowercase().contains(&pat.to_lowercase()),
            _ => false,
        },
    }
}

/// Nested-loop evaluation: every pattern is matched against every triple.
pub fn eval_group(g: &Group, triples: &[(Term, Term, Term)]) -> BTreeSet<Solution> {
    let mut sols: BTreeSet<Solution> = BTreeSet::from([Solution::new()]);
    for p in &g.patterns {
        let mut next = BTreeSet::new();
        for s in &sols {
            for t in triples {
                if let Some(m) = match_pattern(p, t, s) {
                    next.insert(m);
                }
            }
        }
        sols = next;
    }
    if !g.union.is_empty() {
        let mut branch_sols = BTreeSet::new();
        for b in &g.union {
            branch_sols.extend(eval_group(b, triples));
        }
        let mut next = BTreeSet::new();
        for s in &sols {
            for b in &branch_sols {
                if compatible(s, b) {
                    next.insert(merge(s, b));
                }
            }
        }
        sols = next;
    }
    sols.into_iter().filter(|s| g.filters.iter().all(|f| passes(f, s))).collect()
}

/// Expected result rows, rendered as N-Triples cells (`None` = unbound).
pub fn expected_rows(q: &RandomQuery, triples: &[(Term, Term, Term)]) -> (Vec<String>, BTreeSet<Vec<Option<String>>>) {
    let sols = eval_group(&q.group, triples);
    let cell = |t: Option<&Term>| t.map(|t| t.to_string());
    match &q.select {
        Select::All => {
            let mut vars: BTreeSet<&'static str> = group_vars(&q.group);
            for b in &q.group.union {
                vars.extend(group_vars(b));
            }
            let header: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
            let rows = sols.iter().map(|s| vars.iter().map(|v| cell(s.get(v))).collect()).collect();
            (header, rows)
        }
        Select::Vars(vs) => {
            let rows = sols.iter().map(|s| vs.iter().map(|v| cell(s.get(v))).collect()).collect();
            (vs.iter().map(|v| v.to_string()).collect(), rows)
        }
        Select::Count { key, arg, distinct } => {
            let mut groups: BTreeMap<Option<Term>, Vec<&Solution>> = BTreeMap::new();
            for s in &sols {
                groups.entry(s.get(key).cloned()).or_default().push(s);
            }
            let rows = groups
                .into_iter()
                .map(|(k, members)| {
                    let n = match (arg, distinct) {
                        (None, _) => members.len(),
                        (Some(a), false) => members.iter().filter(|s| s.contains_key(a)).count(),
                        (Some(a), true) => members.iter().filter_map(|s| s.get(a)).collect::<BTreeSet<_>>().len(),
                    };
                    vec![cell(k.as_ref()), Some(Term::Literal(Literal::integer(n as i64)).to_string())]
                })
                .collect();
            (vec![key.to_string(), "n".to_string()], rows)
        }
    }
}
