//! Adverse-drug-reaction pathway ranking.
//!
//! Chain: side-effect record (sider) → compound → drug (drugbank_drug) →
//! interaction (drugbank_interaction) → target protein → pathway record
//! (kegg_pathway_protein) → pathway. A target is *efficient* for a side
//! effect when at least [`MIN_DRUGS`] distinct compounds causing the side
//! effect hit it; a pathway qualifies when it contains at least
//! [`MIN_GENES`] efficient targets and is scored by its number of chains.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use regex::RegexBuilder;
use serde::Serialize;

use super::AnalyticsError;
use crate::sparql::{self, ResultTable};
use crate::store::{Store, TermId};
use crate::term::{Datatype, Iri, Term};
use crate::vocab::predicate;

pub const MIN_DRUGS: usize = 2;
pub const MIN_GENES: usize = 2;

/// How the side effect is picked out of the sider records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SideEffect {
    /// By entity IRI (`sider:side_effect_id`), sameAs-resolved.
    Iri(Iri),
    /// By case-insensitive regex search on the name (`sider:side_effect`).
    Name(String),
}

impl SideEffect {
    fn label(&self) -> String {
        match self {
            SideEffect::Iri(iri) => iri.to_string(),
            SideEffect::Name(p) => p.clone(),
        }
    }

    /// Triple patterns selecting `?sider2compound` records.
    fn query_patterns(&self) -> String {
        match self {
            SideEffect::Iri(iri) => format!("?sider2compound sider:side_effect_id <{iri}> ."),
            SideEffect::Name(p) => format!(
                "?sider2compound sider:side_effect ?side_effect . FILTER regex(?side_effect, {}, \"i\") .",
                quote(p)
            ),
        }
    }
}

pub(super) fn quote(s: &str) -> String {
    let escaped = s.replace('\\', "\\\\").replace('"', "\\\"");
    format!("\"{escaped}\"")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EfficientGeneSet {
    pub side_effect: String,
    /// Target IRI → number of distinct causing compounds (always ≥ MIN_DRUGS).
    pub genes: BTreeMap<Iri, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathwayScore {
    pub pathway: Iri,
    pub efficient_gene_count: usize,
    pub association_path_count: usize,
}

struct Preds {
    se_id: Option<TermId>,
    se_name: Option<TermId>,
    sider_cid: Option<TermId>,
    drug_cid: Option<TermId>,
    dbid: Option<TermId>,
    swissprot: Option<TermId>,
    kegg_uniprot: Option<TermId>,
    kegg_pathway: Option<TermId>,
}

impl Preds {
    fn new(store: &Store) -> Self {
        let id = |ds: &str, local: &str| store.iri_id(&predicate(ds, local));
        Preds {
            se_id: id("sider", "side_effect_id"),
            se_name: id("sider", "side_effect"),
            sider_cid: id("sider", "cid"),
            drug_cid: id("drugbank_drug", "CID"),
            dbid: id("drugbank_interaction", "DBID"),
            swissprot: id("drugbank_interaction", "SwissProt_ID"),
            kegg_uniprot: id("kegg_pathway_protein", "Uniprot"),
            kegg_pathway: id("kegg_pathway_protein", "PathwayID"),
        }
    }
}

/// `(record, selector value, compound, drug, interaction, target)` raw ids.
type Link = [TermId; 6];

/// Distinct side-effect → target links, joined on resolved ids.
fn links(store: &Store, se: &SideEffect) -> Result<Vec<Link>, AnalyticsError> {
    let p = Preds::new(store);
    let (Some(sider_cid), Some(drug_cid), Some(dbid), Some(swissprot)) =
        (p.sider_cid, p.drug_cid, p.dbid, p.swissprot)
    else {
        return Ok(Vec::new());
    };

    // (record, selector value)
    let records: Vec<(TermId, TermId)> = match se {
        SideEffect::Iri(iri) => {
            let target = store.iri_id(&store.resolve_entity(iri));
            match (p.se_id, target) {
                (Some(se_id), Some(target)) => store
                    .match_ids(None, Some(se_id), None, None)
                    .into_iter()
                    .filter(|q| store.resolve_id(q[2]) == target)
                    .map(|q| (q[0], q[2]))
                    .collect(),
                _ => Vec::new(),
            }
        }
        SideEffect::Name(pattern) => {
            let re = RegexBuilder::new(pattern)
                .case_insensitive(true)
                .build()
                .map_err(|e| AnalyticsError::Pattern(e.to_string()))?;
            match p.se_name {
                Some(se_name) => store
                    .match_ids(None, Some(se_name), None, None)
                    .into_iter()
                    .filter(|q| match store.term(q[2]) {
                        Term::Literal(l) => l.datatype() == Datatype::String && re.is_match(l.lexical()),
                        Term::Iri(_) => false,
                    })
                    .map(|q| (q[0], q[2]))
                    .collect(),
                None => Vec::new(),
            }
        }
    };

    let mut drugs_by_compound: HashMap<TermId, Vec<TermId>> = HashMap::new();
    for q in store.match_ids(None, Some(drug_cid), None, None) {
        drugs_by_compound
            .entry(store.resolve_id(q[2]))
            .or_default()
            .push(q[0]);
    }

    let mut out = BTreeSet::new();
    for (rec, sel) in records {
        for cq in store.match_ids(Some(rec), Some(sider_cid), None, None) {
            let compound = cq[2];
            let Some(drugs) = drugs_by_compound.get(&store.resolve_id(compound)) else {
                continue;
            };
            for &drug in drugs {
                for tq in store.match_ids(None, Some(dbid), Some(drug), None) {
                    for uq in store.match_ids(Some(tq[0]), Some(swissprot), None, None) {
                        out.insert([rec, sel, compound, drug, tq[0], uq[2]]);
                    }
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn iri_of(store: &Store, id: TermId) -> Option<Iri> {
    store.term(id).as_iri().cloned()
}

fn efficient_ids(store: &Store, links: &[Link]) -> BTreeMap<TermId, usize> {
    let mut compounds: BTreeMap<TermId, BTreeSet<TermId>> = BTreeMap::new();
    for l in links {
        compounds
            .entry(store.resolve_id(l[5]))
            .or_default()
            .insert(store.resolve_id(l[2]));
    }
    compounds
        .into_iter()
        .map(|(g, c)| (g, c.len()))
        .filter(|&(_, n)| n >= MIN_DRUGS)
        .collect()
}

pub fn efficient_genes(store: &Store, se: &SideEffect) -> Result<EfficientGeneSet, AnalyticsError> {
    let links = links(store, se)?;
    let genes = efficient_ids(store, &links)
        .into_iter()
        .filter_map(|(g, n)| iri_of(store, g).map(|iri| (iri, n)))
        .collect();
    Ok(EfficientGeneSet {
        side_effect: se.label(),
        genes,
    })
}

/// Top `k` qualifying pathways by chain count (descending, ties by IRI).
pub fn rank_pathways(store: &Store, se: &SideEffect, k: usize) -> Result<Vec<PathwayScore>, AnalyticsError> {
    let links = links(store, se)?;
    let efficient = efficient_ids(store, &links);
    let p = Preds::new(store);
    let (Some(kegg_uniprot), Some(kegg_pathway)) = (p.kegg_uniprot, p.kegg_pathway) else {
        return Ok(Vec::new());
    };

    // resolved protein -> (pathway record, raw pathway)
    let mut membership: HashMap<TermId, Vec<(TermId, TermId)>> = HashMap::new();
    for q in store.match_ids(None, Some(kegg_uniprot), None, None) {
        for pq in store.match_ids(Some(q[0]), Some(kegg_pathway), None, None) {
            membership
                .entry(store.resolve_id(q[2]))
                .or_default()
                .push((q[0], pq[2]));
        }
    }

    let mut genes_in: BTreeMap<TermId, BTreeSet<TermId>> = BTreeMap::new();
    for (&protein, entries) in &membership {
        if efficient.contains_key(&protein) {
            for &(_, pw) in entries {
                genes_in.entry(store.resolve_id(pw)).or_default().insert(protein);
            }
        }
    }

    let mut chains: BTreeSet<(Link, TermId, TermId)> = BTreeSet::new();
    for l in &links {
        if let Some(entries) = membership.get(&store.resolve_id(l[5])) {
            for &(rec, pw) in entries {
                chains.insert((*l, rec, pw));
            }
        }
    }
    let mut counts: BTreeMap<TermId, usize> = BTreeMap::new();
    for (_, _, pw) in &chains {
        *counts.entry(store.resolve_id(*pw)).or_default() += 1;
    }

    let mut scores: Vec<PathwayScore> = genes_in
        .into_iter()
        .filter(|(_, genes)| genes.len() >= MIN_GENES)
        .filter_map(|(pw, genes)| {
            Some(PathwayScore {
                pathway: iri_of(store, pw)?,
                efficient_gene_count: genes.len(),
                association_path_count: counts.get(&pw).copied().unwrap_or(0),
            })
        })
        .collect();
    sort_scores(&mut scores);
    scores.truncate(k);
    Ok(scores)
}

pub(super) fn sort_scores(scores: &mut [PathwayScore]) {
    scores.sort_by(|a, b| {
        b.association_path_count
            .cmp(&a.association_path_count)
            .then_with(|| a.pathway.cmp(&b.pathway))
    });
}

/// Side-effect IRIs whose recorded names match `pattern` (case-insensitive).
pub fn side_effects_named(store: &Store, pattern: &str) -> Result<Vec<Iri>, AnalyticsError> {
    let text = format!(
        "SELECT DISTINCT ?id WHERE {{ ?r sider:side_effect ?name . ?r sider:side_effect_id ?id . FILTER regex(?name, {}, \"i\") }}",
        quote(pattern)
    );
    let t = sparql::run_query(store, &text)?;
    let ids: BTreeSet<Iri> = t
        .values("id")
        .into_iter()
        .filter_map(|v| v.as_iri().map(|i| store.resolve_entity(i)))
        .collect();
    Ok(ids.into_iter().collect())
}

/// The chain-count query: one row per pathway with `?count` chains,
/// highest first.
pub fn ranking_query(se: &SideEffect) -> String {
    format!(
        "SELECT ?pathway_id (COUNT(?pathway_id) AS ?count) WHERE {{
  {}
  ?sider2compound sider:cid ?compound .
  ?drug drugbank_drug:CID ?compound .
  ?drug2target drugbank_interaction:DBID ?drug .
  ?drug2target drugbank_interaction:SwissProt_ID ?uniprot .
  ?kegg_pathway kegg_pathway_protein:Uniprot ?uniprot .
  ?kegg_pathway kegg_pathway_protein:PathwayID ?pathway_id .
}} GROUP BY ?pathway_id ORDER BY DESC(?count)",
        se.query_patterns()
    )
}

fn efficient_query(se: &SideEffect) -> String {
    format!(
        "SELECT ?uniprot (COUNT(DISTINCT ?compound) AS ?drugs) WHERE {{
  {}
  ?sider2compound sider:cid ?compound .
  ?drug drugbank_drug:CID ?compound .
  ?drug2target drugbank_interaction:DBID ?drug .
  ?drug2target drugbank_interaction:SwissProt_ID ?uniprot .
}} GROUP BY ?uniprot",
        se.query_patterns()
    )
}

const MEMBERSHIP_QUERY: &str = "SELECT DISTINCT ?pathway_id ?uniprot WHERE {
  ?kegg_pathway kegg_pathway_protein:Uniprot ?uniprot .
  ?kegg_pathway kegg_pathway_protein:PathwayID ?pathway_id .
}";

fn count_of(t: &ResultTable, row: &[Option<Term>], col: &str) -> usize {
    t.column(col)
        .and_then(|c| row[c].as_ref())
        .and_then(|v| v.text().parse().ok())
        .unwrap_or(0)
}

/// [`efficient_genes`] computed through the query engine. Agrees with the
/// direct computation whenever identifiers are already in hub form.
pub fn efficient_genes_via_query(store: &Store, se: &SideEffect) -> Result<EfficientGeneSet, AnalyticsError> {
    let t = sparql::run_query(store, &efficient_query(se))?;
    let c = t.column("uniprot").expect("projected");
    let genes = t
        .rows
        .iter()
        .filter_map(|row| {
            let gene = row[c].as_ref()?.as_iri()?.clone();
            let n = count_of(&t, row, "drugs");
            (n >= MIN_DRUGS).then_some((gene, n))
        })
        .collect();
    Ok(EfficientGeneSet {
        side_effect: se.label(),
        genes,
    })
}

/// [`rank_pathways`] computed through the query engine.
pub fn rank_pathways_via_query(store: &Store, se: &SideEffect, k: usize) -> Result<Vec<PathwayScore>, AnalyticsError> {
    let efficient = efficient_genes_via_query(store, se)?.genes;
    let members = sparql::run_query(store, MEMBERSHIP_QUERY)?;
    let mut genes_in: BTreeMap<Iri, usize> = BTreeMap::new();
    for row in &members.rows {
        if let (Some(Term::Iri(pw)), Some(Term::Iri(u))) = (&row[0], &row[1]) {
            if efficient.contains_key(u) {
                *genes_in.entry(pw.clone()).or_default() += 1;
            }
        }
    }
    let t = sparql::run_query(store, &ranking_query(se))?;
    let c = t.column("pathway_id").expect("projected");
    let mut scores: Vec<PathwayScore> = t
        .rows
        .iter()
        .filter_map(|row| {
            let pathway = row[c].as_ref()?.as_iri()?.clone();
            let genes = genes_in.get(&pathway).copied().unwrap_or(0);
            (genes >= MIN_GENES).then(|| PathwayScore {
                pathway,
                efficient_gene_count: genes,
                association_path_count: count_of(&t, row, "count"),
            })
        })
        .collect();
    sort_scores(&mut scores);
    scores.truncate(k);
    Ok(scores)
}
