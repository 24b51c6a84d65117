//! Literature support for an entity pair, with each side expanded by the
//! other's associated targets and pathways.

use std::collections::BTreeSet;

use serde::Serialize;

use super::corpus::CorpusIndex;
use crate::sparql::{self, QueryError};
use crate::store::Store;
use crate::term::Iri;

/// Query templates for an entity's associations. Target templates bind
/// `?x` (the entity) and `?gene`; pathway templates bind `?gene` and
/// `?pathway`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociationTemplates {
    pub targets: Vec<String>,
    pub pathways: Vec<String>,
}

impl Default for AssociationTemplates {
    fn default() -> Self {
        Self::standard()
    }
}

impl AssociationTemplates {
    pub fn standard() -> Self {
        let targets = [
            // compound → protein
            "?d drugbank_drug:CID ?x . ?t drugbank_interaction:DBID ?d . ?t drugbank_interaction:SwissProt_ID ?gene .",
            "?l bindingdb_ligand:cid ?x . ?t bindingdb_interaction:monomerid ?l . ?t bindingdb_interaction:uniprot ?gene .",
            "?r chembl:cid ?x . ?r chembl:uniprot ?gene .",
            "?r matador:cid ?x . ?r matador:uniprot ?gene .",
            // side effect → causing compound → protein
            "?s sider:side_effect_id ?x . ?s sider:cid ?c . ?d drugbank_drug:CID ?c . ?t drugbank_interaction:DBID ?d . ?t drugbank_interaction:SwissProt_ID ?gene .",
        ];
        let pathways = [
            "?r kegg_pathway_protein:Uniprot ?gene . ?r kegg_pathway_protein:PathwayID ?pathway .",
            "?r reactome:uniprot ?gene . ?r reactome:pathway ?pathway .",
        ];
        AssociationTemplates {
            targets: targets.iter().map(|s| s.to_string()).collect(),
            pathways: pathways.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// Resolved targets and pathways associated with `entity`. Templates that
/// mention a dataset absent from the store's prefixes are skipped.
pub fn associations(
    store: &Store,
    templates: &AssociationTemplates,
    entity: &Iri,
) -> Result<BTreeSet<Iri>, QueryError> {
    let run = |text: String, var: &str| -> Result<BTreeSet<Iri>, QueryError> {
        match sparql::run_query(store, &text) {
            Ok(t) => Ok(t
                .values(var)
                .into_iter()
                .filter_map(|v| v.as_iri().map(|i| store.resolve_entity(i)))
                .collect()),
            Err(QueryError::Prefix { .. }) => Ok(BTreeSet::new()),
            Err(e) => Err(e),
        }
    };
    let mut genes = BTreeSet::new();
    for member in store.same_as_class(entity) {
        for tpl in &templates.targets {
            let bgp = tpl.replace("?x", &format!("<{member}>"));
            genes.extend(run(format!("SELECT DISTINCT ?gene WHERE {{ {bgp} }}"), "gene")?);
        }
    }
    let mut out = genes.clone();
    for gene in &genes {
        for member in store.same_as_class(gene) {
            for tpl in &templates.pathways {
                let bgp = tpl.replace("?gene", &format!("<{member}>"));
                out.extend(run(format!("SELECT DISTINCT ?pathway WHERE {{ {bgp} }}"), "pathway")?);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub a: Iri,
    pub b: Iri,
    /// Documents mentioning both entities.
    pub both: BTreeSet<u64>,
    /// Documents mentioning `a` and one of `b`'s associations.
    pub a_with_b_associations: BTreeSet<u64>,
    /// Documents mentioning `b` and one of `a`'s associations.
    pub b_with_a_associations: BTreeSet<u64>,
    pub all: BTreeSet<u64>,
}

fn docs_of_any(index: &CorpusIndex, entities: &BTreeSet<Iri>) -> BTreeSet<u64> {
    entities
        .iter()
        .flat_map(|e| index.documents(e).iter().copied())
        .collect()
}

pub fn cross_validate(
    store: &Store,
    index: &CorpusIndex,
    templates: &AssociationTemplates,
    a: &Iri,
    b: &Iri,
) -> Result<ValidationReport, QueryError> {
    let (ra, rb) = (store.resolve_entity(a), store.resolve_entity(b));
    let (da, db) = (index.documents(&ra), index.documents(&rb));
    let both: BTreeSet<u64> = da.intersection(db).copied().collect();
    let assoc_a = associations(store, templates, &ra)?;
    let assoc_b = associations(store, templates, &rb)?;
    let a_with_b_associations: BTreeSet<u64> = da.intersection(&docs_of_any(index, &assoc_b)).copied().collect();
    let b_with_a_associations: BTreeSet<u64> = db.intersection(&docs_of_any(index, &assoc_a)).copied().collect();
    let all = both
        .iter()
        .chain(&a_with_b_associations)
        .chain(&b_with_a_associations)
        .copied()
        .collect();
    Ok(ValidationReport {
        a: ra,
        b: rb,
        both,
        a_with_b_associations,
        b_with_a_associations,
        all,
    })
}
