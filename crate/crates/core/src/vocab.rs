//! Local vocabulary: namespaces for hub entities, dataset predicates, graphs
//! and provenance.
//!
//! Predicate names mirror the ones used in the example queries, e.g.
//! `compound:CID` or `drugbank_interaction:SwissProt_ID`. Every dataset
//! `ds` gets the predicate namespace `http://lodchem.org/ds/` and the graph
//! IRI `http://lodchem.org/graph/ds`.

use crate::term::Iri;

pub const BASE: &str = "http://lodchem.org/";
pub const PROV_NS: &str = "http://lodchem.org/prov/";
pub const OWL_SAME_AS: &str = "http://www.w3.org/2002/07/owl#sameAs";
pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

/// `(prefix, path segment)` of each entity namespace.
pub const ENTITY_NAMESPACES: &[(&str, &str)] = &[
    ("cid", "compound"),
    ("uniprot", "uniprot"),
    ("gi", "gi"),
    ("gene", "gene"),
    ("pdb", "pdb"),
    ("pathway", "pathway"),
    ("disease", "disease"),
    ("side_effect", "side_effect"),
    ("pmid", "pubmed"),
];

pub const ENTITY_PREFIXES: [&str; 9] = [
    "cid",
    "uniprot",
    "gi",
    "gene",
    "pdb",
    "pathway",
    "disease",
    "side_effect",
    "pmid",
];

pub const DATASET_PREFIXES: &[&str] = &[
    "compound",
    "sider",
    "drugbank_drug",
    "drugbank_interaction",
    "bindingdb_ligand",
    "bindingdb_interaction",
    "matador",
    "ctd",
    "qsar",
    "pubchem_bioassay",
    "gi2uniprot",
    "gene2uniprot",
    "ttd_drug",
    "ttd_target",
    "kegg_pathway_protein",
    "reactome",
    "omim",
    "pharmgkb",
    "chembl",
    "chemogenomics",
    "hprd",
    "dip",
    "literature",
];

pub fn entity_namespace(prefix: &str) -> String {
    let segment = ENTITY_NAMESPACES
        .iter()
        .find(|(p, _)| *p == prefix)
        .map(|(_, s)| *s)
        .unwrap_or(prefix);
    format!("{BASE}id/{segment}/")
}

pub fn dataset_namespace(dataset: &str) -> String {
    format!("{BASE}{dataset}/")
}

pub fn graph_iri(dataset: &str) -> Iri {
    Iri::new(format!("{BASE}graph/{dataset}")).expect("dataset names are IRI-safe")
}

/// `dataset:local` as an IRI.
pub fn predicate(dataset: &str, local: &str) -> Iri {
    Iri::new(format!("{}{local}", dataset_namespace(dataset))).expect("IRI-safe predicate")
}

pub fn same_as() -> Iri {
    Iri::new(OWL_SAME_AS).unwrap()
}

pub fn prov(field: &str) -> Iri {
    Iri::new(format!("{PROV_NS}{field}")).unwrap()
}

/// Canonicalization rank of an IRI; lower wins. Hubs (PubChem CID, UniProt)
/// first, then gene symbols, then GI numbers, then dataset-local IRIs, then
/// anything external.
pub fn hub_rank(iri: &Iri) -> u8 {
    let s = iri.as_str();
    let ns = |p: &str| s.starts_with(&entity_namespace(p));
    if ns("cid") || ns("uniprot") {
        0
    } else if ns("gene") {
        1
    } else if ns("gi") {
        2
    } else if s.starts_with(BASE) {
        3
    } else {
        4
    }
}
