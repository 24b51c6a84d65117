//! Fixture loaders and reference data shared by the suites.

use std::path::PathBuf;

use lodchem::ingest::load_manifest_dir;
use lodchem::litxval::{read_corpus, AbstractDoc, Dictionary, EntityKind};
use lodchem::{GraphInfo, Iri, ProvenanceRecord, Store, Term, Triple};

pub fn demo_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/demo")
}

pub fn demo_store() -> Store {
    let mut store = Store::new();
    for r in load_manifest_dir(&mut store, &demo_dir()).unwrap() {
        assert!(r.errors.is_empty(), "{}", r.summary());
    }
    store
}

pub fn demo_corpus() -> Vec<AbstractDoc> {
    let f = std::fs::File::open(demo_dir().join("corpus.jsonl")).unwrap();
    read_corpus(std::io::BufReader::new(f)).unwrap()
}

pub fn demo_dictionaries() -> Vec<Dictionary> {
    [
        (EntityKind::Compound, "dict_compound.tsv"),
        (EntityKind::Gene, "dict_gene.tsv"),
        (EntityKind::SideEffect, "dict_side_effect.tsv"),
        (EntityKind::Disease, "dict_disease.tsv"),
    ]
    .into_iter()
    .map(|(k, f)| Dictionary::from_tsv(k, std::fs::File::open(demo_dir().join(f)).unwrap()).unwrap())
    .collect()
}

pub fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

/// Hub entity IRI, e.g. `entity("uniprot", "P00533")`.
pub fn entity(prefix: &str, id: &str) -> Iri {
    iri(&format!("{}{id}", lodchem::vocab::entity_namespace(prefix)))
}

pub fn pred(ds: &str, local: &str) -> Iri {
    lodchem::vocab::predicate(ds, local)
}

/// Registers a graph (if needed) for `ds` and inserts one statement.
pub fn add(store: &mut Store, ds: &str, s: &Iri, p: &Iri, o: impl Into<Term>) {
    let g = lodchem::vocab::graph_iri(ds);
    if store.graph_info(&g).is_none() {
        store.register_graph(GraphInfo::new(
            g.clone(),
            None,
            ProvenanceRecord::new("fixture", "2010", "tests", "fixture", "tests").unwrap(),
        ));
    }
    store.insert(&Triple::new(s.clone(), p.clone(), o, g)).unwrap();
}

/// Dataset-local record IRI.
pub fn record(ds: &str, id: impl std::fmt::Display) -> Iri {
    iri(&format!("{}/record/{id}", lodchem::vocab::graph_iri(ds)))
}

/// Two sources of unordered protein pairs with the given sizes and overlap.
pub fn ppi_store(a: usize, b: usize, shared: usize) -> Store {
    let mut s = Store::new();
    let prot = |i: usize| entity("uniprot", &format!("Q{i:06}"));
    let pair = |k: usize| (prot(2 * k), prot(2 * k + 1));
    for k in 0..a {
        let (x, y) = pair(k);
        add(&mut s, "hprd", &record("hprd", k), &pred("hprd", "protein_a"), x);
        add(&mut s, "hprd", &record("hprd", k), &pred("hprd", "protein_b"), y);
    }
    // the first `shared` DIP pairs repeat HPRD pairs, written the other way round
    for k in 0..b {
        let idx = if k < shared { k } else { a + k };
        let (x, y) = pair(idx);
        add(&mut s, "dip", &record("dip", k), &pred("dip", "interactor_a"), y);
        add(&mut s, "dip", &record("dip", k), &pred("dip", "interactor_b"), x);
    }
    s
}

/// Pathway membership with KEGG 8172 / Reactome 4397 proteins (2478
/// shared) and 192 / 360 disjoint pathways.
pub fn pathway_store() -> Store {
    let mut s = Store::new();
    for i in 0..8172usize {
        let r = record("kegg_pathway_protein", i);
        add(&mut s, "kegg_pathway_protein", &r, &pred("kegg_pathway_protein", "Uniprot"), entity("uniprot", &format!("R{i:05}")));
        add(&mut s, "kegg_pathway_protein", &r, &pred("kegg_pathway_protein", "PathwayID"), entity("pathway", &format!("hsa{:05}", i % 192)));
    }
    for i in 0..4397usize {
        let protein = 8172 - 2478 + i;
        let r = record("reactome", i);
        add(&mut s, "reactome", &r, &pred("reactome", "uniprot"), entity("uniprot", &format!("R{protein:05}")));
        add(&mut s, "reactome", &r, &pred("reactome", "pathway"), entity("pathway", &format!("REACT_{}", i % 360)));
    }
    s
}

pub const GEFITINIB_QUERY: &str = r#"SELECT ?uniprot WHERE {
  {?compound compound:CID ?compound_cid . FILTER
  (?compound_cid= 123631) .
  ?chemical bindingdb_ligand:cid ?compound .
  ?target bindingdb_interaction:monomerid ?chemical.
  ?target bindingdb_interaction:uniprot ?uniprot.
  ?target bindingdb_interaction:ic50_value ?ic50 . FILTER
  (?ic50<10000) . }
  UNION {?compound compound:CID ?compound_cid . FILTER
  (?compound_cid= 123631) .
  ?drug drugbank_drug:CID ?compound .
  ?drugtarget drugbank_interaction:DBID ?drug.
?drugtarget drugbank_interaction:human ?human . FILTER
(?human="1") .
?drugtarget drugbank_interaction:SwissProt_ID ?uniprot. }}
GROUP BY ?uniprot"#;

pub const MALARIA_QUERY: &str = r#"SELECT * WHERE {
  ?chemogenomics chemogenomics:CID ?compound_cid .
  ?chemogenomics chemogenomics:GENE ?gene_symbol .
  ?omim omim:gene ?gene_symbol .
  ?omim omim:Disorder_name ?disease . FILTER
  regex(?disease,"Malaria","i") .
}"#;

pub const HEPATOMEGALY_QUERY: &str = r#"SELECT ?pathway_id (count(?pathway_id) as ?count) WHERE {
  ?sider2compound sider:side_effect ?side_effect . FILTER
  regex(?side_effect,"hepatomegaly","i") .
  ?sider2compound sider:cid ?compound .
?drug drugbank_drug:CID ?compound .
?drug2target drugbank_interaction:DBID ?drug .
?drug2target drugbank_interaction:SwissProt_ID ?uniprot .
?kegg_pathway kegg_pathway_protein:Uniprot ?uniprot .
?kegg_pathway kegg_pathway_protein:PathwayID ?pathway_id .
} GROUP BY ?pathway_id ORDER BY ?count"#;

/// The fourteen side-effect → pathway paths of the shipped schema.
pub fn expected_side_effect_pathway_paths() -> Vec<Vec<String>> {
    let middles: [&[&str]; 7] = [
        &["bindingdb_ligand", "bindingdb_protein"],
        &["ctd", "gene", "gene2uniprot"],
        &["drugbank_drug", "drugbank_target"],
        &["matador"],
        &["pubchem_bioassay", "gi", "gi2uniprot"],
        &["qsar", "gene", "gene2uniprot"],
        &["ttd_drug", "ttd_target"],
    ];
    let mut out = Vec::new();
    for end in ["kegg", "reactome"] {
        for m in middles {
            let mut p = vec!["sider".to_string(), "compound_hub".to_string()];
            p.extend(m.iter().map(|s| s.to_string()));
            p.push("uniprot_hub".to_string());
            p.push(end.to_string());
            out.push(p);
        }
    }
    out
}
