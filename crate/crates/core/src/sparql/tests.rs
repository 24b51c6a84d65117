use super::*;
use crate::provenance::{GraphInfo, ProvenanceRecord};
use crate::term::{Iri, Literal, Term};
use crate::vocab;
use crate::Namespaces;

const GEFITINIB: &str = r#"SELECT ?uniprot WHERE {
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

const MALARIA: &str = r#"SELECT * WHERE {
  ?chemogenomics chemogenomics:CID ?compound_cid .
  ?chemogenomics chemogenomics:GENE ?gene_symbol .
  ?omim omim:gene ?gene_symbol .
  ?omim omim:Disorder_name ?disease . FILTER
  regex(?disease,"Malaria","i") .
}"#;

const HEPATOMEGALY: &str = r#"SELECT ?pathway_id (count(?pathway_id) as ?count) WHERE {
  ?sider2compound sider:side_effect ?side_effect . FILTER
  regex(?side_effect,"hepatomegaly","i") .
  ?sider2compound sider:cid ?compound .
?drug drugbank_drug:CID ?compound .
?drug2target drugbank_interaction:DBID ?drug .
?drug2target drugbank_interaction:SwissProt_ID ?uniprot .
?kegg_pathway kegg_pathway_protein:Uniprot ?uniprot .
?kegg_pathway kegg_pathway_protein:PathwayID ?pathway_id .
} GROUP BY ?pathway_id ORDER BY ?count"#;

fn ns() -> Namespaces {
    Namespaces::standard()
}

fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

fn ent(kind: &str, id: &str) -> Iri {
    iri(&format!("{}{id}", vocab::entity_namespace(kind)))
}

struct Builder {
    store: Store,
    graph: Iri,
}

impl Builder {
    fn new() -> Self {
        let mut store = Store::new();
        let graph = vocab::graph_iri("test");
        store.register_graph(GraphInfo::new(
            graph.clone(),
            None,
            ProvenanceRecord::new("t", "2010", "here", "tests", "me").unwrap(),
        ));
        Builder { store, graph }
    }

    fn add(&mut self, s: &Iri, p: &Iri, o: impl Into<Term>) -> &mut Self {
        self.store
            .insert(&crate::Triple::new(s.clone(), p.clone(), o, self.graph.clone()))
            .unwrap();
        self
    }
}

fn p(ds: &str, local: &str) -> Iri {
    vocab::predicate(ds, local)
}

fn gefitinib_store() -> Store {
    let mut b = Builder::new();
    let cpd = ent("cid", "123631");
    let other = ent("cid", "5");
    b.add(&cpd, &p("compound", "CID"), Literal::integer(123631));
    b.add(&other, &p("compound", "CID"), Literal::integer(5));
    // BindingDB: ERBB2 at 3.7 nM, plus a weak binder that the filter drops
    let lig = iri("http://lodchem.org/graph/bindingdb_ligand/record/1");
    b.add(&lig, &p("bindingdb_ligand", "cid"), cpd.clone());
    for (i, uni, ic50) in [(1, "P04626", 3.7), (2, "Q9Y6K9", 25000.0)] {
        let t = iri(&format!("http://lodchem.org/graph/bindingdb_interaction/record/{i}"));
        b.add(&t, &p("bindingdb_interaction", "monomerid"), lig.clone());
        b.add(&t, &p("bindingdb_interaction", "uniprot"), ent("uniprot", uni));
        b.add(&t, &p("bindingdb_interaction", "ic50_value"), Literal::decimal(ic50));
    }
    // DrugBank: EGFR human, plus a non-human target
    let drug = iri("http://lodchem.org/graph/drugbank_drug/drug/DB00317");
    b.add(&drug, &p("drugbank_drug", "CID"), cpd.clone());
    for (i, uni, human) in [(1, "P00533", "1"), (2, "P99999", "0")] {
        let t = iri(&format!("http://lodchem.org/graph/drugbank_interaction/record/{i}"));
        b.add(&t, &p("drugbank_interaction", "DBID"), drug.clone());
        b.add(&t, &p("drugbank_interaction", "human"), Literal::string(human));
        b.add(&t, &p("drugbank_interaction", "SwissProt_ID"), ent("uniprot", uni));
    }
    b.store
}

fn query(store: &Store, text: &str) -> ResultTable {
    run_query(store, text).unwrap()
}

#[test]
fn malaria_query_shape() {
    let ast = parse_query(MALARIA, &ns()).unwrap();
    assert_eq!(ast.projection, Projection::All);
    assert_eq!(ast.pattern.triples.len(), 4);
    assert_eq!(ast.pattern.filters.len(), 1);
    assert!(matches!(
        &ast.pattern.filters[0],
        FilterExpr::Regex { pattern, case_insensitive: true, .. } if pattern == "Malaria"
    ));
}

#[test]
fn minimal_query_shape() {
    let ast = parse_query("SELECT * WHERE { ?s ?p ?o }", &ns()).unwrap();
    assert_eq!(ast.pattern.triples.len(), 1);
    assert!(ast.pattern.unions.is_empty());
}

#[test]
fn gefitinib_query_shape() {
    let ast = parse_query(GEFITINIB, &ns()).unwrap();
    assert!(ast.pattern.triples.is_empty());
    assert_eq!(ast.pattern.unions.len(), 1);
    let chain = &ast.pattern.unions[0];
    assert_eq!(chain.len(), 2);
    let filters: Vec<String> = chain
        .iter()
        .flat_map(|g| g.filters.iter())
        .map(|f| match f {
            FilterExpr::Compare { var, op, value } => format!("{var}{}{}", op.symbol(), value.text()),
            FilterExpr::Regex { .. } => "regex".into(),
        })
        .collect();
    assert!(filters.contains(&"?ic50<10000".to_string()));
    assert!(filters.contains(&"?human=1".to_string()));
    assert_eq!(ast.group_by, vec![Var::new("uniprot")]);
}

#[test]
fn hepatomegaly_query_shape() {
    let ast = parse_query(HEPATOMEGALY, &ns()).unwrap();
    assert_eq!(ast.pattern.triples.len(), 7);
    assert_eq!(
        ast.header(),
        vec![Var::new("pathway_id"), Var::new("count")]
    );
    assert!(!ast.order_by[0].descending);
}

#[test]
fn display_round_trips() {
    for text in [GEFITINIB, MALARIA, HEPATOMEGALY, "SELECT DISTINCT ?s WHERE { ?s <urn:p> \"a\\\"b\", 1.5, true ; a ?t } ORDER BY DESC(?s) LIMIT 3"] {
        let ast = parse_query(text, &ns()).unwrap();
        let printed = ast.to_string();
        let again = parse_query(&printed, &Namespaces::empty()).unwrap();
        assert_eq!(ast, again, "{printed}");
    }
}

#[test]
fn gefitinib_targets() {
    let store = gefitinib_store();
    let t = query(&store, GEFITINIB);
    assert_eq!(t.header, vec!["uniprot"]);
    let got: Vec<&str> = t.values("uniprot").iter().map(|v| v.text()).collect();
    assert_eq!(
        got,
        vec![
            ent("uniprot", "P00533").as_str(),
            ent("uniprot", "P04626").as_str()
        ]
    );
}

#[test]
fn empty_store_gives_empty_table() {
    let store = Store::new();
    for text in [MALARIA, GEFITINIB, HEPATOMEGALY, "SELECT * WHERE { ?s ?p ?o }"] {
        assert!(query(&store, text).is_empty());
    }
}

#[test]
fn syntax_errors_carry_position() {
    let err = parse_query("SELECT * WHERE { ?s ?p }", &ns()).unwrap_err();
    assert!(matches!(err, QueryError::Parse { position: 23, .. }), "{err:?}");
    let err = parse_query("SELECT * WHERE { ?s nope:p ?o }", &ns()).unwrap_err();
    assert_eq!(
        err,
        QueryError::Prefix {
            prefix: "nope".into(),
            position: 20
        }
    );
    assert!(parse_query("SELECT * WHERE { }", &ns()).is_err());
    assert!(parse_query("SELECT * WHERE { ?s ?p ?o } LIMIT 0", &ns()).is_err());
    assert!(parse_query("SELECT * WHERE { ?s ?p ?o FILTER regex(?o, \"x\", \"g\") }", &ns()).is_err());
}

#[test]
fn prefix_declaration_overrides() {
    let ast = parse_query("PREFIX compound: <urn:c/> SELECT * { ?s compound:CID ?o }", &ns()).unwrap();
    assert_eq!(
        ast.pattern.triples[0].predicate,
        PatternTerm::Iri(iri("urn:c/CID"))
    );
}

#[test]
fn validation_rules() {
    for bad in [
        "SELECT ?x WHERE { ?s ?p ?o }",
        "SELECT ?s (COUNT(?o) AS ?n) WHERE { ?s ?p ?o }",
        "SELECT (COUNT(?o) AS ?o) WHERE { ?s ?p ?o }",
        "SELECT ?s WHERE { ?s ?p ?o } ORDER BY ?o",
        "SELECT ?s WHERE { ?s ?p ?o } GROUP BY ?z",
    ] {
        assert!(
            matches!(parse_query(bad, &ns()), Err(QueryError::Invalid(_))),
            "{bad}"
        );
    }
}

#[test]
fn filter_outside_scope_is_eval_error() {
    let store = gefitinib_store();
    let err = run_query(
        &store,
        "SELECT ?s WHERE { ?s ?p ?o { ?a ?b ?c FILTER (?o = 1) } }",
    )
    .unwrap_err();
    assert!(matches!(err, QueryError::Eval(_)));
}

#[test]
fn comparison_typing() {
    use crate::sparql::eval::compare;
    let int = |n| Term::Literal(Literal::integer(n));
    let dec = |x| Term::Literal(Literal::decimal(x));
    let s = |x: &str| Term::Literal(Literal::string(x));
    assert!(compare(&dec(3.7), CompareOp::Lt, &int(10000)));
    assert!(compare(&int(2), CompareOp::Eq, &dec(2.0)));
    assert!(!compare(&s("1"), CompareOp::Eq, &int(1)));
    assert!(!compare(&s("1"), CompareOp::Ne, &int(1)));
    assert!(compare(&s("abc"), CompareOp::Lt, &s("abd")));
    let a = Term::Iri(iri("urn:a"));
    let b = Term::Iri(iri("urn:b"));
    assert!(compare(&a, CompareOp::Ne, &b));
    assert!(!compare(&a, CompareOp::Lt, &b));
    let f = Term::Literal(Literal::boolean(false));
    let t = Term::Literal(Literal::boolean(true));
    assert!(compare(&f, CompareOp::Lt, &t));
}

fn count_fixture() -> Store {
    let mut b = Builder::new();
    let pr = p("kegg_pathway_protein", "PathwayID");
    for (rec, pw) in [(1, "hsa1"), (2, "hsa1"), (3, "hsa1"), (4, "hsa2"), (5, "hsa3"), (6, "hsa3")] {
        b.add(&iri(&format!("urn:r{rec}")), &pr, ent("pathway", pw));
    }
    b.store
}

#[test]
fn count_group_order_limit() {
    let store = count_fixture();
    let t = query(
        &store,
        "SELECT ?pw (COUNT(?pw) AS ?n) WHERE { ?r kegg_pathway_protein:PathwayID ?pw } GROUP BY ?pw ORDER BY DESC(?n) LIMIT 2",
    );
    let rows: Vec<(String, String)> = t
        .rows
        .iter()
        .map(|r| (r[0].as_ref().unwrap().text().to_string(), r[1].as_ref().unwrap().text().to_string()))
        .collect();
    assert_eq!(
        rows,
        vec![
            (ent("pathway", "hsa1").to_string(), "3".to_string()),
            (ent("pathway", "hsa3").to_string(), "2".to_string())
        ]
    );
    let asc = query(
        &store,
        "SELECT ?pw (COUNT(*) AS ?n) WHERE { ?r kegg_pathway_protein:PathwayID ?pw } GROUP BY ?pw ORDER BY ?n",
    );
    assert_eq!(asc.rows[0][1].as_ref().unwrap().text(), "1");
    let distinct = query(
        &store,
        "SELECT (COUNT(DISTINCT ?pw) AS ?n) WHERE { ?r kegg_pathway_protein:PathwayID ?pw }",
    );
    assert_eq!(distinct.rows.len(), 1);
    assert_eq!(distinct.rows[0][0].as_ref().unwrap().text(), "3");
}

#[test]
fn aggregate_free_group_by_dedups() {
    let store = count_fixture();
    let t = query(
        &store,
        "SELECT ?pw WHERE { ?r kegg_pathway_protein:PathwayID ?pw } GROUP BY ?pw",
    );
    assert_eq!(t.len(), 3);
}

#[test]
fn regex_is_unanchored_search() {
    let mut b = Builder::new();
    let name = p("omim", "Disorder_name");
    b.add(&iri("urn:d1"), &name, Literal::string("{Malaria, cerebral, susceptibility to}"));
    b.add(&iri("urn:d2"), &name, Literal::string("malaria, resistance to"));
    b.add(&iri("urn:d3"), &name, Literal::string("Asthma"));
    b.add(&iri("urn:d4"), &name, Literal::integer(7));
    let t = query(&b.store, "SELECT ?d WHERE { ?d omim:Disorder_name ?n FILTER regex(?n, \"Malaria\", \"i\") }");
    assert_eq!(t.len(), 2);
    let t = query(&b.store, "SELECT ?d WHERE { ?d omim:Disorder_name ?n FILTER regex(?n, \"Malaria\") }");
    assert_eq!(t.len(), 1);
}

#[test]
fn union_is_deduplicated() {
    let store = count_fixture();
    let t = query(
        &store,
        "SELECT ?pw WHERE { { ?r kegg_pathway_protein:PathwayID ?pw } UNION { ?r kegg_pathway_protein:PathwayID ?pw } }",
    );
    assert_eq!(t.len(), 3);
}

#[test]
fn sequential_and_parallel_agree() {
    let mut b = Builder::new();
    let knows = iri("urn:knows");
    for i in 0..60 {
        for j in 0..12 {
            b.add(&iri(&format!("urn:n{i}")), &knows, iri(&format!("urn:n{}", (i * 7 + j) % 60)));
        }
    }
    let ast = parse_query("SELECT * WHERE { ?a <urn:knows> ?b . ?b <urn:knows> ?c }", &ns()).unwrap();
    let seq = evaluate_with(&ast, &b.store, Execution::Sequential).unwrap();
    let par = evaluate_with(&ast, &b.store, Execution::Parallel).unwrap();
    assert_eq!(seq, par);
    assert!(seq.len() > MIN_ROWS_FOR_TEST);
}

const MIN_ROWS_FOR_TEST: usize = 256;
