//! Disease-specific chemical retrieval: disease genes from one set of
//! sources, joined to chemicals interacting with those genes from another.

use std::collections::{BTreeMap, BTreeSet};

use super::adr::quote;
use super::AnalyticsError;
use crate::sparql;
use crate::store::Store;
use crate::term::Iri;

/// Basic graph patterns per source. Gene-source templates bind `?disease`
/// (a name literal) and `?gene`; chemical-source templates bind
/// `?chemical` and `?gene`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceCatalog {
    pub gene_sources: BTreeMap<String, String>,
    pub chemical_sources: BTreeMap<String, String>,
}

impl Default for SourceCatalog {
    fn default() -> Self {
        Self::standard()
    }
}

impl SourceCatalog {
    pub fn standard() -> Self {
        let gene = [
            ("omim", "?r omim:gene ?gene . ?r omim:Disorder_name ?disease ."),
            ("pharmgkb", "?r pharmgkb:gene ?gene . ?r pharmgkb:disease ?disease ."),
        ];
        let chemical = [
            (
                "drugbank",
                "?d drugbank_drug:CID ?chemical . ?t drugbank_interaction:DBID ?d . ?t drugbank_interaction:SwissProt_ID ?gene .",
            ),
            (
                "bindingdb",
                "?l bindingdb_ligand:cid ?chemical . ?t bindingdb_interaction:monomerid ?l . ?t bindingdb_interaction:uniprot ?gene .",
            ),
            ("chembl", "?r chembl:cid ?chemical . ?r chembl:uniprot ?gene ."),
            ("pubchem", "?r pubchem_bioassay:cid ?chemical . ?r pubchem_bioassay:gi ?gene ."),
            ("chemogenomics", "?r chemogenomics:CID ?chemical . ?r chemogenomics:GENE ?gene ."),
        ];
        let own = |xs: &[(&str, &str)]| {
            xs.iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect()
        };
        SourceCatalog {
            gene_sources: own(&gene),
            chemical_sources: own(&chemical),
        }
    }
}

/// `(chemical, gene)` pairs, both sameAs-resolved. The disease pattern is a
/// case-insensitive regex searched within disease names.
pub fn disease_chemicals(
    store: &Store,
    catalog: &SourceCatalog,
    disease_pattern: &str,
    gene_sources: &[&str],
    chem_sources: &[&str],
) -> Result<BTreeSet<(Iri, Iri)>, AnalyticsError> {
    let lookup = |map: &BTreeMap<String, String>, name: &str| {
        map.get(name)
            .cloned()
            .ok_or_else(|| AnalyticsError::UnknownSource(name.to_string()))
    };
    let gene_templates = gene_sources
        .iter()
        .map(|s| lookup(&catalog.gene_sources, s))
        .collect::<Result<Vec<_>, _>>()?;
    let chem_templates = chem_sources
        .iter()
        .map(|s| lookup(&catalog.chemical_sources, s))
        .collect::<Result<Vec<_>, _>>()?;

    let resolved = |t: &crate::term::Term| t.as_iri().map(|i| store.resolve_entity(i));

    let mut genes = BTreeSet::new();
    for template in gene_templates {
        let text = format!(
            "SELECT DISTINCT ?gene WHERE {{ {template} FILTER regex(?disease, {}, \"i\") }}",
            quote(disease_pattern)
        );
        let t = sparql::run_query(store, &text)?;
        genes.extend(t.values("gene").into_iter().filter_map(resolved));
    }
    if genes.is_empty() {
        return Ok(BTreeSet::new());
    }

    let mut out = BTreeSet::new();
    for template in chem_templates {
        let text = format!("SELECT DISTINCT ?chemical ?gene WHERE {{ {template} }}");
        let t = sparql::run_query(store, &text)?;
        for row in &t.rows {
            let (Some(c), Some(g)) = (row[0].as_ref().and_then(resolved), row[1].as_ref().and_then(resolved)) else {
                continue;
            };
            if genes.contains(&g) {
                out.insert((c, g));
            }
        }
    }
    Ok(out)
}

/// Distinct chemicals in a [`disease_chemicals`] result.
pub fn chemicals_of(pairs: &BTreeSet<(Iri, Iri)>) -> BTreeSet<Iri> {
    pairs.iter().map(|(c, _)| c.clone()).collect()
}
