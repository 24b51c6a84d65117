//! Parsing of the entity, graph and source arguments shared by the HTTP and
//! command-line surfaces.

use lodchem::analytics::KeyExtractor;
use lodchem::ingest::{local_iri, normalize_value, IdKind};
use lodchem::{vocab, Iri, Namespaces};

/// An entity given as `<iri>`, an absolute IRI, or `kind:id` where kind is
/// one of the hub prefixes (`cid:3157`, `uniprot:P00533`,
/// `side_effect:hepatic necrosis`). Hub ids are normalized the same way the
/// loaders normalize them.
pub fn parse_entity(text: &str) -> Result<Iri, String> {
    let text = text.trim();
    if let Some(inner) = text.strip_prefix('<').and_then(|t| t.strip_suffix('>')) {
        return Iri::new(inner).map_err(|e| e.to_string());
    }
    if text.contains("://") || text.starts_with("urn:") {
        return Iri::new(text).map_err(|e| e.to_string());
    }
    let (prefix, id) = text
        .split_once(':')
        .ok_or_else(|| format!("expected an IRI or kind:id, got {text:?}"))?;
    let kind = match prefix {
        "cid" | "compound" => IdKind::Cid,
        "uniprot" | "protein" => IdKind::Uniprot,
        "gi" => IdKind::Gi,
        "gene" => IdKind::GeneSymbol,
        "pdb" => IdKind::Pdb,
        "pathway" => IdKind::Pathway,
        "disease" => IdKind::DiseaseName,
        "side_effect" => IdKind::SideEffectName,
        "pmid" | "pubmed" => {
            return Iri::new(format!("{}{}", vocab::entity_namespace("pmid"), id.trim())).map_err(|e| e.to_string())
        }
        _ => return Err(format!("unknown entity kind {prefix:?}")),
    };
    let normalized = normalize_value(kind, id).ok_or_else(|| format!("bad {prefix} id {id:?}"))?;
    Ok(local_iri(kind, &normalized, ""))
}

/// A graph given as a dataset name or a full IRI.
pub fn parse_graph(text: &str) -> Result<Iri, String> {
    if text.contains("://") {
        Iri::new(text).map_err(|e| e.to_string())
    } else if !text.is_empty() && text.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        Ok(vocab::graph_iri(text))
    } else {
        Err(format!("bad graph name {text:?}"))
    }
}

/// A predicate given as a prefixed name or a full IRI.
pub fn parse_predicate(text: &str) -> Result<Iri, String> {
    Namespaces::standard().resolve(text).map_err(|e| e.to_string())
}

/// `NAME=pred` counts distinct values, `NAME=left,right` counts unordered
/// pairs sharing a subject, and `NAME=@file.rq` counts distinct query rows.
pub fn parse_source(spec: &str) -> Result<(String, KeyExtractor), String> {
    let (name, rest) = spec
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=spec, got {spec:?}"))?;
    let extractor = if let Some(path) = rest.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
        KeyExtractor::Query(text)
    } else if let Some((l, r)) = rest.split_once(',') {
        KeyExtractor::Pairs {
            graph: None,
            left: parse_predicate(l)?,
            right: parse_predicate(r)?,
            symmetric: true,
        }
    } else {
        KeyExtractor::Values {
            graph: None,
            predicate: parse_predicate(rest)?,
        }
    };
    Ok((name.to_string(), extractor))
}

/// `predicate=value`, split at the first `=` after the predicate.
pub fn parse_filter(text: &str) -> Result<(Iri, String), String> {
    let (p, v) = text
        .split_once('=')
        .ok_or_else(|| format!("expected predicate=value, got {text:?}"))?;
    Ok((parse_predicate(p)?, v.to_string()))
}
