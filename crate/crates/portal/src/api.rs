//! Read-only HTTP routes over an immutable store snapshot.

use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, RawQuery, State};
use axum::http::{HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use lodchem::facets::{facet_counts, filtered_entities, FacetFilter};
use lodchem::linkpath::{execute_linkpaths, SchemaError, SchemaGraph, DEFAULT_MAX_LEN};
use lodchem::litxval::{cross_validate, document_iri, AssociationTemplates, CorpusIndex, LITERATURE_DATASET};
use lodchem::network::{describe, network_from_links};
use lodchem::sparql::{run_query, QueryError, ResultTable};
use lodchem::{vocab, Domain, Pattern, Store, StoreError, Term};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::params::{parse_entity, parse_filter, parse_graph, parse_predicate};

pub const DEFAULT_LIMIT: usize = 100;

/// Everything a request may read. Built once before serving.
pub struct AppState {
    pub store: Store,
    pub schema: SchemaGraph,
    pub index: CorpusIndex,
    pub templates: AssociationTemplates,
}

impl AppState {
    pub fn new(store: Store) -> Self {
        let index = CorpusIndex::from_store(&store);
        AppState {
            store,
            schema: SchemaGraph::builtin(),
            index,
            templates: AssociationTemplates::standard(),
        }
    }
}

type Shared = Arc<AppState>;

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/", get(index))
        .route("/sparql", post(sparql))
        .route("/lpg", get(lpg))
        .route("/facets/:graph", get(facets))
        .route("/datasets", get(datasets))
        .route("/network", get(network))
        .route("/literature", get(literature))
        .route("/entity", get(entity_by_query))
        .route("/entity/*iri", get(entity_by_path))
        .with_state(Arc::new(state))
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    error: &'static str,
    detail: String,
    position: Option<usize>,
}

impl ApiError {
    fn bad_request(detail: impl Into<String>) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            error: "bad_request",
            detail: detail.into(),
            position: None,
        }
    }
}

impl From<QueryError> for ApiError {
    fn from(e: QueryError) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            error: "query",
            position: e.position(),
            detail: e.to_string(),
        }
    }
}

impl From<SchemaError> for ApiError {
    fn from(e: SchemaError) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            error: "schema",
            detail: e.to_string(),
            position: None,
        }
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        let (status, error) = match e {
            StoreError::GraphUnknown(_) => (StatusCode::NOT_FOUND, "graph_unknown"),
            _ => (StatusCode::INTERNAL_SERVER_ERROR, "store"),
        };
        ApiError {
            status,
            error,
            detail: e.to_string(),
            position: None,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let mut body = json!({ "error": self.error, "detail": self.detail });
        if let Some(p) = self.position {
            body["position"] = json!(p);
        }
        (self.status, Json(body)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

fn params<T: DeserializeOwned>(raw: Option<String>) -> ApiResult<T> {
    serde_urlencoded::from_str(raw.as_deref().unwrap_or("")).map_err(|e| ApiError::bad_request(e.to_string()))
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
pub struct Page {
    limit: Option<usize>,
    offset: Option<usize>,
}

impl Page {
    fn bounds(&self, len: usize) -> std::ops::Range<usize> {
        let start = self.offset.unwrap_or(0).min(len);
        let end = start.saturating_add(self.limit.unwrap_or(DEFAULT_LIMIT)).min(len);
        start..end
    }

    fn json(&self, total: usize) -> Value {
        json!({
            "total": total,
            "offset": self.offset.unwrap_or(0),
            "limit": self.limit.unwrap_or(DEFAULT_LIMIT),
        })
    }
}

async fn index() -> Json<Value> {
    Json(json!({
        "service": "lodchem",
        "endpoints": [
            "POST /sparql", "GET /lpg", "GET /facets/{graph}", "GET /datasets",
            "GET /network", "GET /literature", "GET /entity/{iri}",
        ],
    }))
}

/// The body is the library's JSON table for the requested page; the full
/// row count travels in `X-Total-Count`.
async fn sparql(State(st): State<Shared>, RawQuery(raw): RawQuery, body: Bytes) -> ApiResult<Response> {
    let page: Page = params(raw)?;
    let text = std::str::from_utf8(&body).map_err(|_| ApiError::bad_request("query text is not UTF-8"))?;
    let table = run_query(&st.store, text)?;
    let total = table.rows.len();
    let range = page.bounds(total);
    let paged = ResultTable {
        header: table.header,
        rows: table.rows[range].to_vec(),
    };
    let mut resp = Json(paged.to_json()).into_response();
    resp.headers_mut().insert("x-total-count", HeaderValue::from(total));
    Ok(resp)
}

#[derive(Debug, Deserialize)]
struct PathQuery {
    from: String,
    to: String,
    max_len: Option<usize>,
    focus: Option<String>,
    limit: Option<usize>,
    offset: Option<usize>,
}

async fn lpg(State(st): State<Shared>, RawQuery(raw): RawQuery) -> ApiResult<Json<Value>> {
    let q: PathQuery = params(raw)?;
    let page = Page { limit: q.limit, offset: q.offset };
    let r = execute_linkpaths(
        &st.store,
        &st.schema,
        &q.from,
        &q.to,
        q.max_len.unwrap_or(DEFAULT_MAX_LEN),
        lodchem::Execution::default(),
    )?;
    let range = page.bounds(r.rows.len());
    Ok(Json(json!({
        "from": q.from,
        "to": q.to,
        "path_count": r.runs.len(),
        "paths": r.runs,
        "rows": &r.rows[range],
        "page": page.json(r.rows.len()),
    })))
}

async fn network(State(st): State<Shared>, RawQuery(raw): RawQuery) -> ApiResult<Json<Value>> {
    let q: PathQuery = params(raw)?;
    let focus = q.focus.as_deref().map(parse_entity).transpose().map_err(ApiError::bad_request)?;
    let r = execute_linkpaths(
        &st.store,
        &st.schema,
        &q.from,
        &q.to,
        q.max_len.unwrap_or(DEFAULT_MAX_LEN),
        lodchem::Execution::default(),
    )?;
    let focus = focus.map(|f| st.store.resolve_entity(&f));
    let doc = network_from_links(&st.store, &st.schema, &r, focus.as_ref());
    Ok(Json(serde_json::to_value(doc).expect("network serializes")))
}

/// `field`, `limit` and `offset` are single; `filter=pred=value` repeats.
async fn facets(State(st): State<Shared>, Path(graph): Path<String>, RawQuery(raw): RawQuery) -> ApiResult<Json<Value>> {
    let pairs: Vec<(String, String)> = params(raw)?;
    let mut field = None;
    let mut filters = Vec::new();
    let mut page = Page::default();
    for (k, v) in pairs {
        let num = || v.parse::<usize>().map_err(|_| ApiError::bad_request(format!("{k} must be a number")));
        match k.as_str() {
            "field" => field = Some(parse_predicate(&v).map_err(ApiError::bad_request)?),
            "filter" => {
                let (p, value) = parse_filter(&v).map_err(ApiError::bad_request)?;
                filters.push(FacetFilter::new(p, value));
            }
            "limit" => page.limit = Some(num()?),
            "offset" => page.offset = Some(num()?),
            other => return Err(ApiError::bad_request(format!("unknown parameter {other:?}"))),
        }
    }
    let graph = parse_graph(&graph).map_err(ApiError::bad_request)?;
    let entities = filtered_entities(&st.store, &graph, &filters)?;
    let listed: Vec<String> = entities.iter().map(|id| st.store.term(*id).to_string()).collect();
    let listed = &listed[page.bounds(listed.len())];
    let facet = match &field {
        Some(f) => serde_json::to_value(facet_counts(&st.store, &graph, f, &filters)?).expect("facets serialize"),
        None => Value::Null,
    };
    Ok(Json(json!({
        "graph": graph,
        "filters": filters.iter().map(|f| json!({"predicate": f.predicate, "value": f.value})).collect::<Vec<_>>(),
        "facet": facet,
        "entities": listed,
        "page": page.json(entities.len()),
    })))
}

#[derive(Debug, Deserialize)]
struct DatasetQuery {
    domain: Option<String>,
}

async fn datasets(State(st): State<Shared>, RawQuery(raw): RawQuery) -> ApiResult<Json<Value>> {
    let q: DatasetQuery = params(raw)?;
    let domain: Option<Domain> = q
        .domain
        .as_deref()
        .map(str::parse)
        .transpose()
        .map_err(ApiError::bad_request)?;
    let list: Vec<Value> = st
        .store
        .graphs()
        .filter(|g| domain.is_none() || g.domain == domain)
        .map(|g| {
            let triples = st.store.iri_id(&g.graph).map_or(0, |id| st.store.match_ids(None, None, None, Some(id)).len());
            json!({
                "graph": g.graph,
                "domain": g.domain,
                "provenance": g.provenance,
                "triples": triples,
            })
        })
        .collect();
    Ok(Json(json!({ "datasets": list })))
}

#[derive(Debug, Deserialize)]
struct PairQuery {
    a: String,
    b: String,
    limit: Option<usize>,
    offset: Option<usize>,
}

async fn literature(State(st): State<Shared>, RawQuery(raw): RawQuery) -> ApiResult<Json<Value>> {
    let q: PairQuery = params(raw)?;
    let page = Page { limit: q.limit, offset: q.offset };
    let a = parse_entity(&q.a).map_err(ApiError::bad_request)?;
    let b = parse_entity(&q.b).map_err(ApiError::bad_request)?;
    let report = cross_validate(&st.store, &st.index, &st.templates, &a, &b)?;
    let all: Vec<u64> = report.all.iter().copied().collect();
    let docs: Vec<Value> = all[page.bounds(all.len())]
        .iter()
        .map(|pmid| document_json(&st.store, *pmid))
        .collect();
    Ok(Json(json!({
        "report": report,
        "documents": docs,
        "page": page.json(all.len()),
    })))
}

fn document_json(store: &Store, pmid: u64) -> Value {
    let iri = document_iri(pmid);
    let field = |local: &str| {
        store
            .matches(&Pattern::any().subject(iri.clone()).predicate(vocab::predicate(LITERATURE_DATASET, local)))
            .into_iter()
            .next()
            .map(|t| t.object)
    };
    let year = field("year").and_then(|t| t.as_literal().and_then(|l| l.numeric()).map(|n| n.as_f64() as i64));
    json!({
        "pmid": pmid,
        "iri": iri,
        "title": field("title").map(|t| t.text().to_string()),
        "year": year,
    })
}

#[derive(Debug, Deserialize)]
struct EntityQuery {
    iri: String,
    limit: Option<usize>,
    offset: Option<usize>,
}

async fn entity_by_query(State(st): State<Shared>, RawQuery(raw): RawQuery) -> ApiResult<Json<Value>> {
    let q: EntityQuery = params(raw)?;
    entity_json(&st, &q.iri, Page { limit: q.limit, offset: q.offset })
}

async fn entity_by_path(State(st): State<Shared>, Path(iri): Path<String>, RawQuery(raw): RawQuery) -> ApiResult<Json<Value>> {
    entity_json(&st, &iri, params(raw)?)
}

fn entity_json(st: &AppState, text: &str, page: Page) -> ApiResult<Json<Value>> {
    // a path segment may have lost one slash of "http://"
    let text = match text.find(":/") {
        Some(i) if !text[i..].starts_with("://") => format!("{}://{}", &text[..i], &text[i + 2..]),
        _ => text.to_string(),
    };
    let entity = parse_entity(&text).map_err(ApiError::bad_request)?;
    let triples = describe(&st.store, &entity);
    let cells = |t: &lodchem::Triple| {
        json!({
            "subject": t.subject,
            "predicate": t.predicate,
            "object": Term::to_string(&t.object),
            "graph": t.graph,
        })
    };
    Ok(Json(json!({
        "iri": entity,
        "resolved": st.store.resolve_entity(&entity),
        "same_as": st.store.same_as_class(&entity),
        "triples": triples[page.bounds(triples.len())].iter().map(cells).collect::<Vec<_>>(),
        "page": page.json(triples.len()),
    })))
}

